import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import kendall_tau_b_brute, pearson_closed_form, spearman_brute
from persim.errors import DegenerateInputError, ParameterError
from persim.stats import (affine_fit, fit_logistic, kendall, logistic5, pearson,
                          plcc_rmse_after_regression, spearman)

vectors = st.integers(3, 20).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 6), min_size=n, max_size=n),
    st.lists(st.integers(-5000, 5000).map(lambda k: k / 100), min_size=n, max_size=n)))


def test_pearson_examples():
    x = np.arange(1, 11, dtype=float)
    assert pearson(x, 2 * x + 1) == pytest.approx(1.0, abs=1e-15)
    assert pearson(x, -x) == pytest.approx(-1.0, abs=1e-15)
    assert pearson([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-15)


def test_spearman_examples():
    x = np.arange(8.0)
    assert spearman(x, np.exp(x)) == 1.0
    assert spearman(x, -x) == -1.0
    assert spearman([1, 2, 3, 4, 5], [1, 3, 2, 5, 4]) == pytest.approx(1 - 6 * 4 / (5 * 24), abs=1e-15)


def test_kendall_examples():
    x = np.arange(6.0)
    assert kendall(x, x ** 2) == pytest.approx(1.0, abs=1e-15)
    assert kendall(x, -x) == pytest.approx(-1.0, abs=1e-15)
    assert kendall([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_rank_statistics_match_brute_force(xy):
    x, y = xy
    x = [float(v) for v in x]
    if len(set(x)) < 2 or len(set(y)) < 2:
        return
    assert abs(spearman(x, y) - spearman_brute(x, y)) <= 1e-12
    assert abs(kendall(x, y) - kendall_tau_b_brute(x, y)) <= 1e-12
    assert abs(pearson(x, y) - pearson_closed_form(x, y)) <= 1e-12


def test_pearson_scale_invariant_at_extreme_magnitudes():
    x = np.array([0.0, 0.0, 1.0, 2.0])
    for scale in (5e-306, 1e-150, 1e150):
        assert pearson(x, scale * x) == pytest.approx(1.0, abs=1e-15)
    assert spearman([0, 0, 1], [0.0, 0.0, 4.8e-306]) == 1.0


def test_rank_invariance_under_monotone_maps(rng):
    x = rng.uniform(0.5, 1.5, 60)
    y = x + rng.normal(0, 0.3, 60)
    for f in (lambda v: v ** 3, lambda v: v ** 25):
        assert spearman(f(x), y) == pytest.approx(spearman(x, y), abs=1e-12)
        assert kendall(f(x), y) == pytest.approx(kendall(x, y), abs=1e-12)
        assert spearman(x, f(y - y.min() + 1)) == pytest.approx(spearman(x, y), abs=1e-12)


def test_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(DegenerateInputError):
        spearman([1, 2, 3], [4, 4, 4])
    with pytest.raises(DegenerateInputError):
        kendall([2, 2, 2], [1, 2, 3])
    with pytest.raises(DegenerateInputError):
        pearson([1, 2], [1, 2])
    with pytest.raises(ParameterError):
        pearson([1, 2, 3], [1, 2])
    with pytest.raises(DegenerateInputError):
        fit_logistic([1, 2, 3, 4], [1, 2, 3, 4])
    with pytest.raises(DegenerateInputError):
        fit_logistic([1] * 6, [1, 2, 3, 4, 5, 6])


def test_fit_reproduces_model_data():
    x = np.linspace(-5, 5, 40)
    y = logistic5((1, 0.5, 0, 0.1, 2), x)
    fit = fit_logistic(x, y)
    assert fit.residual_rmse < 1e-6
    assert np.max(np.abs(fit.predict(x) - y)) < 1e-6


def test_fit_literal_variant_on_its_own_model():
    x = np.linspace(0, 1, 30)
    y = logistic5((40, 8, 0.5, 10, 5), x, "literal")
    fit = fit_logistic(x, y, variant="literal")
    assert fit.variant == "literal"
    assert fit.residual_rmse < 1e-6


def test_zero_slope_logistic_is_affine(rng):
    x = rng.uniform(0, 1, 30)
    y = 4 * x - 1 + rng.normal(0, 0.1, 30)
    # with b2 = 0 the model is b4 x + b5 (+ const); its best fit is OLS
    slope, intercept = affine_fit(x, y)
    ols = np.sqrt(np.mean((slope * x + intercept - y) ** 2))
    fit = fit_logistic(x, y)
    assert fit.residual_rmse <= ols + 1e-12
    flat = logistic5((3.0, 0.0, 0.2, slope, intercept), x)
    assert np.allclose(flat, slope * x + intercept)


def test_linear_data():
    x = np.linspace(0, 1, 25)
    fit = fit_logistic(x, 3 * x)
    assert fit.residual_rmse < 1e-8
    assert pearson(fit.predict(x), 3 * x) == pytest.approx(1.0, abs=1e-12)
    plcc, rmse, _ = plcc_rmse_after_regression(x, 2 * x + 7)
    assert plcc == pytest.approx(pearson(x, 2 * x + 7), abs=1e-9)
    assert rmse < 1e-8


def test_cubic_is_linearized():
    x = np.linspace(0, 1, 50)
    plcc, _, fit = plcc_rmse_after_regression(x, x ** 3)
    assert plcc > 0.999
    assert fit.residual_rmse < 1e-3


def test_shuffled_pairing_has_no_signal():
    rng = np.random.default_rng(2015)
    x = rng.random(100)
    y = rng.permutation(x)
    plcc, _, _ = plcc_rmse_after_regression(x, y)
    # recorded no-signal floor for this seed
    assert abs(plcc) == pytest.approx(0.23002, abs=1e-4)
    assert abs(plcc) < 0.3


def test_nested_model_never_worse_than_affine():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        x = rng.uniform(0, 1, 40)
        y = rng.normal(size=40) + 5 * x * rng.random()
        slope, intercept = affine_fit(x, y)
        affine_rmse = np.sqrt(np.mean((slope * x + intercept - y) ** 2))
        assert fit_logistic(x, y).residual_rmse <= affine_rmse + 1e-12


def test_fit_is_deterministic(rng):
    x = rng.random(50)
    y = np.tanh(4 * (x - 0.4)) + rng.normal(0, 0.05, 50)
    assert fit_logistic(x, y) == fit_logistic(x, y)


def test_explicit_init_and_unknown_variant():
    x = np.linspace(0, 1, 20)
    y = logistic5((2, 6, 0.5, 1, 0), x)
    fit = fit_logistic(x, y, init=(1.5, 5, 0.4, 1, 0))
    assert fit.residual_rmse < 1e-6
    with pytest.raises(ParameterError):
        fit_logistic(x, y, variant="cubic")

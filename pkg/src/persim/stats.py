"""Correlation statistics and the five-parameter logistic regression used to
linearize objective scores before PLCC/RMSE.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .errors import DegenerateInputError, ParameterError

LOGISTIC_VARIANTS = ("standard", "literal")


def _paired(x, y, min_n=3):
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ParameterError(f"sample lengths differ: {x.size} vs {y.size}")
    if x.size < min_n:
        raise DegenerateInputError(f"need at least {min_n} samples, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ParameterError("samples must be finite")
    return x, y


def pearson(x, y):
    """Sample Pearson linear correlation coefficient."""
    x, y = _paired(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    # scale-invariant; normalizing avoids under/overflow in the squares
    mx, my = np.max(np.abs(dx)), np.max(np.abs(dy))
    if mx == 0.0 or my == 0.0:
        raise DegenerateInputError("correlation undefined for a constant sequence")
    dx, dy = dx / mx, dy / my
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInputError("correlation undefined for a constant sequence")
    r = np.dot(dx, dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def spearman(x, y):
    """Spearman rank correlation, ties receiving their average rank."""
    x, y = _paired(x, y)
    return pearson(stats.rankdata(x), stats.rankdata(y))


def kendall(x, y):
    """Kendall tau-b."""
    x, y = _paired(x, y)
    tau = stats.kendalltau(x, y, variant="b").statistic
    if not np.isfinite(tau):
        raise DegenerateInputError("Kendall tau undefined: a sequence is entirely tied")
    return float(tau)


def logistic5(beta, s0, variant="standard"):
    """Five-parameter logistic mapping of objective scores ``s0``.

    ``standard``: ``b1 * (1/2 - 1/(1 + exp(b2 (s0 - b3)))) + b4 s0 + b5``.
    ``literal``:  ``b1 * (1 - 1/(2 + exp(b2 (s0 - b3)))) + b4 s0 + b5``.
    """
    b1, b2, b3, b4, b5 = beta
    z = b2 * (np.asarray(s0, dtype=np.float64) - b3)
    if variant == "standard":
        shape = 0.5 - special.expit(-z)
    elif variant == "literal":
        shape = 1.0 - 1.0 / (2.0 + np.exp(np.minimum(z, 700.0)))
    else:
        raise ParameterError(f"unknown logistic variant {variant!r}")
    return b1 * shape + b4 * s0 + b5


def _jacobian(beta, s0, variant):
    b1, b2, b3, b4, b5 = beta
    d = s0 - b3
    z = b2 * d
    if variant == "standard":
        e = special.expit(-z)
        shape = 0.5 - e
        dshape = e * (1.0 - e)
    else:
        g = 1.0 / (2.0 + np.exp(np.minimum(z, 700.0)))
        shape = 1.0 - g
        dshape = g * (1.0 - 2.0 * g)
    J = np.empty((s0.size, 5))
    J[:, 0] = shape
    J[:, 1] = b1 * dshape * d
    J[:, 2] = -b1 * dshape * b2
    J[:, 3] = s0
    J[:, 4] = 1.0
    return J


@dataclass(frozen=True)
class LogisticFit:
    beta: tuple
    residual_rmse: float
    converged: bool
    iterations: int
    variant: str = "standard"

    def predict(self, s0):
        return logistic5(self.beta, np.asarray(s0, dtype=np.float64), self.variant)


def affine_fit(x, y):
    """Ordinary least squares ``y ~ slope * x + intercept``."""
    x, y = _paired(x, y, min_n=2)
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(slope), float(intercept)


def _solve_small(A, g):
    """Gaussian elimination with partial pivoting for a tiny dense system."""
    n = len(g)
    M = [list(map(float, A[i])) + [float(g[i])] for i in range(n)]
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(M[r][c]))
        if M[p][c] == 0.0:
            raise np.linalg.LinAlgError("singular damped system")
        M[c], M[p] = M[p], M[c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            for k in range(c, n + 1):
                M[r][k] -= f * M[c][k]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        x[r] = (M[r][n] - sum(M[r][k] * x[k] for k in range(r + 1, n))) / M[r][r]
    return np.array(x)


def _levenberg_marquardt(resid, jac, a0, tol, max_nfev):
    """Levenberg-Marquardt with Marquardt diagonal scaling and Nielsen damping.

    Reductions use ``np.sum`` over elementwise products rather than BLAS so
    results are bit-reproducible regardless of buffer alignment; in flat
    valleys last-bit differences would otherwise grow into visibly different
    parameters.

    Returns ``(params, cost, converged, nfev)``.
    """
    a = np.array(a0, dtype=np.float64)
    r = resid(a)
    cost = float(np.sum(r * r))
    nfev, lam, nu = 1, None, 2.0
    while nfev < max_nfev:
        J = jac(a)
        A = np.sum(J[:, :, None] * J[:, None, :], axis=0)
        g = np.sum(J * r[:, None], axis=0)
        if np.max(np.abs(g)) <= tol * max(cost, tol):
            return a, cost, True, nfev
        diag = np.where(np.diag(A) > 0.0, np.diag(A), 1.0)
        if lam is None:
            lam = 1e-3
        while nfev < max_nfev:
            try:
                step = _solve_small(A + lam * np.diag(diag), -g)
            except np.linalg.LinAlgError:
                lam, nu = lam * nu, nu * 2.0
                continue
            trial = a + step
            r_new = resid(trial)
            nfev += 1
            new_cost = float(np.sum(r_new * r_new))
            predicted = float(np.sum(step * (lam * diag * step - g)))
            if np.isfinite(new_cost) and new_cost < cost and predicted > 0.0:
                rho = (cost - new_cost) / predicted
                lam *= max(1.0 / 3.0, 1.0 - (2.0 * rho - 1.0) ** 3)
                nu = 2.0
                small_step = np.sqrt(np.sum(step * step)) <= tol * (np.sqrt(np.sum(a * a)) + tol)
                small_gain = cost - new_cost <= tol * cost
                a, r, cost = trial, r_new, new_cost
                if small_step or small_gain:
                    return a, cost, True, nfev
                break
            lam, nu = lam * nu, nu * 2.0
            if lam > 1e300:
                return a, cost, True, nfev
    return a, cost, False, nfev


def fit_logistic(x, y, init=None, variant="standard", tol=1e-10, max_iter=500):
    """Least-squares fit of :func:`logistic5` mapping objective ``x`` onto
    subjective ``y``.

    Levenberg-Marquardt with an analytic Jacobian on standardized ``x`` and
    ``y`` (see :func:`_levenberg_marquardt`), started from ``init`` or from several deterministic guesses (one
    of which is the affine least-squares line with a zero logistic term);
    the lowest-residual result is kept. Never raises on non-convergence;
    check ``converged``.
    """
    if variant not in LOGISTIC_VARIANTS:
        raise ParameterError(f"unknown logistic variant {variant!r}")
    x, y = _paired(x, y, min_n=5)
    mx, sx = float(np.mean(x)), float(np.std(x))
    if sx == 0.0:
        raise DegenerateInputError("objective scores are constant")
    my, sy = float(np.mean(y)), float(np.std(y)) or 1.0
    u = (x - mx) / sx
    v = (y - my) / sy

    def to_original(a):
        a1, a2, a3, a4, a5 = a
        return (sy * a1, a2 / sx, mx + sx * a3, sy * a4 / sx, sy * a5 + my - sy * a4 * mx / sx)

    if init is not None:
        b1, b2, b3, b4, b5 = (float(b) for b in init)
        starts = [np.array([b1 / sy, b2 * sx, (b3 - mx) / sx, b4 * sx / sy,
                            (b5 + b4 * mx - my) / sy])]
    else:
        slope, intercept = affine_fit(u, v)
        a3 = float(np.median(u))
        starts = [np.array([0.0, 1.0, a3, slope, intercept])]
        span = float(np.ptp(v))
        for sign in (1.0, -1.0):
            starts.append(np.array([span, sign, a3, slope, intercept]))

    def resid(a):
        return logistic5(a, u, variant) - v

    def jac(a):
        return _jacobian(a, u, variant)

    best = None
    for a0 in starts:
        with np.errstate(over="ignore", invalid="ignore"):
            a, cost, converged, nfev = _levenberg_marquardt(resid, jac, a0, tol, max_iter)
        if best is None or cost < best[0]:
            best = (cost, a, converged, nfev)

    _, a, converged, nfev = best
    beta = tuple(float(b) for b in to_original(a))
    resid_orig = logistic5(beta, x, variant) - y
    return LogisticFit(beta=beta, residual_rmse=float(np.sqrt(np.mean(resid_orig ** 2))),
                       converged=bool(converged), iterations=nfev, variant=variant)


def plcc_rmse_after_regression(x, y, variant="standard"):
    """PLCC and RMSE between logistic-mapped objective scores and ``y``.

    Returns ``(plcc, rmse, fit)``.
    """
    fit = fit_logistic(x, y, variant=variant)
    x, y = _paired(x, y, min_n=5)
    mapped = fit.predict(x)
    return pearson(mapped, y), float(np.sqrt(np.mean((mapped - y) ** 2))), fit

"""Exception hierarchy shared across the package."""


class PersimError(Exception):
    """Base class for all errors raised by :mod:`persim`."""


class ShapeError(PersimError, ValueError):
    """Inputs have incompatible or empty dimensions."""


class ParameterError(PersimError, ValueError):
    """A numeric parameter is outside its valid domain."""


class DegenerateInputError(PersimError, ValueError):
    """A statistic is undefined for the given samples (e.g. constant input)."""


class DecodeError(PersimError, OSError):
    """An image file could not be read or decoded."""


class ManifestError(PersimError, ValueError):
    """A database manifest failed validation.

    All offending rows are collected in :attr:`problems` so a single load
    reports every defect at once.
    """

    def __init__(self, path, problems):
        self.path = path
        self.problems = list(problems)
        lines = "\n".join("  " + p for p in self.problems)
        super().__init__(f"invalid manifest {path}:\n{lines}")


class ConfigError(PersimError, ValueError):
    """A configuration document contains unknown keys or bad values."""

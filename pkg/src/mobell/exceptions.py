"""Exception types shared across the package."""


class MobellError(Exception):
    """Base class for package-specific errors."""


class InvalidDimensionError(MobellError, ValueError):
    """A Fock truncation dimension is too small or inconsistent."""


class LabelError(MobellError, KeyError):
    """A mode label is unknown or ambiguous."""


class InvalidParameterError(MobellError, ValueError):
    """A parameter is outside its allowed range."""


class SingularityError(MobellError, ValueError):
    """A closed-form expression was evaluated at a pole."""


class PositivityError(MobellError, ValueError):
    """A probability is more negative than integrator round-off allows."""


class IntegrationError(MobellError, RuntimeError):
    """The fixed-step integrator left its validity regime."""


class InfeasibleSwapError(MobellError, RuntimeError):
    """No release time in the search window satisfies the constraints."""


class PhysicsInfeasibleError(MobellError, RuntimeError):
    """Model assumptions (e.g. fast optical decay) are violated."""


class InternalConsistencyError(MobellError, RuntimeError):
    """A state reached a configuration that should be impossible."""


class ConfigError(MobellError, ValueError):
    """A scenario configuration file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

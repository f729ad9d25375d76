"""Exception and warning types shared across the package."""


class BecSqueezeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(BecSqueezeError, ValueError):
    """A laboratory or run parameter is outside its admissible range."""


class DomainError(BecSqueezeError, ValueError):
    """A mathematical argument is outside the domain of the requested map."""


class RegistryError(BecSqueezeError, LookupError):
    """A mode label is unknown, duplicated, or missing its partner."""


class ModeCollisionError(RegistryError):
    """An operation that needs two distinct modes was given the same one twice."""


class ValidationError(BecSqueezeError, ValueError):
    """An input object violates a structural contract (e.g. non-Hermitian)."""


class NumericsError(BecSqueezeError, ArithmeticError):
    """A numerical invariant was violated beyond round-off tolerance."""


class UndefinedSqueezingError(BecSqueezeError, ZeroDivisionError):
    """The squeezing parameter is requested for zero total population."""


class CutoffError(BecSqueezeError, ValueError):
    """A Fock-space cutoff is too small for the requested state or too large to store."""


class ConfigError(BecSqueezeError, ValueError):
    """A run configuration file is malformed or inconsistent."""


class PhysicsWarning(UserWarning):
    """A parameter regime strains a physical approximation; results still computed."""

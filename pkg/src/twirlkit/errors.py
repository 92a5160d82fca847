"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A mathematical object violates one of its defining axioms.

    The message names the violated axiom and, where meaningful, the
    measured deviation and the offending index.
    """


class ConfigError(ValueError):
    """An experiment configuration is malformed or inconsistent."""


class InvariantViolation(RuntimeError):
    """A computed result broke an inequality that must hold by theory.

    Raised only when numerics go wrong badly enough to exceed the
    documented tolerances; callers should treat this as a hard failure.
    """

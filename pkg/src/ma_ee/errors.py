"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a model function."""


class ModelError(ValueError):
    """Model parameters are physically inconsistent."""


class FeasibilityError(ValueError):
    """An operating point violates the block timing or power constraints."""


class DegenerateChannelError(ValueError):
    """The channel gain is zero, so the rate is identically zero."""


class ConfigError(ValueError):
    """Invalid configuration value; the message carries the key path."""

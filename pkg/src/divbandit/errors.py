"""Exception types raised across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters for a grid, strategy, selector or experiment."""


class OutOfBoundsError(ValueError):
    """An effect fell outside the region a coverage grid was built for."""


class DomainError(ValueError):
    """A motor command lies outside the motor space."""


class EmptyStoreError(LookupError):
    """Nearest-neighbour query on a store with no observations."""

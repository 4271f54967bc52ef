"""Exception hierarchy shared across the kernel."""


class SeqprodError(Exception):
    """Base class for all errors raised by this package."""


class DescriptorMismatchError(SeqprodError):
    """Operands live in different algebras."""


class CapabilityError(SeqprodError):
    """Requested operation is not defined for this algebra or product."""


class PreconditionError(SeqprodError):
    """A documented precondition does not hold for the given inputs."""


class DomainError(SeqprodError):
    """A scalar function was evaluated outside its domain (e.g. log at 0)."""


class NumericalFailureError(SeqprodError):
    """A numerical routine failed to converge or produced a singular system."""


class ConfigError(SeqprodError):
    """Malformed descriptor shorthand, suite configuration or CLI input."""

"""Exception hierarchy shared by every module of the package."""


class WindingKernelError(Exception):
    """Base class for all errors raised by winding_kernel."""


class InputError(WindingKernelError, ValueError):
    """Malformed input: bad path files, bad configuration, invalid arguments."""


class OpenPath(InputError):
    pass


class PunctureOnPath(InputError):
    pass


class EndpointMismatch(InputError):
    pass


class ElementOutOfDomain(InputError):
    pass


class NotABijection(InputError):
    pass


class NonpositiveTime(InputError):
    pass


class GridTooCoarse(WindingKernelError):
    pass


class RadiusMismatch(InputError):
    pass


class InvalidSpinLabel(InputError):
    pass


class HalfIntegerOnSO3(InvalidSpinLabel):
    pass


class SizeMismatch(InputError):
    pass


class TooManyParticles(InputError):
    pass


class AnyonUnsupportedConfig(InputError):
    pass


class NumericalError(WindingKernelError, ArithmeticError):
    """A numerical procedure could not reach its accuracy target."""


class TruncationInsufficient(NumericalError):
    pass


class WindingResidualError(NumericalError):
    """Accumulated turning angle is not close to a multiple of 2*pi."""

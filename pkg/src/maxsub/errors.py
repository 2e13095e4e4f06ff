"""Exception types shared across the kernel."""


class KernelError(Exception):
    """Base class for domain errors raised by the computation kernel."""


class PresentationError(KernelError):
    """The ring presentation is structurally invalid: an inhomogeneous or
    non-terminating rule, a failed critical-pair check, or a malformed
    integral declaration."""


class IncompletePresentationError(KernelError):
    """Integration hit a top-degree normal monomial with no declared value."""


class FiberClassError(KernelError):
    """Integration was applied to a class still carrying the fiber factor."""


class UnknownGeneratorError(KernelError):
    """A name does not resolve to a generator or parameter of the ring."""


class PresetError(KernelError):
    """Counting preset parameters are out of range or inconsistent."""

"""Exception hierarchy shared by all cyclepack modules."""

from __future__ import annotations


class CyclePackError(Exception):
    """Base class for every error raised by the library."""


class InstanceError(CyclePackError):
    """Malformed or unsupported input instance (CLI exit code 3)."""


class NonPlanar(InstanceError):
    """The graph or the supplied rotation system is not planar."""


class InvalidRotation(InstanceError):
    """The rotation system does not list every edge end exactly once."""


class NotACycle(CyclePackError):
    """An edge set that was expected to form a simple cycle does not."""


class NotLaminar(CyclePackError):
    """Two cycles of a supposedly laminar collection cross."""

    def __init__(self, message: str, pair: tuple[object, object] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


class NegativeWeight(CyclePackError):
    """A weight oracle received a negative edge weight."""


class BadParams(InstanceError):
    """Invalid parameters (epsilon range, generator arguments, family mismatch)."""


class Truncated(CyclePackError):
    """An exact routine was asked to work on a truncated cycle catalog."""


class OracleFailure(CyclePackError):
    """An oracle returned an inconsistent answer."""


class GuaranteeViolation(CyclePackError):
    """A proven bound or structural invariant failed; indicates a bug (CLI exit code 2)."""


class NoWitness(GuaranteeViolation):
    """Uncrossability exchange failed for a triple (C1, C2, P2)."""


class NoUncrossing(GuaranteeViolation):
    """Neither pairing of a strong-uncrossing step produced two family cycles."""


class LengthNotMinimal(GuaranteeViolation):
    """An uncrossing step shortened the support, so the input was not length-minimal."""


class ValueMismatch(GuaranteeViolation):
    """A requested LP value is not attainable."""


class BoundViolated(GuaranteeViolation):
    """No cycle with a witness set of size at most five was found."""


class ChainViolation(GuaranteeViolation):
    """Cycles through an edge do not split into two nested chains."""

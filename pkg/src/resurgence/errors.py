"""Error taxonomy shared across the package.

Every error that reflects a mathematical obstruction (rather than a plain
usage mistake) derives from :class:`ResurgenceError` and carries a short
machine-readable ``code`` plus a ``details`` dict, so the command line tool
can emit structured error objects and map them to exit status 2.
"""

from __future__ import annotations


class ResurgenceError(Exception):
    """Base class for domain errors raised by this package."""

    code = "domain-error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self), "details": self.details}


class TruncationError(ResurgenceError):
    """A mould entry beyond the stored truncation length was requested."""

    code = "truncation"


class CarrierEscapeError(ResurgenceError):
    """A composition needs a letter (a sum of letters) outside the alphabet."""

    code = "carrier-escape"


class UnsupportedDivisionError(ResurgenceError):
    """Exact division was requested by a scalar that is not a monomial."""

    code = "unsupported-division"


class NotSimpleError(ResurgenceError):
    """A singularity turned out not to be simple (pole of order > 1, or a
    log-coefficient that is itself singular at the point)."""

    code = "not-simple"


class ResonanceError(ResurgenceError):
    """An accumulated letter sum vanished where an invertible one is needed."""

    code = "resonance"


class DivergentIndexError(ResurgenceError):
    """A nested sum or iterated integral was requested at a divergent index."""

    code = "divergent-index"


class UnreachableBranchError(ResurgenceError):
    """A continuation path is inconsistent with the function's singularities."""

    code = "unreachable-branch"


class RayBlockedError(ResurgenceError):
    """A Laplace ray passes too close to a singular point of the integrand."""

    code = "ray-blocked"


class DecayMarginError(ResurgenceError):
    """A Laplace integral was requested where the exponential kernel does
    not dominate the integrand's growth (non-positive decay margin)."""

    code = "decay-margin"

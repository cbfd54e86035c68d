r"""Exponent triples :math:`(q, r, s)` with :math:`\frac1{2q}+\frac1{2r}=\frac1s`."""

import math
from dataclasses import dataclass

from ..errors import BadTriple

__all__ = ["SchattenTriple", "reciprocal"]

COUPLING_TOL = 1e-12


def reciprocal(x):
    """``1/x`` with ``1/inf = 0``."""
    return 0.0 if math.isinf(x) else 1.0 / x


def _exponent(x, name):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise BadTriple(f"{name}={x!r} is not a number") from None
    if math.isnan(x) or x < 1:
        raise BadTriple(f"{name} must be >= 1, got {x}")
    return x


@dataclass(frozen=True)
class SchattenTriple:
    """Exponents ``q, r >= 1`` (``inf`` allowed) and the Schatten index `s`.

    ``q = r = inf`` gives ``s = inf``, the operator-norm endpoint.
    """

    q: float
    r: float
    s: float

    def __post_init__(self):
        q = _exponent(self.q, "q")
        r = _exponent(self.r, "r")
        s = _exponent(self.s, "s")
        mismatch = abs(0.5 * reciprocal(q) + 0.5 * reciprocal(r) - reciprocal(s))
        if mismatch > COUPLING_TOL:
            raise BadTriple(f"1/(2q) + 1/(2r) != 1/s for {(q, r, s)} (off by {mismatch:.2e})")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @classmethod
    def from_qr(cls, q, r):
        q = _exponent(q, "q")
        r = _exponent(r, "r")
        inv = 0.5 * reciprocal(q) + 0.5 * reciprocal(r)
        return cls(q, r, math.inf if inv == 0 else 1.0 / inv)

    @property
    def half_inv_q(self):
        """``1/(2q)``."""
        return 0.5 * reciprocal(self.q)

    @property
    def half_inv_r(self):
        """``1/(2r)``."""
        return 0.5 * reciprocal(self.r)

    def as_dict(self):
        return {"q": self.q, "r": self.r, "s": self.s}

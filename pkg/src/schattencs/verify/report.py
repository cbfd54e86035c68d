"""Verdicts of single inequality trials."""

import math
import sys
from dataclasses import dataclass, field

__all__ = ["Tolerance", "InequalityReport", "relative_difference"]

_TINY = sys.float_info.min


@dataclass(frozen=True)
class Tolerance:
    """Mixed tolerance: ``lhs <= rhs * (1 + rel) + abs_``."""

    rel: float = 1e-8
    abs_: float = 1e-10

    def passes(self, lhs, rhs):
        return lhs <= rhs * (1.0 + self.rel) + self.abs_

    def nondecreasing(self, prev, nxt):
        """``nxt`` is not smaller than ``prev`` beyond the tolerance."""
        return nxt >= prev * (1.0 - self.rel) - self.abs_


def relative_difference(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _plain(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if hasattr(value, "item"):
        return _plain(value.item())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


@dataclass
class InequalityReport:
    """One trial: both sides, the gap ``rhs - lhs`` and the verdict.

    ``passed`` is the inequality verdict under `tol` combined with any side
    conditions the checker imposes (cross-checks, closed forms); a side
    condition failure is explained in `notes`.
    """

    checker_id: str
    lhs: float
    rhs: float
    gap: float
    relative_margin: float
    passed: bool
    params: dict = field(default_factory=dict)
    seed: int = None
    notes: str = ""

    @classmethod
    def build(cls, checker_id, lhs, rhs, tol, params=None, notes="", seed=None, side_ok=True):
        lhs = float(lhs)
        rhs = float(rhs)
        gap = rhs - lhs
        return cls(
            checker_id=checker_id,
            lhs=lhs,
            rhs=rhs,
            gap=gap,
            relative_margin=gap / max(rhs, tol.abs_, _TINY),
            passed=bool(tol.passes(lhs, rhs) and side_ok),
            params=dict(params or {}),
            seed=seed,
            notes=notes,
        )

    def to_dict(self):
        return {
            "checker_id": self.checker_id,
            "seed": self.seed,
            "params": _plain(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "relative_margin": self.relative_margin,
            "pass": self.passed,
            "notes": self.notes,
        }

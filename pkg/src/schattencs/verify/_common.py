"""Shared evaluation helpers for the checkers."""

import math

import numpy as np

from ..errors import WeightOverflow
from ..matrixcore import frac_power, hermitian_eigen, op_norm, schatten_norm

DEFAULT_SHIFT_GRID = (1e-6, 1e-4, 1e-2, 1.0, 1e2)

# relative round-off allowance for negative eigenvalues of Gram sums
_PSD_TOL = 1e-9


def psd_power(G, t):
    return frac_power(G, t, _PSD_TOL)


def norm_power(G, t):
    """``||G|| ** t`` with ``0 ** 0 = 1``."""
    return op_norm(G) ** t if t != 0 else 1.0


def smena_exponent(q):
    """``2q/(q-1)``, which tends to 2 as ``q -> inf``."""
    return 2.0 if math.isinf(q) else 2.0 * q / (q - 1.0)


def weight_power(v, p):
    """``v ** p`` elementwise, refusing results outside the normal float range.

    Near ``q = 1`` the exponent ``2q/(q-1)`` is large enough for the
    substituted weights to overflow or underflow, after which every Gram sum
    is meaningless.
    """
    with np.errstate(over="ignore", under="ignore"):
        out = np.asarray(v, dtype=float) ** p
    tiny = np.finfo(float).tiny
    if not np.all(np.isfinite(out)) or np.any(out < tiny) or not np.isfinite(out.sum()):
        raise WeightOverflow(f"weights ** {p:.6g} leave the floating point range")
    return out


def shift_grid(grid):
    g = tuple(sorted({float(x) for x in (grid or DEFAULT_SHIFT_GRID)}, reverse=True))
    if not g or g[-1] <= 0 or not all(math.isfinite(x) for x in g):
        raise ValueError(f"shift grid must be finite and positive, got {grid}")
    return g


def shifted_powers(G, alpha, grid):
    """``[(eta I + G) ** alpha for eta in grid]`` from one eigendecomposition."""
    spec = hermitian_eigen(G)
    mu = np.clip(spec.eigenvalues, 0.0, None)
    return [spec.apply(lambda _m, eta=eta: (eta + mu) ** alpha) for eta in grid]


def sandwich_sup(T, G_left, a, G_right, b, s, grid, tol):
    r"""Grid maximum of :math:`\|(\eta+G_l)^a\,T\,(\zeta+G_r)^b\|_s`.

    `grid` is sorted decreasingly. Returns ``(sup, table, trend_ok)`` where
    ``table[i, j]`` is the norm at ``(grid[i], grid[j])`` and `trend_ok`
    says that the norm does not decrease along decreasing shifts (within
    `tol`) in either direction.
    """
    L = shifted_powers(G_left, a, grid) if G_left is not None else [None]
    R = shifted_powers(G_right, b, grid) if G_right is not None else [None]
    table = np.empty((len(L), len(R)))
    for i, Li in enumerate(L):
        left = T if Li is None else Li @ T
        for j, Rj in enumerate(R):
            table[i, j] = schatten_norm(left if Rj is None else left @ Rj, s)
    ok = all(
        tol.nondecreasing(table[i, j], table[i + 1, j])
        for i in range(table.shape[0] - 1)
        for j in range(table.shape[1])
    ) and all(
        tol.nondecreasing(table[i, j], table[i, j + 1])
        for i in range(table.shape[0])
        for j in range(table.shape[1] - 1)
    )
    return float(table.max()), table, ok


def positive_weights(values, n, name):
    if values is None:
        return np.ones(n)
    w = np.asarray(values, dtype=float).ravel()
    if w.shape != (n,) or np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise ValueError(f"{name} must be {n} positive finite numbers")
    return w

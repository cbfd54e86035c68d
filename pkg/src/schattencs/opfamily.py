r"""Finite weighted operator families and their Gram operators.

A family :math:`(A_n)_{n=1}^N` of square matrices carries a primary weight
vector :math:`\lambda` and an optional secondary one (all ones when absent).
The right Gram operator is :math:`\sum_n\lambda_n^a A_n^*A_n`, the left one
:math:`\sum_n\lambda_n^a A_nA_n^*`. Their operator norms are the squared
norms of the assembled column and row operator matrices.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CountTooLarge, DimensionMismatch, IndexOutOfRange
from .matrixcore import as_matrix, op_norm

__all__ = [
    "WeightedFamily",
    "gram_right",
    "gram_left",
    "row_norm",
    "column_norm",
    "block_row",
    "block_column",
    "module_max_norm",
    "rank_one_family",
    "tail_norm",
]


def _weights(values, length, name):
    if values is None:
        return np.ones(length)
    w = np.asarray(values, dtype=float).ravel()
    if w.shape != (length,):
        raise DimensionMismatch(f"{name} has length {w.size}, family has {length}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValueError(f"{name} must be strictly positive and finite")
    return w


@dataclass(frozen=True, eq=False)
class WeightedFamily:
    """Ordered family of ``d x d`` matrices with positive weights.

    Zero weights are rejected: drop the corresponding members instead.
    """

    members: tuple
    weights: np.ndarray = None
    secondary_weights: np.ndarray = None
    dim: int = field(init=False)

    def __post_init__(self):
        members = tuple(as_matrix(A) for A in self.members)
        if not members:
            raise ValueError("a family needs at least one member")
        d = members[0].shape[0]
        for A in members:
            if A.shape != (d, d):
                raise DimensionMismatch(f"member of shape {A.shape} in a {d}x{d} family")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "weights", _weights(self.weights, len(members), "weights"))
        object.__setattr__(
            self,
            "secondary_weights",
            _weights(self.secondary_weights, len(members), "secondary_weights"),
        )

    def __len__(self):
        return len(self.members)

    @property
    def stack(self):
        """Members as an ``(N, d, d)`` array."""
        return np.stack(self.members)

    def scaled(self, factors):
        """Family with member ``n`` multiplied by ``factors[n]``, same weights."""
        factors = np.asarray(factors, dtype=float).ravel()
        return WeightedFamily(
            tuple(c * A for c, A in zip(factors, self.members)),
            self.weights,
            self.secondary_weights,
        )

    def with_weights(self, weights, secondary_weights=None):
        return WeightedFamily(self.members, weights, secondary_weights)

    def adjoints(self):
        return WeightedFamily(
            tuple(A.conj().T for A in self.members), self.weights, self.secondary_weights
        )


def _gram(F, side, weight_exponent, weights):
    w = F.weights if weights is None else _weights(weights, len(F), "weights")
    c = w ** weight_exponent
    S = F.stack
    if side == "right":
        G = np.einsum("n,nki,nkj->ij", c, S.conj(), S)
    elif side == "left":
        G = np.einsum("n,nik,njk->ij", c, S, S.conj())
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return 0.5 * (G + G.conj().T)


def gram_right(F, weight_exponent=0.0, weights=None):
    r""":math:`\sum_n \lambda_n^{a} A_n^* A_n` with ``a = weight_exponent``.

    `weights` overrides the family's primary weights.
    """
    return _gram(F, "right", weight_exponent, weights)


def gram_left(F, weight_exponent=0.0, weights=None):
    r""":math:`\sum_n \lambda_n^{a} A_n A_n^*`."""
    return _gram(F, "left", weight_exponent, weights)


def block_row(F):
    """The ``d x (N d)`` row operator matrix ``[A_1, ..., A_N]``."""
    return np.hstack(F.members)


def block_column(F):
    """The ``(N d) x d`` column operator matrix ``[A_1, ..., A_N]^T``."""
    return np.vstack(F.members)


def row_norm(F):
    """Norm of the row operator matrix, through the C*-identity."""
    return float(np.sqrt(op_norm(gram_left(F))))


def column_norm(F):
    """Norm of the column operator matrix, through the C*-identity."""
    return float(np.sqrt(op_norm(gram_right(F))))


def module_max_norm(F, lam=None, rho=None, half_power=False):
    r"""Norm of the doubly weighted module,
    :math:`\max(\|\sum\lambda_nA_n^*A_n\|^{1/2}, \|\sum\rho_nA_nA_n^*\|^{1/2})`.

    `lam` and `rho` default to the family's primary and secondary weights.
    With ``half_power=True`` the weights enter the Gram sums as
    :math:`\lambda_n^{1/2}`, :math:`\rho_n^{1/2}` instead.
    """
    lam = F.weights if lam is None else lam
    rho = F.secondary_weights if rho is None else rho
    a = 0.5 if half_power else 1.0
    right = op_norm(gram_right(F, a, weights=lam))
    left = op_norm(gram_left(F, a, weights=rho))
    return float(np.sqrt(max(right, left)))


def rank_one_family(e, f, count=None, weights=None, secondary_weights=None):
    r"""The pair of families :math:`(e_n\otimes e_1)_n` and :math:`(f_n\otimes f_1)_n`.

    Parameters
    ----------
    e, f : array_like
        Unitary matrices whose columns are the orthonormal bases.
    count : int, optional
        Number of basis vectors used, at most the dimension.

    Returns
    -------
    (WeightedFamily, WeightedFamily)
        Member ``n`` is the matrix ``e_1 e_n^*`` (resp. ``f_1 f_n^*``).
    """
    e = as_matrix(e)
    f = as_matrix(f)
    d = e.shape[0]
    if f.shape != e.shape or e.shape != (d, d):
        raise DimensionMismatch("bases must be square matrices of equal size")
    count = d if count is None else int(count)
    if count > d:
        raise CountTooLarge(f"count {count} exceeds dimension {d}")
    if count < 1:
        raise ValueError("count must be positive")
    A = tuple(np.outer(e[:, 0], e[:, n].conj()) for n in range(count))
    B = tuple(np.outer(f[:, 0], f[:, n].conj()) for n in range(count))
    return (
        WeightedFamily(A, weights, secondary_weights),
        WeightedFamily(B, weights, secondary_weights),
    )


def tail_norm(F, start, side="right", weight_exponent=0.0):
    """Operator norm of the Gram sum over members ``start, start+1, ...`` (1-based).

    ``start = len(F) + 1`` gives the empty sum, 0.
    """
    if not 1 <= start <= len(F) + 1:
        raise IndexOutOfRange(f"start={start} outside 1..{len(F) + 1}")
    if start == len(F) + 1:
        return 0.0
    tail = WeightedFamily(
        F.members[start - 1:], F.weights[start - 1:], F.secondary_weights[start - 1:]
    )
    G = _gram(tail, side, weight_exponent, None)
    return op_norm(G)

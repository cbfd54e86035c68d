r"""Checkers for the unweighted building blocks: double monotonicity of
Schatten norms and the twelve forms of the regularized quadruple inequality
for :math:`X\mapsto\sum_n A_nC_nXD_nB_n`.

Each quadruple variant is evaluated at its own ideal endpoint: ``nula*``
variants in the operator norm, ``dva*`` in the Hilbert-Schmidt norm and
``jen*`` in the trace norm.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, PreconditionUnmet, VariantUnknown
from ..matrixcore import as_matrix, loewner_leq, op_norm, schatten_norm
from ..opfamily import WeightedFamily, gram_left, gram_right
from ..transformer import TransformerSpec, apply, regularized_gram
from ._common import norm_power, psd_power
from .report import InequalityReport, Tolerance

__all__ = [
    "check_double_monotonicity",
    "QuadrupleInstance",
    "check_theorem_2_6",
    "VARIANTS",
    "ENDPOINTS",
]

# Loewner preconditions are judged with the default tolerance, independently of
# the verdict tolerance a caller passes in
PRECONDITION_TOL = Tolerance()


def check_double_monotonicity(A, B, C, D, X, s, tol=Tolerance()):
    r"""Check :math:`\|AXB\|_s\le\|CXD\|_s` given :math:`A^*A\le C^*C` and
    :math:`BB^*\le DD^*`.

    Raises
    ------
    PreconditionUnmet
        If either Loewner precondition fails.
    """
    A, B, C, D, X = (as_matrix(M) for M in (A, B, C, D, X))
    if X.shape != (A.shape[1], B.shape[0]):
        raise DimensionMismatch(f"X has shape {X.shape}")
    pairs = (
        (A.conj().T @ A, C.conj().T @ C, "A*A <= C*C"),
        (B @ B.conj().T, D @ D.conj().T, "BB* <= DD*"),
    )
    for lo, hi, label in pairs:
        slack = PRECONDITION_TOL.abs_ + PRECONDITION_TOL.rel * max(op_norm(lo), op_norm(hi))
        if not loewner_leq(lo, hi, slack):
            raise PreconditionUnmet(f"{label} fails")
    lhs = schatten_norm(A @ X @ B, s)
    rhs = schatten_norm(C @ X @ D, s)
    return InequalityReport.build(
        "check_double_monotonicity", lhs, rhs, tol, {"s": s, "dims": list(X.shape)}
    )


@dataclass(frozen=True, eq=False)
class QuadrupleInstance:
    """Families ``A, C`` acting on the left, ``B, D`` on the right, weights
    ``lam`` (for `A`) and ``w`` (for `B` and `D`), shifts and the argument
    `X` of shape ``d_A x d_B``."""

    A: tuple
    B: tuple
    C: tuple
    D: tuple
    lam: np.ndarray
    w: np.ndarray
    X: np.ndarray
    eps: float = 1e-3
    zeta: float = 1e-3
    eta: float = 1e-3
    theta: float = 1e-3

    def __post_init__(self):
        fams = {k: tuple(as_matrix(M) for M in getattr(self, k)) for k in "ABCD"}
        n = len(fams["A"])
        if n == 0 or any(len(f) != n for f in fams.values()):
            raise DimensionMismatch("A, B, C, D must be non-empty and of equal length")
        for k, f in fams.items():
            object.__setattr__(self, k, f)
        X = as_matrix(self.X)
        dA, dB = fams["A"][0].shape[0], fams["B"][0].shape[0]
        if X.shape != (dA, dB) or fams["C"][0].shape[0] != dA or fams["D"][0].shape[0] != dB:
            raise DimensionMismatch(f"X has shape {X.shape}; families act on {dA} and {dB}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=float))
        object.__setattr__(self, "w", np.asarray(self.w, dtype=float))

    def params(self):
        return {
            "length": len(self.A),
            "dims": list(self.X.shape),
            "eps": self.eps,
            "zeta": self.zeta,
            "eta": self.eta,
            "theta": self.theta,
        }


ENDPOINTS = {"nula": math.inf, "dva": 2.0, "jen": 1.0}


def _max_norm(ms):
    return max(op_norm(M) for M in ms)


def _max_product(ms, ns):
    return max(op_norm(M) * op_norm(N) for M, N in zip(ms, ns))


def _sides(variant, I):
    fam = WeightedFamily
    A = fam(I.A, I.lam)
    B = fam(I.B, I.w)
    C = fam(I.C)
    D = fam(I.D, I.w)
    AC = tuple(a @ c for a, c in zip(I.A, I.C))
    DB = tuple(d @ b for d, b in zip(I.D, I.B))
    X = I.X
    s = ENDPOINTS[_family(variant)]

    def nx(M):
        return schatten_norm(M, s)

    def T(left, right, a=0.0, b=0.0, lw=None, rw=None, arg=X):
        return apply(TransformerSpec(fam(left, lw), fam(right, rw), a, b), arg)

    if variant in ("nulaABCD", "dvaABCD", "nula", "dva", "nulaABCDalt", "dvaABCDalt"):
        Astar_inv = regularized_gram(A, "A_star_eta", I.eta).inverse()
    if variant in ("nulaABCD", "dvaABCD2", "nula", "dva2"):
        Bplus_inv = regularized_gram(fam(I.B), "B_plus_zeta", I.zeta).inverse()

    if variant == "nulaABCD":
        lhs = nx(Astar_inv @ T(AC, DB, 0.5, 0.0, I.lam, I.w) @ Bplus_inv)
        rhs = _max_product(I.C, I.D) * nx(X)
    elif variant == "dvaABCD2":
        Cplus_inv = regularized_gram(C, "C_plus_eta", I.eta).inverse()
        lhs = nx(T(AC, DB, arg=Cplus_inv @ X) @ Bplus_inv)
        rhs = _max_norm(I.A) * _max_norm(I.D) * nx(X)
    elif variant == "dvaABCD":
        Dstar_inv = regularized_gram(D, "D_star_theta", I.theta).inverse()
        DB_ = tuple(Dstar_inv @ M for M in DB)
        lhs = nx(Astar_inv @ T(AC, DB_, 0.5, 0.5, I.lam, I.w))
        rhs = _max_norm(I.B) * _max_norm(I.C) * nx(X)
    elif variant == "jenABCD":
        Cplus_inv = regularized_gram(C, "C_plus_eta", I.eta).inverse()
        Dstar_inv = regularized_gram(D, "D_star_theta", I.theta).inverse()
        DB_ = tuple(Dstar_inv @ M for M in DB)
        lhs = nx(T(AC, DB_, 0.0, 0.5, None, I.w, arg=Cplus_inv @ X))
        rhs = _max_product(I.A, I.B) * nx(X)
    elif variant == "nulaABCDalt":
        lhs = nx(T(AC, DB, 0.5, 0.0, I.lam, I.w))
        rhs = (
            _max_product(I.C, I.D)
            * norm_power(gram_left(A, 1.0), 0.5)
            * norm_power(gram_right(B), 0.5)
            * nx(X)
        )
    elif variant == "dvaABCD2alt":
        lhs = nx(T(AC, DB))
        rhs = (
            _max_norm(I.A)
            * _max_norm(I.D)
            * norm_power(gram_right(B), 0.5)
            * nx(psd_power(gram_right(C), 0.5) @ X)
        )
    elif variant == "dvaABCDalt":
        lhs = nx(T(AC, DB, 0.5, 0.5, I.lam, I.w))
        rhs = (
            _max_norm(I.B)
            * _max_norm(I.C)
            * norm_power(gram_left(A, 1.0), 0.5)
            * nx(X @ psd_power(gram_left(D, 1.0), 0.5))
        )
    elif variant == "jenABCDalt":
        lhs = nx(T(AC, DB, 0.0, 0.5, None, I.w))
        rhs = _max_product(I.A, I.B) * nx(
            psd_power(gram_right(C), 0.5) @ X @ psd_power(gram_left(D, 1.0), 0.5)
        )
    elif variant == "nula":
        lhs = nx(Astar_inv @ T(I.A, I.B, 0.5, 0.0, I.lam, I.w) @ Bplus_inv)
        rhs = nx(X)
    elif variant == "dva2":
        Aplus_inv = regularized_gram(fam(I.A), "A_plus_eps", I.eps).inverse()
        lhs = nx(T(I.A, I.B, arg=Aplus_inv @ X) @ Bplus_inv)
        rhs = nx(X)
    elif variant == "dva":
        Bstar_inv = regularized_gram(B, "B_star_theta", I.theta).inverse()
        B_ = tuple(Bstar_inv @ M for M in I.B)
        lhs = nx(Astar_inv @ T(I.A, B_, 0.5, 0.5, I.lam, I.w))
        rhs = nx(X)
    else:  # jen
        Aplus_inv = regularized_gram(fam(I.A), "A_plus_eps", I.eps).inverse()
        Bstar_inv = regularized_gram(B, "B_star_theta", I.theta).inverse()
        B_ = tuple(Bstar_inv @ M for M in I.B)
        lhs = nx(T(I.A, B_, 0.0, 0.5, None, I.w, arg=Aplus_inv @ X))
        rhs = nx(X)
    return lhs, rhs


VARIANTS = (
    "nulaABCD",
    "dvaABCD2",
    "dvaABCD",
    "jenABCD",
    "nulaABCDalt",
    "dvaABCD2alt",
    "dvaABCDalt",
    "jenABCDalt",
    "nula",
    "dva2",
    "dva",
    "jen",
)


def _family(variant):
    return next(p for p in ENDPOINTS if variant.startswith(p))


def check_theorem_2_6(variant, instance, tol=Tolerance()):
    """Evaluate one variant of the quadruple inequality on `instance`.

    Raises
    ------
    VariantUnknown
        If `variant` is not in :data:`VARIANTS`.
    """
    if variant not in VARIANTS:
        raise VariantUnknown(variant)
    lhs, rhs = _sides(variant, instance)
    params = {"variant": variant, "s": ENDPOINTS[_family(variant)], **instance.params()}
    return InequalityReport.build(f"check_theorem_2_6:{variant}", lhs, rhs, tol, params)

r"""Defect operators of contractions and the operator families they generate.

For a square matrix :math:`C` the order-:math:`n` defect is

.. math::
    \Gamma^{(n)} = \sum_{k=0}^{n} (-1)^k \binom{n}{k} C^{*k} C^k
    \quad\text{(hyper side)},\qquad
    \sum_{k=0}^{n} (-1)^k \binom{n}{k} C^{k} C^{*k}
    \quad\text{(cohyper side)}.

`C` is an N-hypercontraction (N-cohypercontraction) when the hyper (cohyper)
defects of orders ``1..N`` are all positive semidefinite. Such operators give
asymmetrically weighted square summable families

.. math::
    \bigl(\sqrt{\Gamma^{(h)}_{\rm hyper}}\, C^n \sqrt{\Gamma^{(c)}_{\rm cohyper}}\bigr)_{n\ge0}

with binomial weights :math:`\binom{n+N-1}{N-1}`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoConvergence,
    NotContraction,
    NotHypercontractive,
    OrderTooLarge,
    SamplerExhausted,
    WeightOverflow,
)
from .matrixcore import as_matrix, frac_power, hermitian_eigen, op_norm
from .opfamily import WeightedFamily
from .random_matrices import random_contraction

__all__ = [
    "DefectOperator",
    "defect",
    "defects",
    "is_hypercontractive",
    "asymptotic_limit",
    "binomial_weights",
    "hyper_family",
    "sample_hypercontraction",
    "MAX_ORDER",
    "SAMPLER_MAX_ORDER",
]

MAX_ORDER = 60
SAMPLER_MAX_ORDER = 12
SIDES = ("hyper", "cohyper")


@dataclass(frozen=True, eq=False)
class DefectOperator:
    """Defect of `base` at `order` on `side`.

    `summand_norms` are the operator norms of the binomial terms; their size
    relative to ``value`` shows how much cancellation the sum went through.
    """

    base: np.ndarray
    order: int
    side: str
    value: np.ndarray
    summand_norms: np.ndarray

    @property
    def cancellation(self):
        top = float(np.max(self.summand_norms))
        return top / max(op_norm(self.value), np.finfo(float).tiny)


def _check_order(n):
    n = int(n)
    if n < 1:
        raise ValueError(f"order must be at least 1, got {n}")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds {MAX_ORDER}")
    return n


def _gram_powers(C, n, side):
    """``[C^{*k} C^k]`` (hyper) or ``[C^k C^{*k}]`` (cohyper) for k = 0..n."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    d = C.shape[0]
    P = np.eye(d, dtype=np.complex128)
    out = [P.copy()]
    for _ in range(n):
        P = P @ C
        out.append(P.conj().T @ P if side == "hyper" else P @ P.conj().T)
    return out


def _defect_from(grams, n, C, side):
    terms = [(-1) ** k * math.comb(n, k) * grams[k] for k in range(n + 1)]
    value = sum(terms)
    value = 0.5 * (value + value.conj().T)
    norms = np.array([op_norm(T) for T in terms])
    return DefectOperator(C, n, side, value, norms)


def defect(C, n, side="hyper"):
    """Alternating binomial defect of order `n`; see the module docstring."""
    C = as_matrix(C)
    if C.shape[0] != C.shape[1]:
        raise ValueError(f"C must be square, got {C.shape}")
    n = _check_order(n)
    return _defect_from(_gram_powers(C, n, side), n, C, side)


def defects(C, N, side="hyper"):
    """Defects of orders ``1..N`` sharing one table of powers."""
    C = as_matrix(C)
    N = _check_order(N)
    grams = _gram_powers(C, N, side)
    return [_defect_from(grams, n, C, side) for n in range(1, N + 1)]


def is_hypercontractive(C, N, tol=1e-10, side="hyper"):
    """Whether the defects of orders ``1..N`` on `side` are all PSD.

    Returns
    -------
    ok : bool
    margins : ndarray
        Smallest eigenvalue of each defect, orders ``1..N``.
    """
    margins = np.array([hermitian_eigen(D.value).eigenvalues[-1] for D in defects(C, N, side)])
    return bool(np.all(margins >= -tol)), margins


def asymptotic_limit(C, tol=1e-12, max_iter=100_000):
    r"""Limit of :math:`C^{*n}C^n` by iterating :math:`P\mapsto C^*PC` from ``I``.

    Raises
    ------
    NotContraction
        If ``||C|| > 1 + tol``.
    NoConvergence
        If ``max_iter`` steps do not bring the step size under `tol`; the
        exception carries the last iterate and residual.
    """
    C = as_matrix(C)
    if op_norm(C) > 1 + tol:
        raise NotContraction(f"||C|| = {op_norm(C):.6g} > 1")
    P = np.eye(C.shape[0], dtype=np.complex128)
    residual = math.inf
    for _ in range(max_iter):
        nxt = C.conj().T @ P @ C
        residual = op_norm(nxt - P)
        P = nxt
        if residual < tol:
            return 0.5 * (P + P.conj().T)
    raise NoConvergence(
        f"no convergence after {max_iter} steps (residual {residual:.3e})",
        last_iterate=P,
        residual=residual,
    )


def binomial_weights(N, length):
    r""":math:`\binom{n+N-1}{N-1}` for ``n = 0..length-1``, as exact int64."""
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    values = [math.comb(n + N - 1, N - 1) for n in range(int(length))]
    if values and values[-1] > np.iinfo(np.int64).max:
        raise WeightOverflow(f"binomial weight {values[-1]} exceeds int64")
    return np.array(values, dtype=np.int64)


def _require(C, order, side, tol):
    ok, margins = is_hypercontractive(C, order, tol, side)
    if not ok:
        bad = int(np.argmin(margins))
        raise NotHypercontractive(
            f"not {order}-{side}contractive: order {bad + 1} defect has "
            f"eigenvalue {margins[bad]:.3e}",
            order=bad + 1,
            margin=float(margins[bad]),
            side=side,
        )
    return margins


def hyper_family(C, cohyper_order, length=8, hyper_order=1, tol=1e-10):
    r"""Family :math:`\sqrt{\Gamma^{(h)}_{\rm hyper}}\,C^n\,\sqrt{\Gamma^{(c)}_{\rm cohyper}}`
    for ``n = 0, ..., length - 1``.

    ``hyper_order=1`` gives the family built from a single cohypercontraction;
    a larger `hyper_order` needs `C` to be hypercontractive at that order too.

    The primary weights are :math:`\binom{n+c-1}{c-1}` (they weight the left
    Gram sum), the secondary ones :math:`\binom{n+h-1}{h-1}` (right Gram sum).
    """
    C = as_matrix(C)
    _require(C, hyper_order, "hyper", tol)
    _require(C, cohyper_order, "cohyper", tol)
    left = frac_power(defect(C, hyper_order, "hyper").value, 0.5, tol)
    right = frac_power(defect(C, cohyper_order, "cohyper").value, 0.5, tol)
    members = []
    P = np.eye(C.shape[0], dtype=np.complex128)
    for _ in range(int(length)):
        members.append(left @ P @ right)
        P = P @ C
    return WeightedFamily(
        tuple(members),
        binomial_weights(cohyper_order, length).astype(float),
        binomial_weights(hyper_order, length).astype(float),
    )


def sample_hypercontraction(rng, d, hyper=1, cohyper=1, tol=1e-10, max_tries=2000):
    """Rejection-sample ``C = r U diag(sigma)`` that is `hyper`-hypercontractive
    and `cohyper`-cohypercontractive (0 skips a side).

    Returns
    -------
    C : ndarray
    tries : int
        Number of draws used, so callers can log the acceptance rate.
    """
    for order in (hyper, cohyper):
        if order > SAMPLER_MAX_ORDER:
            raise OrderTooLarge(f"sampler orders are capped at {SAMPLER_MAX_ORDER}")
    for tries in range(1, max_tries + 1):
        C = random_contraction(rng, d)
        if hyper and not is_hypercontractive(C, hyper, tol, "hyper")[0]:
            continue
        if cohyper and not is_hypercontractive(C, cohyper, tol, "cohyper")[0]:
            continue
        return C, tries
    raise SamplerExhausted(
        f"no {hyper}-hyper/{cohyper}-cohyper contraction in {max_tries} draws",
        acceptance_rate=0.0,
    )

r"""Checkers for the asymmetrically weighted Cauchy-Schwarz inequality in
Schatten ideals and for its corollaries.

For a triple :math:`(q, r, s)` and families :math:`(A_n)` with weights
:math:`\lambda` and :math:`(B_n)` with weights :math:`w` the plain form reads

.. math::
    \Bigl\|\sum_n \lambda_n^{\frac12-\frac1{2q}} w_n^{\frac1{2r}} A_nXB_n\Bigr\|_s
    \le \Bigl\|\sum\lambda_nA_nA_n^*\Bigr\|^{\frac12-\frac1{2q}}
        \Bigl\|\sum B_n^*B_n\Bigr\|^{\frac12-\frac1{2r}}
        \Bigl\|\bigl(\sum A_n^*A_n\bigr)^{\frac1{2q}} X
               \bigl(\sum w_nB_nB_n^*\bigr)^{\frac1{2r}}\Bigr\|_s ,

and the sup form puts the regularized Gram powers
:math:`(\eta+\sum\lambda_nA_nA_n^*)^{\frac1{2q}-\frac12}` and
:math:`(\zeta+\sum B_n^*B_n)^{\frac1{2r}-\frac12}` around the sum instead of
the two norm factors. The supremum over the shifts is taken on a finite
logarithmic grid; the checker also records whether the sandwich norm grows
as the shifts decrease.
"""

import math

from ..errors import BadSubstitution, BadTriple, CaseExponentMismatch
from ..matrixcore import as_matrix, schatten_norm
from ..opfamily import WeightedFamily, gram_left, gram_right
from ..transformer import TransformerSpec, apply
from ._common import (
    norm_power,
    psd_power,
    sandwich_sup,
    shift_grid,
    smena_exponent,
    weight_power,
)
from .report import InequalityReport, Tolerance, relative_difference
from .triple import SchattenTriple, reciprocal

__all__ = [
    "check_theorem_3_1",
    "theorem_3_1_sides",
    "check_corollary_3_3",
    "corollary_3_3_triple",
    "check_corollary_3_4",
    "FORMS",
    "COROLLARY_3_3_CASES",
    "COROLLARY_3_4_FORMS",
    "CROSS_TOL",
]

FORMS = ("plain", "sup")
COROLLARY_3_3_CASES = ("a1", "a2", "b1", "b2")
COROLLARY_3_4_FORMS = ("altotag", "altotagg", "smena_sup", "smena_plain")
CROSS_TOL = 1e-12


def _form(form):
    f = str(form).removesuffix("_form")
    if f not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    return f


def _triple(triple):
    if not isinstance(triple, SchattenTriple):
        raise BadTriple(f"expected a SchattenTriple, got {triple!r}")
    return triple


def _sup_sides(T, G_left, a, G_right, b, rhs, s, grid, tol):
    lhs, table, trend_ok = sandwich_sup(T, G_left, a, G_right, b, s, shift_grid(grid), tol)
    return lhs, rhs, {"trend_ok": trend_ok, "table": table}


def theorem_3_1_sides(form, triple, A, B, X, grid=None, tol=Tolerance()):
    """Both sides of the weighted inequality; `A` carries ``lam``, `B` ``w``.

    Returns
    -------
    lhs, rhs : float
    extra : dict
        For the sup form, ``trend_ok`` and the grid ``table``.
    """
    form = _form(form)
    t = _triple(triple)
    hq, hr = t.half_inv_q, t.half_inv_r
    T = apply(TransformerSpec(A, B, 0.5 - hq, hr), X)
    core = schatten_norm(psd_power(gram_right(A), hq) @ X @ psd_power(gram_left(B, 1.0), hr), t.s)
    GlA = gram_left(A, 1.0)
    GrB = gram_right(B)
    if form == "plain":
        rhs = norm_power(GlA, 0.5 - hq) * norm_power(GrB, 0.5 - hr) * core
        return schatten_norm(T, t.s), rhs, {}
    return _sup_sides(T, GlA, hq - 0.5, GrB, hr - 0.5, core, t.s, grid, tol)


def _params(triple, A, X, extra, **more):
    p = {**triple.as_dict(), "length": len(A), "dims": list(as_matrix(X).shape), **more}
    if "trend_ok" in extra:
        p["trend_ok"] = extra["trend_ok"]
    return p


def check_theorem_3_1(form, triple, family_A, family_B, X, shift_grid=None, tol=Tolerance()):
    """Check the plain or sup form for families carrying their weights.

    In the sup form a broken grid trend is recorded in ``params`` and in the
    notes but does not by itself fail the trial.
    """
    form = _form(form)
    lhs, rhs, extra = theorem_3_1_sides(form, triple, family_A, family_B, X, shift_grid, tol)
    notes = "" if extra.get("trend_ok", True) else "sandwich norm not monotone along the grid"
    return InequalityReport.build(
        f"check_theorem_3_1:{form}", lhs, rhs, tol, _params(triple, family_A, X, extra), notes
    )


def corollary_3_3_triple(case, s):
    """Map a corollary case and its index `s` to the triple it specializes.

    Raises
    ------
    CaseExponentMismatch
        If `s` is outside ``[1, 2]`` for the ``a`` cases or below 2 for the
        ``b`` cases.
    """
    if case not in COROLLARY_3_3_CASES:
        raise ValueError(f"case must be one of {COROLLARY_3_3_CASES}, got {case!r}")
    s = float(s)
    if case.startswith("a"):
        if not 1 <= s <= 2:
            raise CaseExponentMismatch(f"case {case} needs 1 <= s <= 2, got {s}")
        p = math.inf if s == 2 else s / (2 - s)
        q, r = (p, 1.0) if case == "a1" else (1.0, p)
    else:
        if not s >= 2:
            raise CaseExponentMismatch(f"case {case} needs s >= 2, got {s}")
        q, r = (s / 2, math.inf) if case == "b1" else (math.inf, s / 2)
    return SchattenTriple(q, r, s)


def _corollary_3_3_display(case, s, A, B, X):
    inv = reciprocal(s)
    GlA, GrB = gram_left(A, 1.0), gram_right(B)
    GrA, GlB = gram_right(A), gram_left(B, 1.0)
    if case == "a1":
        T = apply(TransformerSpec(A, B, 1 - inv, 0.5), X)
        rhs = norm_power(GlA, 1 - inv) * schatten_norm(
            psd_power(GrA, inv - 0.5) @ X @ psd_power(GlB, 0.5), s
        )
    elif case == "a2":
        T = apply(TransformerSpec(A, B, 0.0, inv - 0.5), X)
        rhs = norm_power(GrB, 1 - inv) * schatten_norm(
            psd_power(GrA, 0.5) @ X @ psd_power(GlB, inv - 0.5), s
        )
    elif case == "b1":
        T = apply(TransformerSpec(A, B, 0.5 - inv, 0.0), X)
        rhs = (
            norm_power(GlA, 0.5 - inv)
            * norm_power(GrB, 0.5)
            * schatten_norm(psd_power(GrA, inv) @ X, s)
        )
    else:
        T = apply(TransformerSpec(A, B, 0.5, inv), X)
        rhs = (
            norm_power(GlA, 0.5)
            * norm_power(GrB, 0.5 - inv)
            * schatten_norm(X @ psd_power(GlB, inv), s)
        )
    return schatten_norm(T, s), rhs


def _agreement(pairs):
    dev = max(relative_difference(a, b) for a, b in pairs)
    ok = dev <= CROSS_TOL
    return dev, ok, "" if ok else f"cross-check deviates by {dev:.3e}"


def check_corollary_3_3(case, s, family_A, family_B, X, tol=Tolerance()):
    """Check one case of the Schatten-index corollary and cross-check both
    sides against the weighted theorem at the mapped triple."""
    triple = corollary_3_3_triple(case, s)
    lhs, rhs = _corollary_3_3_display(case, triple.s, family_A, family_B, X)
    t_lhs, t_rhs, _ = theorem_3_1_sides("plain", triple, family_A, family_B, X, tol=tol)
    dev, ok, notes = _agreement(((lhs, t_lhs), (rhs, t_rhs)))
    params = _params(triple, family_A, X, {}, case=case, cross_deviation=dev)
    return InequalityReport.build(
        f"check_corollary_3_3:{case}", lhs, rhs, tol, params, notes, side_ok=ok
    )


def _corollary_3_4_display(form, t, A, B, X, grid, tol):
    hq, hr = t.half_inv_q, t.half_inv_r
    A0, B0 = WeightedFamily(A.members), WeightedFamily(B.members)
    if form in ("altotag", "altotagg"):
        iq, ir = reciprocal(t.q), reciprocal(t.r)
        T = apply(TransformerSpec(A0, B0), X)
        GlA = gram_left(A, iq)
        GrB = gram_right(B, -ir)
        GrA = gram_right(A, iq - 1.0)
        GlB = gram_left(B, 1.0 - ir)
    else:
        if t.q == 1 or math.isinf(t.r):
            raise BadSubstitution(f"the gamma/rho form needs q > 1 and r < inf, got {t}")
        gamma, rho = A.weights, B.weights
        T = apply(TransformerSpec(A, B, 1.0, 1.0), X)
        GlA = gram_left(A0, 1.0, weight_power(gamma, smena_exponent(t.q)))
        GrB = gram_right(B0)
        GrA = gram_right(A0)
        GlB = gram_left(B0, 1.0, weight_power(rho, 2.0 * t.r))
    core = schatten_norm(psd_power(GrA, hq) @ X @ psd_power(GlB, hr), t.s)
    if form in ("altotagg", "smena_plain"):
        rhs = norm_power(GlA, 0.5 - hq) * norm_power(GrB, 0.5 - hr) * core
        return schatten_norm(T, t.s), rhs, {}
    return _sup_sides(T, GlA, hq - 0.5, GrB, hr - 0.5, core, t.s, grid, tol)


def _corollary_3_4_mapped(form, t, A, B):
    """Families on which the weighted theorem reproduces the corollary."""
    if form in ("altotag", "altotagg"):
        lam, w = A.weights, B.weights
        A1 = A.scaled(lam ** (t.half_inv_q - 0.5))
        B1 = B.scaled(w ** (-t.half_inv_r))
        return A1, B1
    lam = weight_power(A.weights, smena_exponent(t.q))
    w = weight_power(B.weights, 2.0 * t.r)
    return WeightedFamily(A.members, lam), WeightedFamily(B.members, w)


def check_corollary_3_4(form, triple, family_A, family_B, X, shift_grid=None, tol=Tolerance()):
    r"""Check one form of the reweighted corollary.

    For ``altotag`` (sup) and ``altotagg`` (plain) the family weights are
    :math:`\lambda` and :math:`w`; for ``smena_sup`` and ``smena_plain``
    they are :math:`\gamma` and :math:`\rho`, entering the theorem as
    :math:`\lambda=\gamma^{2q/(q-1)}`, :math:`w=\rho^{2r}`.

    Raises
    ------
    BadSubstitution
        For the gamma/rho forms when ``q = 1`` or ``r = inf``.
    """
    if form not in COROLLARY_3_4_FORMS:
        raise ValueError(f"form must be one of {COROLLARY_3_4_FORMS}, got {form!r}")
    t = _triple(triple)
    lhs, rhs, extra = _corollary_3_4_display(form, t, family_A, family_B, X, shift_grid, tol)
    thm_form = "plain" if form in ("altotagg", "smena_plain") else "sup"
    A1, B1 = _corollary_3_4_mapped(form, t, family_A, family_B)
    t_lhs, t_rhs, _ = theorem_3_1_sides(thm_form, t, A1, B1, X, shift_grid, tol)
    dev, ok, notes = _agreement(((lhs, t_lhs), (rhs, t_rhs)))
    if not extra.get("trend_ok", True):
        notes = "; ".join(x for x in (notes, "sandwich norm not monotone along the grid") if x)
    params = _params(t, family_A, X, extra, form=form, cross_deviation=dev)
    return InequalityReport.build(
        f"check_corollary_3_4:{form}", lhs, rhs, tol, params, notes, side_ok=ok
    )

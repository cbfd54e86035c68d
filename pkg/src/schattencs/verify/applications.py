r"""Checkers for the two applications of the weighted inequality and for the
Loewner dominance relations of hypercontractive families.

Rank-one families :math:`A_n=e_n\otimes e_1`, :math:`B_n=f_n\otimes f_1`
turn the transformer into

.. math::
    X\mapsto \sum_n c_n\,\langle Xf_1, e_n\rangle\, f_n\otimes e_1 ,

a rank-one operator whose Schatten norm is the Euclidean norm of its
coefficient vector for every index. Hypercontractions feed the families
:math:`\sqrt{\Gamma^{(1)}}\,C^n\sqrt{\Gamma^{(N)}}` with binomial weights.
"""

import math

import numpy as np

from ..errors import (
    BadSubstitution,
    BadTriple,
    DimensionMismatch,
    NotHypercontractive,
    NotOrthonormal,
)
from ..hypercontraction import binomial_weights, defect, hyper_family, is_hypercontractive
from ..matrixcore import as_matrix, frac_power, min_eigenvalue, op_norm, schatten_norm
from ..transformer import TransformerSpec, apply
from ._common import (
    norm_power,
    psd_power,
    sandwich_sup,
    shift_grid,
    smena_exponent,
    weight_power,
)
from .report import InequalityReport, Tolerance
from .triple import SchattenTriple

__all__ = [
    "check_theorem_4_1",
    "check_theorem_4_2",
    "check_hyper_dominance",
    "RANK_ONE_FORMS",
    "DOMINANCE_DISPLAYS",
    "RANK_ONE_NORMS",
    "CLOSED_FORM_TOL",
]

RANK_ONE_FORMS = ("plain", "sup", "gamma_plain", "gamma_sup")
DOMINANCE_DISPLAYS = ("h1", "h2", "h3", "h4", "h5", "h6")
RANK_ONE_NORMS = (1.0, 2.0, 3.0, math.inf)
CLOSED_FORM_TOL = 1e-10
ORTHO_TOL = 1e-10


def _unitary(U, name):
    U = as_matrix(U)
    d = U.shape[0]
    if U.shape != (d, d) or op_norm(U.conj().T @ U - np.eye(d)) > ORTHO_TOL:
        raise NotOrthonormal(f"columns of {name} are not an orthonormal basis")
    return U


def _positive(v, n, name):
    v = np.asarray(v, dtype=float).ravel()
    if v.shape != (n,) or not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise ValueError(f"{name} must be {n} positive finite numbers")
    return v


def check_theorem_4_1(form, triple, a, b, e, f, X, shift_grid_=None, tol=Tolerance()):
    r"""Check the rank-one specialization built from bases `e` and `f`.

    Parameters
    ----------
    form : {"plain", "sup", "gamma_plain", "gamma_sup"}
    triple : SchattenTriple
    a, b : array_like
        :math:`\lambda,\rho` for the plain and sup forms; :math:`\gamma,w`
        for the gamma forms, where :math:`\lambda=\gamma^{2q/(q-1)}` and
        :math:`\rho=w^{2r}`. Their length ``L <= d_A`` is the family length.
    e, f : array_like
        Unitary matrices whose columns are the two bases.
    X : array_like
        ``d_A x d_B`` argument.

    The report fails if the transformer output's Schatten norms at
    :data:`RANK_ONE_NORMS` deviate from the coefficient-vector norm by more
    than :data:`CLOSED_FORM_TOL` (relative).
    """
    if form not in RANK_ONE_FORMS:
        raise ValueError(f"form must be one of {RANK_ONE_FORMS}, got {form!r}")
    t = triple
    if not isinstance(t, SchattenTriple):
        raise BadTriple(f"expected a SchattenTriple, got {t!r}")
    e = _unitary(e, "e")
    f = _unitary(f, "f")
    X = as_matrix(X)
    if X.shape != (e.shape[0], f.shape[0]):
        raise DimensionMismatch(f"X has shape {X.shape}, bases need {(e.shape[0], f.shape[0])}")
    a = np.asarray(a, dtype=float).ravel()
    L = a.size
    if L > min(e.shape[0], f.shape[0]):
        raise DimensionMismatch(f"family length {L} exceeds the basis sizes")
    a = _positive(a, L, "a")
    b = _positive(b, L, "b")
    hq, hr = t.half_inv_q, t.half_inv_r
    gamma_form = form.startswith("gamma")
    if gamma_form:
        if t.q == 1 or math.isinf(t.r):
            raise BadSubstitution(f"the gamma/w form needs q > 1 and r < inf, got {t}")
        lam, rho = weight_power(a, smena_exponent(t.q)), weight_power(b, 2.0 * t.r)
        coef = a * b
    else:
        lam, rho = a, b
        coef = lam ** (0.5 - hq) * rho ** hr

    Xf1 = X @ f[:, 0]
    x = e[:, :L].conj().T @ Xf1  # <X f_1, e_n>
    c = coef * x
    # sum_n c_n f_n (x) e_1, i.e. the matrix sum_n c_n e_1 f_n^*
    M = np.outer(e[:, 0], (f[:, :L] @ c.conj()).conj())
    c_norm = float(np.linalg.norm(c))
    scale = max(c_norm, np.finfo(float).tiny)
    closed_dev = max(abs(schatten_norm(M, s) - c_norm) / scale for s in RANK_ONE_NORMS)
    closed_ok = closed_dev <= CLOSED_FORM_TOL or c_norm == 0.0 and op_norm(M) == 0.0
    xf = float(np.linalg.norm(Xf1))

    rho_factor = np.sum(rho) ** hr
    lam_factor = np.sum(lam) ** (0.5 - hq)
    extra = {}
    if form.endswith("plain"):
        lhs = schatten_norm(M, t.s)
        rhs = lam_factor * rho_factor * xf
    else:
        G = float(np.sum(lam)) * np.outer(e[:, 0], e[:, 0].conj())
        grid = shift_grid(shift_grid_)
        lhs, _, trend_ok = sandwich_sup(M, G, hq - 0.5, None, 0.0, t.s, grid, tol)
        rhs = rho_factor * xf
        extra["trend_ok"] = trend_ok
    notes = [] if closed_ok else [f"rank-one closed form off by {closed_dev:.3e}"]
    if not extra.get("trend_ok", True):
        notes.append("sandwich norm not monotone along the grid")
    params = {
        **t.as_dict(),
        "form": form,
        "length": L,
        "dims": list(X.shape),
        "closed_form_deviation": closed_dev,
        **extra,
    }
    return InequalityReport.build(
        f"check_theorem_4_1:{form}", lhs, rhs, tol, params, "; ".join(notes), side_ok=closed_ok
    )


def _require(C, order, side, tol, name):
    ok, margins = is_hypercontractive(C, order, tol, side)
    if not ok:
        k = int(np.argmin(margins))
        raise NotHypercontractive(
            f"{name} is not {order}-{side}contractive (order {k + 1} margin {margins[k]:.3e})",
            order=k + 1,
            margin=float(margins[k]),
            side=side,
        )


def check_theorem_4_2(form, C, D, N, M, triple, length, X, shift_grid_=None, tol=Tolerance()):
    r"""Check the weighted inequality on the families generated by an
    `N`-cohypercontraction `C` and an `M`-cohypercontraction `D`, truncated
    at `length` terms.

    The left family :math:`\sqrt{\Gamma^{(1)}_{\rm hyper}(C)}\,C^n
    \sqrt{\Gamma^{(N)}_{\rm cohyper}(C)}` carries the weights
    :math:`\binom{n+N-1}{N-1}`, the right one is built from `D` and `M` in
    the same way.

    Raises
    ------
    NotHypercontractive
        If a required defect is not positive semidefinite.
    """
    form = str(form).removesuffix("_form")
    if form not in ("plain", "sup"):
        raise ValueError(f"form must be 'plain' or 'sup', got {form!r}")
    t = triple
    C, D, X = as_matrix(C), as_matrix(D), as_matrix(X)
    pre_tol = 1e-10
    _require(C, N, "cohyper", pre_tol, "C")
    _require(D, M, "cohyper", pre_tol, "D")
    FC = hyper_family(C, N, length, 1, pre_tol)
    FD = hyper_family(D, M, length, 1, pre_tol)
    hq, hr = t.half_inv_q, t.half_inv_r
    T = apply(TransformerSpec(FC, FD, 0.5 - hq, hr), X)
    G1C = defect(C, 1, "hyper").value
    GNC = defect(C, N, "cohyper").value
    G1D = defect(D, 1, "hyper").value
    GMD = defect(D, M, "cohyper").value
    core = schatten_norm(psd_power(GNC, hq) @ X @ psd_power(G1D, hr), t.s)
    extra = {}
    if form == "plain":
        lhs = schatten_norm(T, t.s)
        rhs = norm_power(G1C, 0.5 - hq) * norm_power(GMD, 0.5 - hr) * core
    else:
        lhs, _, trend_ok = sandwich_sup(
            T, G1C, hq - 0.5, GMD, hr - 0.5, t.s, shift_grid(shift_grid_), tol
        )
        rhs = core
        extra["trend_ok"] = trend_ok
    params = {
        **t.as_dict(),
        "N": int(N),
        "M": int(M),
        "length": int(length),
        "dims": list(X.shape),
        **extra,
    }
    notes = "" if extra.get("trend_ok", True) else "sandwich norm not monotone along the grid"
    return InequalityReport.build(f"check_theorem_4_2:{form}", lhs, rhs, tol, params, notes)


def _dominance_matrices(which, C, N, M, length):
    """Truncated series and the dominating defect for display `which`."""
    C = as_matrix(C)
    d = C.shape[0]

    def sq(P):
        return frac_power(P, 0.5, 1e-9)

    powers = [np.eye(d, dtype=np.complex128)]
    for _ in range(length - 1):
        powers.append(powers[-1] @ C)
    if which in ("h1", "h3"):
        R = defect(C, N, "cohyper").value
        G1 = defect(C, 1, "hyper").value
        S = sq(R)
        L = sum(S @ P.conj().T @ G1 @ P @ S for P in powers)
    elif which in ("h2", "h4"):
        R = defect(C, 1, "hyper").value
        GN = defect(C, N, "cohyper").value
        S = sq(R)
        wts = binomial_weights(N, length)
        L = sum(float(k) * S @ P @ GN @ P.conj().T @ S for k, P in zip(wts, powers))
    elif which == "h5":
        R = defect(C, M, "cohyper").value
        GN = defect(C, N, "hyper").value
        S = sq(R)
        wts = binomial_weights(N, length)
        L = sum(float(k) * S @ P.conj().T @ GN @ P @ S for k, P in zip(wts, powers))
    else:
        R = defect(C, N, "hyper").value
        GM = defect(C, M, "cohyper").value
        S = sq(R)
        wts = binomial_weights(M, length)
        L = sum(float(k) * S @ P @ GM @ P.conj().T @ S for k, P in zip(wts, powers))
    return 0.5 * (L + L.conj().T), R


_DOMINANCE_HYPOTHESES = {
    # display -> [(side, which order)]
    "h1": (("cohyper", "N"),),
    "h2": (("cohyper", "N"),),
    "h3": (("cohyper", "N"),),
    "h4": (("cohyper", "N"),),
    "h5": (("hyper", "N"), ("cohyper", "M")),
    "h6": (("hyper", "N"), ("cohyper", "M")),
}


def check_hyper_dominance(which, C, N, M=None, length=8, tol=Tolerance()):
    r"""Loewner dominance of a truncated defect series by a defect.

    ``h1``/``h2`` concern an `N`-cohypercontraction `C`; ``h3``/``h4`` are
    the same displays for the second operator (pass it as `C` with its own
    order as `N`); ``h5``/``h6`` need `C` to be `N`-hypercontractive and
    `M`-cohypercontractive.

    The report has ``lhs = -min_eig(R - L)``, ``rhs = 0`` and thus
    ``gap = min_eig(R - L)``; it passes when that eigenvalue is at least
    ``-tol.abs_``.
    """
    if which not in DOMINANCE_DISPLAYS:
        raise ValueError(f"which must be one of {DOMINANCE_DISPLAYS}, got {which!r}")
    if which in ("h5", "h6") and M is None:
        raise ValueError(f"{which} needs both orders N and M")
    orders = {"N": int(N), "M": None if M is None else int(M)}
    for side, key in _DOMINANCE_HYPOTHESES[which]:
        _require(as_matrix(C), orders[key], side, 1e-10, "C")
    L, R = _dominance_matrices(which, C, orders["N"], orders["M"], int(length))
    margin = min_eigenvalue(R - L, 1e-8)
    params = {
        "which": which,
        "N": orders["N"],
        "M": orders["M"],
        "length": int(length),
        "dims": [R.shape[0]],
    }
    if which in ("h1", "h3"):
        # the partial sum telescopes to sqrt(R) (I - C^{*L} C^L) sqrt(R)
        P = np.linalg.matrix_power(as_matrix(C), int(length))
        S = frac_power(R, 0.5, 1e-9)
        params["telescoping_residual"] = op_norm(L - S @ (np.eye(R.shape[0]) - P.conj().T @ P) @ S)
    return InequalityReport.build(f"check_hyper_dominance:{which}", -margin, 0.0, tol, params)

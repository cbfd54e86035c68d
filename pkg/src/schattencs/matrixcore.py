r"""Dense complex matrices: spectral calculus, Schatten norms, Loewner order.

Matrices are plain two-dimensional :class:`numpy.ndarray` objects of dtype
``complex128``. Exponents of Schatten norms are floats in :math:`[1, \infty]`
with ``math.inf`` standing for the operator norm; the infinite case is always
branched on explicitly and never pushed through :math:`(\sum\sigma^s)^{1/s}`.

Hermitian inputs are symmetrized to :math:`(M + M^*)/2` before any
eigendecomposition. Tolerances for "is Hermitian" and "is PSD" are relative
to the scale of the input, ``tol * max(1, max|M_ij|)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadExponent,
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    SingularPower,
)

__all__ = [
    "HermitianSpectrum",
    "as_matrix",
    "adjoint",
    "symmetrize",
    "hermitian_eigen",
    "frac_power",
    "singular_values",
    "schatten_norm",
    "op_norm",
    "loewner_leq",
    "min_eigenvalue",
    "rank_one",
    "check_exponent",
    "conjugate_exponent",
]

DEFAULT_TOL = 1e-10


def as_matrix(M):
    """Return `M` as a 2-d complex128 array (no copy if already one)."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {A.shape}")
    return A


def adjoint(M):
    """Conjugate transpose."""
    return as_matrix(M).conj().T


def _scale(M):
    return max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0


def symmetrize(M):
    M = as_matrix(M)
    return 0.5 * (M + M.conj().T)


def _check_hermitian(M, tol):
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"Hermitian input must be square, got {M.shape}")
    asym = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if asym > tol * _scale(M):
        raise NotHermitian(f"||M - M*||_max = {asym:.3e} exceeds tolerance {tol:.1e}")


@dataclass(frozen=True, eq=False)
class HermitianSpectrum:
    """Eigen-decomposition ``M = U diag(mu) U*`` with `mu` descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def apply(self, fn):
        """Spectral calculus: ``U diag(fn(mu)) U*``."""
        U = self.eigenvectors
        return (U * fn(self.eigenvalues)) @ U.conj().T


def hermitian_eigen(M, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    M : array_like
        Square matrix, Hermitian up to `tol` (relative to its largest entry).
    tol : float
        Allowed entry-wise asymmetry.

    Returns
    -------
    HermitianSpectrum
        Real eigenvalues sorted descending and a unitary matrix of
        eigenvectors (as columns).
    """
    M = as_matrix(M)
    _check_hermitian(M, tol)
    try:
        mu, U = np.linalg.eigh(symmetrize(M))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return HermitianSpectrum(mu[::-1].copy(), U[:, ::-1].copy())


def _numerical_zero(mu):
    # rank-revealing cutoff, same rule as numpy.linalg.matrix_rank
    top = float(np.max(np.abs(mu))) if mu.size else 0.0
    return max(mu.size, 1) * np.finfo(float).eps * top


def frac_power(P, t, tol=DEFAULT_TOL):
    r"""Fractional power :math:`P^t` of a positive semidefinite matrix.

    Eigenvalues in :math:`[-\mathrm{tol}, 0)` are round-off and clamped to
    zero; so are positive eigenvalues below the rank-revealing cutoff
    ``d * eps * max(mu)``, since a small exponent would otherwise inflate
    them (``(1e-16)**0.05 ~ 0.16``). ``t == 0`` returns the identity.

    Raises
    ------
    NotPSD
        If an eigenvalue is below ``-tol`` (relative to the matrix scale).
    SingularPower
        If ``t < 0`` and the matrix is numerically singular.
    """
    P = as_matrix(P)
    n = P.shape[0]
    if t == 0:
        _check_hermitian(P, tol)
        return np.eye(n, dtype=np.complex128)
    spec = hermitian_eigen(P, tol)
    mu = spec.eigenvalues
    floor = tol * _scale(P)
    if mu.size and mu[-1] < -floor:
        raise NotPSD(f"smallest eigenvalue {mu[-1]:.3e} below -{floor:.1e}")
    mu = np.where(mu <= _numerical_zero(mu), 0.0, mu)
    if t < 0 and mu.size and mu[-1] < floor:
        raise SingularPower(f"negative power {t} of a matrix with eigenvalue {mu[-1]:.3e}")
    return spec.apply(lambda _: mu ** t)


def singular_values(M):
    """Singular values in descending order, ``min(rows, cols)`` of them."""
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def check_exponent(s):
    """Validate a Schatten exponent and return it as a float in [1, inf]."""
    try:
        s = float(s)
    except (TypeError, ValueError) as exc:
        raise BadExponent(f"exponent {s!r} is not a number") from exc
    if math.isnan(s) or s < 1:
        raise BadExponent(f"Schatten exponent must lie in [1, inf], got {s}")
    return s


def conjugate_exponent(s):
    """Hoelder conjugate ``s'`` with ``1/s + 1/s' = 1``."""
    s = check_exponent(s)
    if s == 1:
        return math.inf
    if math.isinf(s):
        return 1.0
    return s / (s - 1.0)


def schatten_norm(M, s):
    r"""Schatten-`s` norm :math:`(\sum_i \sigma_i^s)^{1/s}`, or
    :math:`\max_i\sigma_i` for ``s = inf``."""
    s = check_exponent(s)
    sv = singular_values(M)
    if sv.size == 0:
        return 0.0
    top = float(sv[0])
    if math.isinf(s) or top == 0.0:
        return top
    if s == 1:
        return float(np.sum(sv))
    if s == 2:
        return float(np.sqrt(np.sum(sv * sv)))
    # scaled to keep sigma**s in range
    return top * float(np.sum((sv / top) ** s)) ** (1.0 / s)


def op_norm(M):
    return schatten_norm(M, math.inf)


def min_eigenvalue(M, tol=DEFAULT_TOL):
    return float(hermitian_eigen(M, tol).eigenvalues[-1])


def loewner_leq(A, B, tol=DEFAULT_TOL):
    """True iff ``B - A`` is positive semidefinite up to ``-tol``."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    _check_hermitian(A, tol)
    _check_hermitian(B, tol)
    return min_eigenvalue(B - A, tol) >= -tol


def rank_one(g, f):
    r"""Matrix of the rank-one operator :math:`g\otimes f: h\mapsto\langle h,g\rangle f`.

    The inner product is linear in its first slot, so the matrix is
    ``f g^*``.
    """
    g = np.asarray(g, dtype=np.complex128).ravel()
    f = np.asarray(f, dtype=np.complex128).ravel()
    return np.outer(f, g.conj())

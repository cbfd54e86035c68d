"""Random matrix ensembles drawn from an explicit :class:`numpy.random.Generator`.

Nothing here touches global random state; every function takes `rng`.
"""

import numpy as np

__all__ = [
    "complex_gaussian",
    "haar_unitary",
    "random_psd",
    "random_hermitian",
    "random_contraction",
    "log_uniform",
    "low_rank",
]


def complex_gaussian(rng, shape):
    """Entries ``(N(0,1) + i N(0,1)) / sqrt(2)``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng, d):
    """Haar-distributed ``d x d`` unitary (QR of a Ginibre matrix, phases fixed)."""
    Z = complex_gaussian(rng, (d, d))
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R)
    return Q * (ph / np.abs(ph))


def random_hermitian(rng, d):
    Z = complex_gaussian(rng, (d, d))
    return 0.5 * (Z + Z.conj().T)


def random_psd(rng, d, rank=None):
    """``Z Z^*`` with ``Z`` Gaussian of shape ``d x rank``."""
    Z = complex_gaussian(rng, (d, d if rank is None else rank))
    return Z @ Z.conj().T


def random_contraction(rng, d, radius=None):
    """``r U diag(sigma)`` with `U` Haar, ``sigma ~ U[0, 1)`` and ``r ~ U(0, 1]``.

    The result has operator norm below ``r <= 1``.
    """
    r = 1.0 - rng.random() if radius is None else radius
    sigma = rng.random(d)
    return r * haar_unitary(rng, d) * sigma


def log_uniform(rng, low, high, size=None):
    return np.exp(rng.uniform(np.log(low), np.log(high), size))


def low_rank(rng, M, rank):
    """Best rank-`rank` approximation of `M` (truncated SVD)."""
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    return (U[:, :rank] * s[:rank]) @ Vh[:rank]

r"""Elementary transformers :math:`X\mapsto\sum_n\lambda_n^a w_n^b A_nXB_n`
and shift-regularized Gram operators.

The weight pattern is data: a transformer is two weighted families plus the
two exponents applied to their weights. Every weighted inequality in the
package evaluates its left-hand side through :func:`apply`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularGram
from .matrixcore import HermitianSpectrum, as_matrix, hermitian_eigen, op_norm
from .opfamily import WeightedFamily, gram_left, gram_right

__all__ = [
    "TransformerSpec",
    "apply",
    "RegularizedGram",
    "regularized_gram",
    "normalized_contraction_check",
    "GRAM_KINDS",
]


@dataclass(frozen=True, eq=False)
class TransformerSpec:
    """``X -> sum_n lam_n**exponent_a * w_n**exponent_b * A_n X B_n``.

    `lam` are the weights of `family_A`, `w` those of `family_B`. The two
    families may act on spaces of different dimension; `X` is then
    ``d_A x d_B``.
    """

    family_A: WeightedFamily
    family_B: WeightedFamily
    exponent_a: float = 0.0
    exponent_b: float = 0.0

    def __post_init__(self):
        if len(self.family_A) != len(self.family_B):
            raise DimensionMismatch(
                f"family lengths differ: {len(self.family_A)} vs {len(self.family_B)}"
            )

    @property
    def coefficients(self):
        return self.family_A.weights ** self.exponent_a * self.family_B.weights ** self.exponent_b

    def __call__(self, X):
        return apply(self, X)


def apply(spec, X):
    """Evaluate the transformer on `X` by direct summation."""
    X = as_matrix(X)
    dA, dB = spec.family_A.dim, spec.family_B.dim
    if X.shape != (dA, dB):
        raise DimensionMismatch(f"X has shape {X.shape}, transformer needs {(dA, dB)}")
    terms = spec.family_A.stack @ X @ spec.family_B.stack
    return np.tensordot(spec.coefficients, terms, axes=1)


# kind -> (side of the Gram sum, whether the family's weights enter)
GRAM_KINDS = {
    "A_star_eta": ("left", True),
    "A_plus_eps": ("right", False),
    "B_plus_zeta": ("right", False),
    "B_star_theta": ("left", True),
    "C_plus_eta": ("right", False),
    "D_star_theta": ("left", True),
}


def _gram_for(F, kind):
    try:
        side, weighted = GRAM_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown Gram kind {kind!r}") from None
    exponent = 1.0 if weighted else 0.0
    return gram_left(F, exponent) if side == "left" else gram_right(F, exponent)


@dataclass(frozen=True, eq=False)
class RegularizedGram:
    r"""Square root :math:`(\mathrm{shift}\,I + G)^{1/2}` of a shifted Gram sum.

    `spectrum` holds the eigen-decomposition of ``shift I + G``; inverses and
    powers are taken through it rather than through a linear solve.
    """

    kind: str
    shift: float
    value: np.ndarray
    spectrum: HermitianSpectrum

    @property
    def side(self):
        return GRAM_KINDS[self.kind][0]

    def power(self, alpha):
        """``(shift I + G) ** alpha``."""
        return self.spectrum.apply(lambda mu: mu ** alpha)

    def inverse(self):
        """``value ** -1``."""
        return self.power(-0.5)


def regularized_gram(F, kind, shift):
    """Build ``(shift I + G)^{1/2}`` where `G` is the Gram sum selected by `kind`.

    ``A_star_eta``/``B_star_theta``/``D_star_theta`` use the weighted left sum
    ``sum w_n F_n F_n^*``; ``A_plus_eps``/``B_plus_zeta``/``C_plus_eta`` use the
    unweighted right sum ``sum F_n^* F_n``.
    """
    shift = float(shift)
    if not shift > 0:
        raise ValueError(f"shift must be positive, got {shift}")
    G = _gram_for(F, kind)
    M = shift * np.eye(F.dim) + G
    spec = hermitian_eigen(M)
    if spec.eigenvalues[-1] <= 0:
        raise SingularGram(f"shifted Gram has eigenvalue {spec.eigenvalues[-1]:.3e}")
    return RegularizedGram(kind, shift, spec.apply(np.sqrt), spec)


def normalized_contraction_check(F, G, side=None):
    r""":math:`\|G^{-1}\,(\text{Gram sum})\,G^{-1}\|`, which never exceeds 1.

    `side` is implied by ``G.kind``; passing a different one is an error.
    """
    if side is not None and side != G.side:
        raise ValueError(f"Gram kind {G.kind!r} is a {G.side} sum, not {side}")
    Ginv = G.inverse()
    return op_norm(Ginv @ _gram_for(F, G.kind) @ Ginv)

"""Schatten norms and elementary transformers on dense complex matrices, with
seeded checks of weighted norm inequalities between them.

The subpackages build on one another:

``matrixcore``
    Hermitian spectral calculus, Schatten norms, Loewner order.
``opfamily``
    Weighted operator families and their Gram operators.
``transformer``
    Elementary transformers and shift-regularized Grams.
``hypercontraction``
    Defect operators and hypercontractive families.
``verify``
    One checker per inequality.
``harness`` / ``cli``
    Seeded sampling, sweeps, replay and the command line.
"""

from . import errors
from .hypercontraction import (
    asymptotic_limit,
    binomial_weights,
    defect,
    hyper_family,
    is_hypercontractive,
    sample_hypercontraction,
)
from .matrixcore import (
    frac_power,
    hermitian_eigen,
    loewner_leq,
    op_norm,
    rank_one,
    schatten_norm,
    singular_values,
)
from .opfamily import (
    WeightedFamily,
    column_norm,
    gram_left,
    gram_right,
    module_max_norm,
    rank_one_family,
    row_norm,
    tail_norm,
)
from .transformer import RegularizedGram, TransformerSpec, apply, regularized_gram
from .verify import InequalityReport, SchattenTriple, Tolerance

__version__ = "0.1.0"

__all__ = [
    "errors",
    "frac_power",
    "hermitian_eigen",
    "loewner_leq",
    "op_norm",
    "rank_one",
    "schatten_norm",
    "singular_values",
    "WeightedFamily",
    "gram_left",
    "gram_right",
    "row_norm",
    "column_norm",
    "module_max_norm",
    "rank_one_family",
    "tail_norm",
    "TransformerSpec",
    "apply",
    "RegularizedGram",
    "regularized_gram",
    "defect",
    "is_hypercontractive",
    "asymptotic_limit",
    "binomial_weights",
    "hyper_family",
    "sample_hypercontraction",
    "InequalityReport",
    "SchattenTriple",
    "Tolerance",
]

"""Hypercontractions, their defect operators and the dominance relations.

Run with ``python3 demos/03_hypercontractions.py``.
"""

# %%
import numpy as np

from schattencs import (
    SchattenTriple,
    asymptotic_limit,
    binomial_weights,
    defect,
    is_hypercontractive,
    sample_hypercontraction,
)
from schattencs.matrixcore import min_eigenvalue
from schattencs.random_matrices import complex_gaussian
from schattencs.verify import check_hyper_dominance, check_theorem_4_2

rng = np.random.default_rng(2)

# %% a strict contraction that is hypercontractive and cohypercontractive of order 2
C, tries = sample_hypercontraction(rng, 4, hyper=2, cohyper=2)
print(f"accepted after {tries} draws, ||C|| = {np.linalg.norm(C, 2):.4f}")
for n in (1, 2):
    print(f"order {n}: min eig of defect = {min_eigenvalue(defect(C, n).value):.3e}")
ok, min_eigs = is_hypercontractive(C, 2)
print("2-hypercontractive:", ok, "with defect minima", np.round(min_eigs, 4))

# %% powers of C shrink, so the asymptotic limit of C^n* C^n vanishes
print("asymptotic limit norm:", np.linalg.norm(asymptotic_limit(C), 2))
print("binomial weights N=2:", binomial_weights(2, 5))

# %% dominance: the Loewner gap is reported as min eigenvalue of R - L
for which in ("h1", "h2", "h5", "h6"):
    rep = check_hyper_dominance(which, C, 2, M=2, length=10)
    print(f"{which}: min eig {rep.gap:+.3e}  pass={rep.passed}")

# %% the hypercontractive application of the weighted inequality
D, _ = sample_hypercontraction(rng, 3, hyper=1, cohyper=1)
X = complex_gaussian(rng, (4, 3))
rep = check_theorem_4_2("plain", C, D, 1, 1, SchattenTriple.from_qr(2, 2), 8, X)
print(f"application: lhs={rep.lhs:.4e} rhs={rep.rhs:.4e} pass={rep.passed}")

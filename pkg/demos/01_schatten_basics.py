"""Schatten norms, fractional powers and elementary transformers.

Run with ``python3 demos/01_schatten_basics.py``.
"""

# %%
import math

import numpy as np

from schattencs import (
    TransformerSpec,
    WeightedFamily,
    frac_power,
    loewner_leq,
    schatten_norm,
    singular_values,
)
from schattencs.random_matrices import complex_gaussian, random_psd

rng = np.random.default_rng(0)
X = complex_gaussian(rng, (4, 3))

# %% Schatten norms interpolate between the trace norm and the operator norm
print("singular values:", np.round(singular_values(X), 4))
for s in (1, 1.5, 2, 4, math.inf):
    print(f"||X||_{s:<4} = {schatten_norm(X, s):.6f}")

# the Hilbert-Schmidt norm is the Frobenius norm
print("Frobenius check:", np.isclose(schatten_norm(X, 2), np.linalg.norm(X)))

# %% fractional powers of a positive semidefinite matrix
P = random_psd(rng, 4, rank=2)
root = frac_power(P, 0.5)
print("(P^1/2)^2 == P:", np.allclose(root @ root, P))
print("P^0 is the identity:", np.allclose(frac_power(P, 0.0), np.eye(4)))

# %% Loewner order: P <= P + Q for any Q >= 0
Q = random_psd(rng, 4)
print("P <= P + Q:", loewner_leq(P, P + Q), "  P + Q <= P:", loewner_leq(P + Q, P))

# %% an elementary transformer X -> sum_n A_n X B_n
A = WeightedFamily(tuple(complex_gaussian(rng, (4, 4)) for _ in range(3)))
B = WeightedFamily(tuple(complex_gaussian(rng, (3, 3)) for _ in range(3)))
T = TransformerSpec(A, B)
loop = sum(a @ X @ b for a, b in zip(A.members, B.members))
print("transformer matches the explicit sum:", np.allclose(T(X), loop))

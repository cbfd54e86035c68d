"""The weighted Cauchy-Schwarz inequality on random families.

For an exponent triple with ``1/(2q) + 1/(2r) = 1/s`` the checker evaluates
both sides and reports the gap. Run with
``python3 demos/02_weighted_inequality.py``.
"""

# %%
import numpy as np

from schattencs import SchattenTriple, WeightedFamily
from schattencs.random_matrices import complex_gaussian, log_uniform
from schattencs.verify import check_theorem_3_1

rng = np.random.default_rng(1)
n, dA, dB = 5, 4, 3
A = WeightedFamily(
    tuple(complex_gaussian(rng, (dA, dA)) for _ in range(n)), log_uniform(rng, 1e-2, 1e2, n)
)
B = WeightedFamily(
    tuple(complex_gaussian(rng, (dB, dB)) for _ in range(n)), log_uniform(rng, 1e-2, 1e2, n)
)
X = complex_gaussian(rng, (dA, dB))

# %% the plain form across a few triples
for q, r in ((1, 1), (2, 2), (3, 1.5), (np.inf, 2)):
    t = SchattenTriple.from_qr(q, r)
    rep = check_theorem_3_1("plain", t, A, B, X)
    print(f"q={q:<4} r={r:<4} s={t.s:.4g}  lhs={rep.lhs:.4e}  rhs={rep.rhs:.4e}  pass={rep.passed}")

# %% the regularized form takes a supremum over shifts on a grid
t = SchattenTriple.from_qr(2, 3)
rep = check_theorem_3_1("sup", t, A, B, X, shift_grid=(1e2, 1.0, 1e-2, 1e-4, 1e-6))
print("sup form:", f"lhs={rep.lhs:.4e} rhs={rep.rhs:.4e}", "trend ok:", rep.params["trend_ok"])

# %% one identity pair gives equality: both sides are ||X||_s
I = WeightedFamily((np.eye(3),))
Y = complex_gaussian(rng, (3, 3))
rep = check_theorem_3_1("plain", SchattenTriple.from_qr(3, 1.5), I, I, Y)
print(f"identity pair gap: {rep.gap:.2e}")

# %% a report serializes to one JSON-ready dict
print(sorted(rep.to_dict()))

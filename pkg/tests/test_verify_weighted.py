import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schattencs.errors import BadSubstitution, BadTriple, CaseExponentMismatch
from schattencs.matrixcore import schatten_norm
from schattencs.opfamily import WeightedFamily, rank_one_family
from schattencs.random_matrices import complex_gaussian, haar_unitary, log_uniform
from schattencs.verify import (
    DEFAULT_SHIFT_GRID,
    SchattenTriple,
    check_corollary_3_3,
    check_corollary_3_4,
    check_theorem_3_1,
    check_theorem_4_1,
    corollary_3_3_triple,
)
from schattencs.verify.weighted import COROLLARY_3_3_CASES, COROLLARY_3_4_FORMS, CROSS_TOL

from conftest import gaussian_family

seeds = st.integers(0, 2**32 - 1)
exponents = st.one_of(st.just(1.0), st.just(math.inf), st.floats(1, 10))
triples = st.builds(SchattenTriple.from_qr, exponents, exponents)
FINE_GRID = (1e-12, 1e-8, 1e-4, 1.0)


def _families(rng, dA=None, dB=None, n=None, weights=True):
    dA = dA or int(rng.integers(1, 5))
    dB = dB or int(rng.integers(1, 5))
    n = n or int(rng.integers(1, 6))
    lam = log_uniform(rng, 1e-2, 1e2, n) if weights else None
    w = log_uniform(rng, 1e-2, 1e2, n) if weights else None
    A = WeightedFamily(gaussian_family(rng, dA, n), lam)
    B = WeightedFamily(gaussian_family(rng, dB, n), w)
    return A, B, complex_gaussian(rng, (dA, dB))


def _scalar_theorem(t, a, b, lam, w, x, grid=None):
    """Both sides when every operator is a complex number."""
    hq, hr = t.half_inv_q, t.half_inv_r
    A, B = np.abs(a) ** 2, np.abs(b) ** 2
    T = abs(np.sum(lam ** (0.5 - hq) * w**hr * a * b) * x)
    core = A.sum() ** hq * (w * B).sum() ** hr * abs(x)
    if grid is None:
        return T, (lam * A).sum() ** (0.5 - hq) * B.sum() ** (0.5 - hr) * core
    lhs = max(
        (eta + (lam * A).sum()) ** (hq - 0.5) * (zeta + B.sum()) ** (hr - 0.5) * T
        for eta in grid
        for zeta in grid
    )
    return lhs, core


@given(seed=seeds, t=triples, form=st.sampled_from(["plain", "sup"]))
def test_theorem_3_1_scalar_closed_form(seed, t, form):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    a, b = complex_gaussian(rng, n), complex_gaussian(rng, n)
    lam, w = log_uniform(rng, 1e-2, 1e2, n), log_uniform(rng, 1e-2, 1e2, n)
    x = complex(complex_gaussian(rng, ()))
    A = WeightedFamily(tuple(v.reshape(1, 1) for v in a), lam)
    B = WeightedFamily(tuple(v.reshape(1, 1) for v in b), w)
    rep = check_theorem_3_1(form, t, A, B, [[x]])
    lhs, rhs = _scalar_theorem(t, a, b, lam, w, x, DEFAULT_SHIFT_GRID if form == "sup" else None)
    assert rep.lhs == pytest.approx(lhs, rel=1e-10)
    assert rep.rhs == pytest.approx(rhs, rel=1e-10)
    assert rep.passed


@given(seed=seeds, t=triples, form=st.sampled_from(["plain", "sup"]))
def test_theorem_3_1_random_instances_pass(seed, t, form):
    rep = check_theorem_3_1(form, t, *_families(np.random.default_rng(seed)))
    assert rep.passed, rep
    assert rep.checker_id == f"check_theorem_3_1:{form}"
    if form == "sup":
        assert rep.params["trend_ok"]


@pytest.mark.parametrize("qr", [(2, 2), (1, math.inf), (math.inf, 1), (1, 1), (math.inf, math.inf)])
@pytest.mark.parametrize("form", ["plain", "sup"])
def test_theorem_3_1_endpoints(qr, form):
    t = SchattenTriple.from_qr(*qr)
    rng = np.random.default_rng(17)
    for _ in range(20):
        assert check_theorem_3_1(form, t, *_families(rng)).passed


@pytest.mark.parametrize("qr", [(2, 2), (1, math.inf), (math.inf, 1), (3, 1.5)])
def test_single_identity_pair_equality(qr):
    t = SchattenTriple.from_qr(*qr)
    X = complex_gaussian(np.random.default_rng(2), (3, 3))
    I = WeightedFamily((np.eye(3),))
    plain = check_theorem_3_1("plain_form", t, I, I, X)
    assert abs(plain.gap) <= 1e-10 * max(1.0, plain.rhs)
    assert plain.rhs == pytest.approx(schatten_norm(X, t.s), rel=1e-12)
    sup = check_theorem_3_1("sup_form", t, I, I, X, shift_grid=FINE_GRID)
    assert abs(sup.gap) <= 1e-10 * max(1.0, sup.rhs)


@given(
    seed=seeds, q=st.one_of(st.just(1.0), st.just(math.inf), st.floats(1, 10)), r=st.floats(1, 10)
)
def test_rank_one_families_match_application(seed, q, r):
    # with the full basis and finite r the weighted theorem reproduces the
    # rank-one application exactly
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 6))
    e, f = haar_unitary(rng, d), haar_unitary(rng, d)
    lam, rho = log_uniform(rng, 1e-2, 1e2, d), log_uniform(rng, 1e-2, 1e2, d)
    X = complex_gaussian(rng, (d, d))
    t = SchattenTriple.from_qr(q, r)
    A, _ = rank_one_family(e, e, weights=lam)
    _, B = rank_one_family(f, f, weights=rho)
    thm = check_theorem_3_1("plain", t, A, B, X)
    app = check_theorem_4_1("plain", t, lam, rho, e, f, X)
    assert thm.lhs == pytest.approx(app.lhs, rel=1e-10, abs=1e-14)
    assert thm.rhs == pytest.approx(app.rhs, rel=1e-10, abs=1e-14)


def test_sup_trend_table_is_recorded():
    A, B, X = _families(np.random.default_rng(4))
    t = SchattenTriple.from_qr(2, 3)
    rep = check_theorem_3_1("sup", t, A, B, X, shift_grid=(1.0, 1e-3, 1e-6))
    assert rep.params["trend_ok"] is True and rep.notes == ""


def test_theorem_3_1_errors():
    A, B, X = _families(np.random.default_rng(0))
    with pytest.raises(BadTriple):
        check_theorem_3_1("plain", (2, 2, 2), A, B, X)
    with pytest.raises(ValueError):
        check_theorem_3_1("other", SchattenTriple(2, 2, 2), A, B, X)


@pytest.mark.parametrize(
    "case, s, expected",
    [
        ("a1", 1.0, (1.0, 1.0)),
        ("a1", 4 / 3, (2.0, 1.0)),
        ("a1", 2.0, (math.inf, 1.0)),
        ("a2", 4 / 3, (1.0, 2.0)),
        ("b1", 6.0, (3.0, math.inf)),
        ("b2", 6.0, (math.inf, 3.0)),
        ("b1", 2.0, (1.0, math.inf)),
    ],
)
def test_corollary_3_3_triples(case, s, expected):
    t = corollary_3_3_triple(case, s)
    assert (t.q, t.r) == pytest.approx(expected)


def test_corollary_3_3_index_ranges():
    for case, s in (("a1", 2.5), ("a2", 0.9), ("b1", 1.5), ("b2", 1.0)):
        with pytest.raises(CaseExponentMismatch):
            corollary_3_3_triple(case, s)


@given(seed=seeds, case=st.sampled_from(COROLLARY_3_3_CASES), u=st.floats(0, 1))
def test_corollary_3_3_random_cross_checks(seed, case, u):
    s = 1 + u if case.startswith("a") else 2 + 8 * u
    rep = check_corollary_3_3(case, s, *_families(np.random.default_rng(seed)))
    assert rep.passed, rep
    assert rep.params["cross_deviation"] <= CROSS_TOL


def test_corollary_3_3_hilbert_schmidt_collapse():
    # at s = 2 the a and b cases meet pairwise
    fams = _families(np.random.default_rng(8))
    reps = {c: check_corollary_3_3(c, 2.0, *fams) for c in COROLLARY_3_3_CASES}
    for x, y in (("a1", "b2"), ("a2", "b1")):
        assert reps[x].lhs == pytest.approx(reps[y].lhs, rel=1e-12)
        assert reps[x].rhs == pytest.approx(reps[y].rhs, rel=1e-12)


def test_corollary_3_3_trace_norm_case():
    A, B, X = _families(np.random.default_rng(6), weights=False)
    rep = check_corollary_3_3("a1", 1.0, A, B, X)
    assert rep.params["q"] == 1.0 and rep.params["r"] == 1.0
    assert rep.passed


@given(
    seed=seeds, form=st.sampled_from(COROLLARY_3_4_FORMS), q=st.floats(1.01, 10), r=st.floats(1, 10)
)
def test_corollary_3_4_random_cross_checks(seed, form, q, r):
    rng = np.random.default_rng(seed)
    A, B, X = _families(rng)
    if form.startswith("smena"):
        n = len(A)
        A = A.with_weights(log_uniform(rng, 0.5, 2, n))
        B = B.with_weights(log_uniform(rng, 0.5, 2, n))
    rep = check_corollary_3_4(form, SchattenTriple.from_qr(q, r), A, B, X)
    assert rep.passed, rep
    assert rep.params["cross_deviation"] <= CROSS_TOL


def test_corollary_3_4_unit_weights_reduce_to_theorem():
    rng = np.random.default_rng(12)
    A, B, X = _families(rng, weights=False)
    t = SchattenTriple.from_qr(3, 2)
    ref = check_theorem_3_1("plain", t, A, B, X)
    for form in ("altotagg", "smena_plain"):
        rep = check_corollary_3_4(form, t, A, B, X)
        assert rep.lhs == pytest.approx(ref.lhs, rel=1e-12)
        assert rep.rhs == pytest.approx(ref.rhs, rel=1e-12)


def test_corollary_3_4_bad_substitution():
    A, B, X = _families(np.random.default_rng(1))
    with pytest.raises(BadSubstitution):
        check_corollary_3_4("smena_plain", SchattenTriple.from_qr(1, 2), A, B, X)
    with pytest.raises(BadSubstitution):
        check_corollary_3_4("smena_sup", SchattenTriple.from_qr(2, math.inf), A, B, X)
    with pytest.raises(ValueError):
        check_corollary_3_4("other", SchattenTriple.from_qr(2, 2), A, B, X)

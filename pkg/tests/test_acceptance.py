"""Acceptance suite: one test per criterion, at the stated counts and
tolerances. Each test prints a ``PASS``/``FAIL`` line (collected again in
the terminal summary); run ``python tests/test_acceptance.py`` to get just
those lines.
"""

import io
import json
import math
import sys

import numpy as np
import pytest

from schattencs.harness import (
    CHECKER_IDS,
    RunConfig,
    SamplerSettings,
    evaluate,
    replay,
    run,
    run_trial,
    sample_instance,
    sample_triple,
    trial_seed,
)
from schattencs.hypercontraction import defect, sample_hypercontraction
from schattencs.matrixcore import op_norm, singular_values
from schattencs.opfamily import (
    WeightedFamily,
    block_column,
    block_row,
    column_norm,
    gram_left,
    gram_right,
    rank_one_family,
    row_norm,
)
from schattencs.random_matrices import complex_gaussian, haar_unitary, log_uniform
from schattencs.verify import (
    DEFAULT_SHIFT_GRID,
    QuadrupleInstance,
    SchattenTriple,
    Tolerance,
    check_corollary_3_3,
    check_corollary_3_4,
    check_double_monotonicity,
    check_theorem_2_6,
    check_theorem_3_1,
    check_theorem_4_1,
    check_theorem_4_2,
    theorem_3_1_sides,
)
from schattencs.verify.applications import DOMINANCE_DISPLAYS, RANK_ONE_FORMS
from schattencs.verify.elementary import VARIANTS
from schattencs.verify.weighted import COROLLARY_3_3_CASES, COROLLARY_3_4_FORMS

BASE_SEED = 20240611
TAU = Tolerance()
EQUALITY_TOL = 1e-10
SOUNDNESS_TRIALS = 1000

RESULTS = []


def _report(number, title, failures, detail):
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    if failures:
        line += f"; first failure: {failures[0]}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _rng(tag, i):
    return np.random.default_rng(trial_seed(BASE_SEED, tag, i))


def _seed(cid, i):
    return trial_seed(BASE_SEED, cid, i)


def _equal(rep):
    return abs(rep.gap) <= EQUALITY_TOL * max(1.0, rep.rhs)


# ------------------------------------------------------------------ 1


def test_criterion_1_cstar_identities():
    failures, worst = [], 0.0
    for i in range(500):
        rng = _rng("cstar", i)
        d, n = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        F = WeightedFamily(tuple(complex_gaussian(rng, (d, d)) for _ in range(n)))
        for name, got, oracle in (
            ("row", row_norm(F), singular_values(block_row(F))[0]),
            ("column", column_norm(F), singular_values(block_column(F))[0]),
        ):
            dev = abs(got - oracle) / oracle
            worst = max(worst, dev)
            if dev > 1e-9:
                failures.append((i, name, dev))
    _report(1, "C*-identities on 500 families", failures, f"max rel dev {worst:.1e}")


# ------------------------------------------------------------------ 2


def test_criterion_2_rank_one_basis_identities():
    failures, worst = [], 0.0
    for i in range(100):
        rng = _rng("rank_one_basis", i)
        d = int(rng.integers(1, 9))
        e = haar_unitary(rng, d)
        lam = log_uniform(rng, 1e-2, 1e2, d)
        A, _ = rank_one_family(e, e, weights=lam)
        e1 = e[:, 0]
        right = op_norm(gram_right(A) - np.eye(d))
        left = op_norm(gram_left(A, 1.0) - lam.sum() * np.outer(e1, e1.conj())) / lam.sum()
        worst = max(worst, right, left)
        if max(right, left) > 1e-12:
            failures.append((i, right, left))
    _report(2, "rank-one basis identities on 100 bases", failures, f"max dev {worst:.1e}")


# ------------------------------------------------------------------ 3


def test_criterion_3_double_monotonicity():
    failures, count = [], 0
    for s in (1.0, 1.37, 2.0, 3.0, math.inf):
        settings = SamplerSettings(s=s)
        for i in range(1000):
            seed = _seed(f"check_double_monotonicity:{s}", i)
            rep = evaluate("check_double_monotonicity", sample_instance(
                "check_double_monotonicity", seed, settings))  # fmt: skip
            count += 1
            if not rep.passed:
                failures.append((s, seed, rep.relative_margin))
    rng = np.random.default_rng(BASE_SEED)
    X = complex_gaussian(rng, (3, 3))
    I = np.eye(3)
    for s in (1.0, 2.0, math.inf):
        probe = check_double_monotonicity(I, I, I, I, X, s)
        if not (probe.passed and _equal(probe)):
            failures.append(("identity probe", s, probe.gap))
        A, B = complex_gaussian(rng, (3, 3)), complex_gaussian(rng, (3, 3))
        scaled = check_double_monotonicity(A, B, 2 * A, 2 * B, X, s)
        if not (scaled.passed and abs(scaled.rhs - 4 * scaled.lhs) <= 1e-12 * scaled.rhs):
            failures.append(("homogeneity probe", s))
    _report(3, "double monotonicity, 1000 per index", failures, f"{count} instances")


# ------------------------------------------------------------------ 4


def _identity_probe(variant, X):
    I = (np.eye(X.shape[0]),)
    tiny = 1e-12
    inst = QuadrupleInstance(I, I, I, I, [1.0], [1.0], X, tiny, tiny, tiny, tiny)
    return check_theorem_2_6(variant, inst)


def _rank_one_trace_probe(rng):
    x, y, z, v = (complex_gaussian(rng, 3) for _ in range(4))
    X = complex_gaussian(rng, (3, 3))
    I = (np.eye(3),)
    inst = QuadrupleInstance(I, I, (np.outer(x, y.conj()),), (np.outer(z, v.conj()),),
                             [1.0], [2.0], X)  # fmt: skip
    rep = check_theorem_2_6("jenABCDalt", inst)
    closed = math.sqrt(2.0) * np.linalg.norm(x) * np.linalg.norm(v) * abs(y.conj() @ X @ z)
    return rep, closed


def test_criterion_4_quadruple_variants():
    failures, min_margin = [], {}
    for v in VARIANTS:
        cid = f"check_theorem_2_6:{v}"
        margins = []
        for i in range(500):
            rep = evaluate(cid, sample_instance(cid, _seed(cid, i)))
            margins.append(rep.relative_margin)
            if not rep.passed:
                failures.append((cid, i, rep.relative_margin))
        min_margin[v] = min(margins)
    rng = np.random.default_rng(BASE_SEED)
    X = complex_gaussian(rng, (3, 3))
    for v in VARIANTS:
        probe = _identity_probe(v, X)
        if not (probe.passed and _equal(probe)):
            failures.append(("identity probe", v, probe.gap))
    rep, closed = _rank_one_trace_probe(rng)
    if not (_equal(rep) and abs(rep.lhs - closed) <= 1e-10 * closed):
        failures.append(("rank-one trace probe", rep.lhs, rep.rhs, closed))
    lo = min(min_margin, key=min_margin.get)
    _report(4, "quadruple inequality, 12 variants x 500 plus equality probes", failures,
            f"min margin {min_margin[lo]:.1e} ({lo})")  # fmt: skip


# ------------------------------------------------------------------ 5


def _trend_steps_ok(table):
    # non-decreasing along decreasing shifts, within tau_abs per step
    down = table[1:, :] - table[:-1, :]
    right = table[:, 1:] - table[:, :-1]
    return min(down.min(initial=0.0), right.min(initial=0.0)) >= -TAU.abs_


def test_criterion_5_weighted_theorem():
    failures = []
    cid = "check_theorem_3_1:plain"
    for i in range(5000):
        rep = evaluate(cid, sample_instance(cid, _seed(cid, i)))
        if not rep.passed:
            failures.append((cid, i, rep.relative_margin))
    cid = "check_theorem_3_1:sup"
    worst_step = 0.0
    for i in range(500):
        inst = sample_instance(cid, _seed(cid, i))
        rep = evaluate(cid, inst)
        t = SchattenTriple.from_qr(inst["q"], inst["r"])
        A = WeightedFamily(tuple(inst["A"]), inst["lam"])
        B = WeightedFamily(tuple(inst["B"]), inst["w"])
        _, _, extra = theorem_3_1_sides("sup", t, A, B, inst["X"], DEFAULT_SHIFT_GRID)
        table = extra["table"]
        worst_step = min(worst_step, np.diff(table, axis=0).min(initial=0.0),
                         np.diff(table, axis=1).min(initial=0.0))  # fmt: skip
        if not rep.passed or not _trend_steps_ok(table):
            failures.append((cid, i, rep.relative_margin))
    X = complex_gaussian(np.random.default_rng(BASE_SEED), (3, 4))
    I3, I4 = WeightedFamily((np.eye(3),)), WeightedFamily((np.eye(4),))
    for qr in ((2, 2), (1, math.inf), (math.inf, 1), (1, 1), (3, 1.5), (math.inf, math.inf)):
        t = SchattenTriple.from_qr(*qr)
        plain = check_theorem_3_1("plain", t, I3, I4, X)
        sup = check_theorem_3_1("sup", t, I3, I4, X, shift_grid=(1e-12, 1e-6, 1.0))
        if not (_equal(plain) and _equal(sup)):
            failures.append(("identity probe", qr, plain.gap, sup.gap))
    _report(5, "weighted theorem, 5000 plain + 500 sup, grid trend, identity equality",
            failures, f"worst trend step {worst_step:.1e}")  # fmt: skip


# ------------------------------------------------------------------ 6


def test_criterion_6_corollaries():
    failures, worst = [], 0.0
    ids = [f"check_corollary_3_3:{c}" for c in COROLLARY_3_3_CASES]
    ids += [f"check_corollary_3_4:{f}" for f in COROLLARY_3_4_FORMS]
    for cid in ids:
        for i in range(500):
            rep = evaluate(cid, sample_instance(cid, _seed(cid, i)))
            dev = rep.params["cross_deviation"]
            worst = max(worst, dev)
            if not rep.passed or dev > 1e-12:
                failures.append((cid, i, dev, rep.relative_margin))
    rng = np.random.default_rng(BASE_SEED)
    fams = [WeightedFamily(tuple(complex_gaussian(rng, (3, 3)) for _ in range(4)),
                           log_uniform(rng, 1e-2, 1e2, 4)) for _ in range(2)]  # fmt: skip
    X = complex_gaussian(rng, (3, 3))
    hs = {c: check_corollary_3_3(c, 2.0, *fams, X) for c in COROLLARY_3_3_CASES}
    for a, b in (("a1", "b2"), ("a2", "b1")):
        if abs(hs[a].rhs - hs[b].rhs) > 1e-12 * hs[a].rhs:
            failures.append(("s=2 collapse", a, b))
    ones = [WeightedFamily(f.members) for f in fams]
    t = SchattenTriple.from_qr(3, 3)
    ref = check_theorem_3_1("plain", t, *ones, X)
    for form in ("altotagg", "smena_plain"):
        rep = check_corollary_3_4(form, t, *ones, X)
        if abs(rep.rhs - ref.rhs) > 1e-12 * ref.rhs or abs(rep.lhs - ref.lhs) > 1e-12 * ref.lhs:
            failures.append(("unit weights", form))
    _report(6, "corollaries, 500 per case/form, cross-checked", failures,
            f"max cross deviation {worst:.1e}")  # fmt: skip


# ------------------------------------------------------------------ 7


def test_criterion_7_rank_one_application():
    failures, worst = [], 0.0
    for form in RANK_ONE_FORMS:
        cid = f"check_theorem_4_1:{form}"
        for i in range(500):
            rep = evaluate(cid, sample_instance(cid, _seed(cid, i)))
            dev = rep.params["closed_form_deviation"]
            worst = max(worst, dev)
            if not rep.passed or dev > 1e-10:
                failures.append((cid, i, dev))
    rng = np.random.default_rng(BASE_SEED)
    e, f = haar_unitary(rng, 4), haar_unitary(rng, 4)
    X = complex_gaussian(rng, (4, 4)) @ (np.eye(4) - np.outer(f[:, 0], f[:, 0].conj()))
    t = SchattenTriple.from_qr(2, 3)
    a, b = np.array([0.7, 1.3, 1.1]), np.array([1.5, 0.6, 0.9])
    for form in RANK_ONE_FORMS:
        rep = check_theorem_4_1(form, t, a, b, e, f, X)
        if not (rep.passed and rep.lhs <= 1e-14 and rep.rhs <= 1e-14):
            failures.append(("zero probe", form, rep.lhs, rep.rhs))
    # scalar probe: both sides are lam^(1/2-1/(2q)) rho^(1/(2r)) |x|
    x = 0.8 - 0.6j
    for form in ("plain", "gamma_plain"):
        rep = check_theorem_4_1(form, t, [2.0], [3.0], [[1.0]], [[1.0]], [[x]])
        if not (rep.passed and rep.lhs == pytest.approx(rep.rhs, rel=1e-14)):
            failures.append(("scalar probe", form, rep.lhs, rep.rhs))
    _report(7, "rank-one application, 500 per form, closed form and probes", failures,
            f"max closed-form dev {worst:.1e}")  # fmt: skip


# ------------------------------------------------------------------ 8


def _hyper_instance(tag, i, N, M):
    rng = _rng(tag, i)
    dA, dB = int(rng.integers(2, 7)), int(rng.integers(2, 7))
    C, _ = sample_hypercontraction(rng, dA, hyper=0, cohyper=N)
    D, _ = sample_hypercontraction(rng, dB, hyper=0, cohyper=M)
    t = sample_triple(rng)
    length = int(rng.integers(1, 11))
    return C, D, t, length, complex_gaussian(rng, (dA, dB))


def test_criterion_8_hypercontractions():
    failures = []
    worst_defect = 0.0
    for c in (0.0, 0.3, 0.9, 1.0):
        for n in range(1, 7):
            for side in ("hyper", "cohyper"):
                dev = op_norm(defect(c * np.eye(3), n, side).value - (1 - c * c) ** n * np.eye(3))
                worst_defect = max(worst_defect, dev)
                if dev > 1e-12:
                    failures.append(("defect", c, n, side, dev))
    min_eig = math.inf
    for which in DOMINANCE_DISPLAYS:
        cid = f"check_hyper_dominance:{which}"
        for i in range(300):
            rep = evaluate(cid, sample_instance(cid, _seed(cid, i)))
            min_eig = min(min_eig, rep.gap)
            if rep.gap < -1e-9 or not rep.passed:
                failures.append((cid, i, rep.gap))
    for (N, M), count in (((1, 1), 300), ((2, 2), 100)):
        for i in range(count):
            C, D, t, length, X = _hyper_instance(f"theorem_4_2:{N}{M}", i, N, M)
            for form in ("plain", "sup"):
                rep = check_theorem_4_2(form, C, D, N, M, t, length, X)
                if not rep.passed:
                    failures.append(("check_theorem_4_2", N, M, i, form, rep.relative_margin))
    _report(8, "hypercontraction defects, dominance (6 x 300), application (300 + 100)",
            failures, f"max defect {worst_defect:.1e}, min eigenvalue {min_eig:.1e}")  # fmt: skip


# ------------------------------------------------------------------ 9


def _stream(jobs):
    out = io.StringIO()
    summary = run(RunConfig(trials=SOUNDNESS_TRIALS, seed=BASE_SEED, jobs=jobs), out)
    return summary, out.getvalue().splitlines()


def _without_timing(line):
    rec = json.loads(line)
    rec.pop("wall_ms")
    return rec


def test_criterion_9_determinism():
    failures = []
    first, lines = _stream(jobs=1)
    if not first.ok:
        bad = [r for r in first.records if not r["pass"]]
        failures.append(("soundness sweep", len(bad), bad[0]["checker_id"], bad[0]["seed"]))
    _, again = _stream(jobs=2)
    if len(again) != len(lines):
        failures.append(("stream length", len(lines), len(again)))
    mismatched = sum(_without_timing(a) != _without_timing(b) for a, b in zip(lines, again))
    if mismatched:
        failures.append(("rerun stream differs", mismatched))
    for line in lines[:: max(1, len(lines) // 700)]:
        rec = json.loads(line)
        fresh = replay(rec, use_instance=False)
        if (fresh["lhs"], fresh["rhs"]) != (rec["lhs"], rec["rhs"]):
            failures.append(("passing replay", rec["checker_id"], rec["seed"]))
    # rel = -1 demands lhs <= 0, forcing failing records with dumped instances
    forced = Tolerance(-1.0, 0.0)
    for cid in CHECKER_IDS:
        rec = json.loads(json.dumps(run_trial(cid, _seed(cid, 0), SamplerSettings(), forced)))
        if rec.get("error"):
            failures.append(("forced record errored", cid, rec["error"]))
        if rec["pass"] or "instance" not in rec:
            continue
        for use_instance in (True, False):
            fresh = replay(rec, use_instance)
            if (fresh["lhs"], fresh["rhs"]) != (rec["lhs"], rec["rhs"]):
                failures.append(("failing replay", cid, use_instance))
    _report(9, "determinism: replay and full-suite rerun", failures,
            f"{len(lines)} records, {len(CHECKER_IDS)} checkers x {SOUNDNESS_TRIALS}")  # fmt: skip


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

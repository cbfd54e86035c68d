"""Seeded instance sampling and batch execution of the checkers.

Per-trial seeds come from :class:`numpy.random.SeedSequence` with entropy
``(base_seed, crc32(checker_id), trial_index)``, so a trial's randomness does
not depend on which other checkers run, on their order, or on the number of
worker processes. Each trial draws its instance from
``numpy.random.default_rng(seed)``.
"""

import hashlib
import json
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigInvalid, IoFailure, SamplerExhausted
from .hypercontraction import sample_hypercontraction
from .matrixcore import frac_power
from .opfamily import WeightedFamily
from .random_matrices import (
    complex_gaussian,
    haar_unitary,
    log_uniform,
    low_rank,
    random_psd,
)
from .verify import (
    COROLLARY_3_3_CASES,
    COROLLARY_3_4_FORMS,
    DEFAULT_SHIFT_GRID,
    DOMINANCE_DISPLAYS,
    FORMS,
    RANK_ONE_FORMS,
    VARIANTS,
    QuadrupleInstance,
    SchattenTriple,
    Tolerance,
    check_corollary_3_3,
    check_corollary_3_4,
    check_double_monotonicity,
    check_hyper_dominance,
    check_theorem_2_6,
    check_theorem_3_1,
    check_theorem_4_1,
    check_theorem_4_2,
)
from .verify.triple import reciprocal

__all__ = [
    "CHECKER_IDS",
    "SamplerSettings",
    "RunConfig",
    "expand_checkers",
    "trial_seed",
    "resolve_checker",
    "sample_triple",
    "sample_instance",
    "instance_digest",
    "evaluate",
    "run_trial",
    "run",
    "replay",
    "encode",
    "decode",
    "RunSummary",
]

GROUPS = {
    "check_double_monotonicity": ("",),
    "check_theorem_2_6": VARIANTS,
    "check_theorem_3_1": FORMS,
    "check_corollary_3_3": COROLLARY_3_3_CASES,
    "check_corollary_3_4": COROLLARY_3_4_FORMS,
    "check_theorem_4_1": RANK_ONE_FORMS,
    "check_theorem_4_2": FORMS,
    "check_hyper_dominance": DOMINANCE_DISPLAYS,
}
CHECKER_IDS = tuple(g + (f":{f}" if f else "") for g, fs in GROUPS.items() for f in fs)

MONOTONICITY_INDICES = (1.0, 1.37, 2.0, 3.0, math.inf)
WEIGHT_RANGE = (1e-2, 1e2)
EXPONENT_RANGE = (1.0, 10.0)
GAMMA_RANGE = (0.5, 2.0)
# largest 2q/(q-1) drawn for the gamma forms; gamma ** 64 stays far inside
# the float range for gamma in GAMMA_RANGE
GAMMA_MAX_EXPONENT = 64.0
SHIFT_RANGE = (1e-6, 1e2)
P_INFINITE = 0.1
P_ONE = 0.05


def expand_checkers(selection):
    """Resolve a selection into a tuple of checker ids.

    ``"all"`` means every form-level id in :data:`CHECKER_IDS`. A bare group
    name such as ``check_theorem_3_1`` is itself a checker whose trials draw
    their form from the trial seed (see :func:`resolve_checker`).
    """
    if isinstance(selection, str):
        selection = [x for x in selection.replace(",", " ").split() if x]
    out = []
    for item in selection:
        if item == "all":
            ids = CHECKER_IDS
        elif item in CHECKER_IDS or item in GROUPS:
            ids = (item,)
        else:
            raise ConfigInvalid(f"unknown checker {item!r}")
        out.extend(i for i in ids if i not in out)
    if not out:
        raise ConfigInvalid("no checker selected")
    return tuple(out)


def resolve_checker(checker_id, seed):
    """Form-level id for a trial; group ids pick a form from the seed."""
    if checker_id in CHECKER_IDS:
        return checker_id
    if checker_id not in GROUPS:
        raise ConfigInvalid(f"unknown checker {checker_id!r}")
    forms = GROUPS[checker_id]
    return f"{checker_id}:{forms[int(seed) % len(forms)]}"


def trial_seed(base_seed, checker_id, trial):
    """64-bit seed of one trial."""
    ss = np.random.SeedSequence([int(base_seed), zlib.crc32(checker_id.encode()), int(trial)])
    return int(ss.generate_state(1, np.uint64)[0])


def _range(value, name, low):
    if isinstance(value, str):
        parts = value.split(":")
        try:
            value = tuple(int(p) for p in parts)
        except ValueError:
            raise ConfigInvalid(f"{name} must be an integer or lo:hi, got {value!r}") from None
    if isinstance(value, (int, np.integer)):
        value = (int(value), int(value))
    value = tuple(int(v) for v in value)
    if len(value) == 1:
        value = value * 2
    if len(value) != 2 or value[0] > value[1] or value[0] < low:
        raise ConfigInvalid(f"{name} must satisfy {low} <= lo <= hi, got {value}")
    return value


def _opt_exponent(value, name):
    if value is None or value == "":
        return None
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(f"{name} must be a number or inf, got {value!r}") from None
    if math.isnan(x) or x < 1:
        raise ConfigInvalid(f"{name} must be >= 1, got {value!r}")
    return x


@dataclass(frozen=True)
class SamplerSettings:
    """Ranges the sampler draws from; `s`, `q`, `r` pin exponents when set."""

    dim: tuple = (2, 6)
    length: tuple = (1, 8)
    s: float = None
    q: float = None
    r: float = None

    def __post_init__(self):
        object.__setattr__(self, "dim", _range(self.dim, "dim", 2))
        object.__setattr__(self, "length", _range(self.length, "length", 1))
        for k in ("s", "q", "r"):
            object.__setattr__(self, k, _opt_exponent(getattr(self, k), k))

    def to_dict(self):
        return encode(asdict(self))

    @classmethod
    def from_dict(cls, d):
        d = decode(d)
        return cls(tuple(d["dim"]), tuple(d["length"]), d.get("s"), d.get("q"), d.get("r"))


# ---------------------------------------------------------------- encoding


def encode(value):
    """JSON-ready form of instance data; exact for float64 and complex128."""
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {
                "__complex__": list(value.shape),
                "re": value.real.ravel().tolist(),
                "im": value.imag.ravel().tolist(),
            }
        return {"__real__": list(value.shape), "data": value.astype(float).ravel().tolist()}
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return {"__float__": repr(v)} if not math.isfinite(v) else v
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    return value


def decode(value):
    if isinstance(value, dict):
        if "__complex__" in value:
            shape = tuple(value["__complex__"])
            re = np.array(value["re"], dtype=float)
            im = np.array(value["im"], dtype=float)
            return (re + 1j * im).reshape(shape)
        if "__real__" in value:
            return np.array(value["data"], dtype=float).reshape(tuple(value["__real__"]))
        if "__float__" in value:
            return float(value["__float__"])
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def instance_digest(instance):
    """SHA-256 (first 16 hex digits) of the canonical encoding."""
    blob = json.dumps(encode(instance), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ---------------------------------------------------------------- sampling


def _draw_exponent(rng):
    u = rng.random()
    if u < P_INFINITE:
        return math.inf
    if u < P_INFINITE + P_ONE:
        return 1.0
    return float(log_uniform(rng, *EXPONENT_RANGE))


def sample_triple(rng, q=None, r=None, s=None):
    """Draw a triple, honouring whichever of `q`, `r`, `s` are pinned.

    With nothing pinned, `q` and `r` are drawn independently (log-uniform on
    ``[1, 10]``, with atoms at 1 and inf) and `s` is solved for.
    """
    if q is not None and r is not None:
        t = SchattenTriple.from_qr(q, r)
        if s is not None and abs(reciprocal(t.s) - reciprocal(s)) > 1e-12:
            raise ConfigInvalid(f"q={q}, r={r} do not give s={s}")
        return t
    if s is None:
        return SchattenTriple.from_qr(
            _draw_exponent(rng) if q is None else q, _draw_exponent(rng) if r is None else r
        )
    inv_s = reciprocal(s)
    if q is not None or r is not None:
        known = q if q is not None else r
        rest = inv_s - 0.5 * reciprocal(known)
        if not 0 <= rest <= 0.5 + 1e-15:
            raise ConfigInvalid(f"no triple with s={s} and {'q' if q is not None else 'r'}={known}")
        other = math.inf if rest <= 0 else 0.5 / min(rest, 0.5)
        return SchattenTriple.from_qr(*((known, other) if q is not None else (other, known)))
    lo, hi = max(0.0, inv_s - 0.5), min(0.5, inv_s)
    hq = float(rng.uniform(lo, hi))
    hr = inv_s - hq
    q_ = math.inf if hq <= 0 else 0.5 / hq
    r_ = math.inf if hr <= 0 else 0.5 / min(hr, 0.5)
    return SchattenTriple(max(q_, 1.0), max(r_, 1.0), s)


def _sample_X(rng, dA, dB):
    X = complex_gaussian(rng, (dA, dB))
    u = rng.random()
    if u < 0.2:
        X = low_rank(rng, X, 1)
    elif u < 0.3 and min(dA, dB) > 2:
        X = low_rank(rng, X, 2)
    return X


def _ints(rng, rng_range):
    return int(rng.integers(rng_range[0], rng_range[1] + 1))


def _family(rng, d, n):
    return [complex_gaussian(rng, (d, d)) for _ in range(n)]


def _triple_fields(t):
    return {"q": t.q, "r": t.r, "s": t.s}


def _smena_triple(rng, cfg):
    """Triple with ``q > 1`` and finite `r`, as the gamma forms need.

    Unless `q` is pinned, draws with ``2q/(q-1) > GAMMA_MAX_EXPONENT`` are
    rejected so that the substituted weights stay representable.
    """
    for _ in range(1000):
        t = sample_triple(rng, cfg.q, cfg.r, cfg.s)
        bounded = cfg.q is not None or 2.0 * t.q <= GAMMA_MAX_EXPONENT * (t.q - 1.0)
        if t.q > 1 and math.isfinite(t.r) and bounded:
            return t
        if cfg.q is not None and cfg.r is not None:
            break
    raise ConfigInvalid("the gamma forms need q > 1 and r < inf")


def sample_instance(checker_id, seed, settings=SamplerSettings()):
    """Deterministic instance for `checker_id` drawn from `seed`.

    Returns a dict of arrays and scalars; :func:`evaluate` consumes it.
    """
    if checker_id not in CHECKER_IDS:
        raise ConfigInvalid(f"unknown checker {checker_id!r}")
    group, _, form = checker_id.partition(":")
    rng = np.random.default_rng(int(seed))
    cfg = settings
    dA, dB = _ints(rng, cfg.dim), _ints(rng, cfg.dim)
    n = _ints(rng, cfg.length)
    inst = {}
    if group == "check_double_monotonicity":
        A = complex_gaussian(rng, (dA, dA))
        B = complex_gaussian(rng, (dB, dB))
        Q1 = random_psd(rng, dA, int(rng.integers(0, dA + 1)))
        Q2 = random_psd(rng, dB, int(rng.integers(0, dB + 1)))
        C = haar_unitary(rng, dA) @ frac_power(A.conj().T @ A + Q1, 0.5)
        D = frac_power(B @ B.conj().T + Q2, 0.5) @ haar_unitary(rng, dB)
        s = cfg.s if cfg.s is not None else MONOTONICITY_INDICES[int(rng.integers(5))]
        inst = {"A": A, "B": B, "C": C, "D": D, "X": _sample_X(rng, dA, dB), "s": s}
    elif group == "check_theorem_2_6":
        inst = {
            "A": _family(rng, dA, n),
            "B": _family(rng, dB, n),
            "C": _family(rng, dA, n),
            "D": _family(rng, dB, n),
            "lam": log_uniform(rng, *WEIGHT_RANGE, n),
            "w": log_uniform(rng, *WEIGHT_RANGE, n),
            "X": _sample_X(rng, dA, dB),
        }
        for k in ("eps", "zeta", "eta", "theta"):
            inst[k] = float(log_uniform(rng, *SHIFT_RANGE))
    elif group in ("check_theorem_3_1", "check_corollary_3_3") or (
        group == "check_corollary_3_4" and form.startswith("alto")
    ):
        inst = {
            "A": _family(rng, dA, n),
            "lam": log_uniform(rng, *WEIGHT_RANGE, n),
            "B": _family(rng, dB, n),
            "w": log_uniform(rng, *WEIGHT_RANGE, n),
            "X": _sample_X(rng, dA, dB),
        }
        if group == "check_corollary_3_3":
            inst["s"] = _corollary_3_3_index(rng, form, cfg.s)
        else:
            inst.update(_triple_fields(sample_triple(rng, cfg.q, cfg.r, cfg.s)))
    elif group == "check_corollary_3_4":
        t = _smena_triple(rng, cfg)
        inst = {
            "A": _family(rng, dA, n),
            "lam": rng.uniform(*GAMMA_RANGE, n),
            "B": _family(rng, dB, n),
            "w": rng.uniform(*GAMMA_RANGE, n),
            "X": _sample_X(rng, dA, dB),
            **_triple_fields(t),
        }
    elif group == "check_theorem_4_1":
        L = min(n, dA, dB)
        if form.startswith("gamma"):
            t = _smena_triple(rng, cfg)
            a, b = rng.uniform(*GAMMA_RANGE, L), rng.uniform(*GAMMA_RANGE, L)
        else:
            t = sample_triple(rng, cfg.q, cfg.r, cfg.s)
            a, b = log_uniform(rng, *WEIGHT_RANGE, L), log_uniform(rng, *WEIGHT_RANGE, L)
        inst = {
            "a": a,
            "b": b,
            "e": haar_unitary(rng, dA),
            "f": haar_unitary(rng, dB),
            "X": _sample_X(rng, dA, dB),
            **_triple_fields(t),
        }
    elif group == "check_theorem_4_2":
        N, M = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        C, tc = sample_hypercontraction(rng, dA, 0, N)
        D, td = sample_hypercontraction(rng, dB, 0, M)
        t = sample_triple(rng, cfg.q, cfg.r, cfg.s)
        inst = {"C": C, "D": D, "N": N, "M": M, "length": n, "X": _sample_X(rng, dA, dB)}
        inst.update(_triple_fields(t))
        inst["sampler_tries"] = tc + td
    else:
        N = int(rng.integers(1, 4))
        M = int(rng.integers(1, 4)) if form in ("h5", "h6") else None
        C, tries = sample_hypercontraction(rng, dA, N if M else 0, M if M else N)
        inst = {"C": C, "N": N, "M": M, "length": int(rng.integers(1, 11)), "sampler_tries": tries}
    return inst


def _corollary_3_3_index(rng, case, pinned):
    if pinned is not None:
        return pinned
    if case.startswith("a"):
        u = rng.random()
        return 1.0 if u < 0.05 else 2.0 if u < 0.1 else float(rng.uniform(1, 2))
    return math.inf if rng.random() < P_INFINITE else float(log_uniform(rng, 2.0, 20.0))


# -------------------------------------------------------------- evaluation


def _wf(members, weights):
    return WeightedFamily(tuple(members), weights)


def _triple(inst):
    return SchattenTriple.from_qr(inst["q"], inst["r"])


def evaluate(checker_id, inst, tol=Tolerance(), grid=DEFAULT_SHIFT_GRID):
    """Run `checker_id` on a sampled instance and return its report."""
    group, _, form = checker_id.partition(":")
    if group == "check_double_monotonicity":
        return check_double_monotonicity(
            inst["A"], inst["B"], inst["C"], inst["D"], inst["X"], inst["s"], tol
        )
    if group == "check_theorem_2_6":
        keys = ("A", "B", "C", "D", "lam", "w", "X", "eps", "zeta", "eta", "theta")
        return check_theorem_2_6(form, QuadrupleInstance(**{k: inst[k] for k in keys}), tol)
    if group == "check_theorem_4_1":
        return check_theorem_4_1(
            form, _triple(inst), inst["a"], inst["b"], inst["e"], inst["f"], inst["X"], grid, tol
        )
    if group == "check_theorem_4_2":
        return check_theorem_4_2(
            form,
            inst["C"],
            inst["D"],
            inst["N"],
            inst["M"],
            _triple(inst),
            inst["length"],
            inst["X"],
            grid,
            tol,
        )
    if group == "check_hyper_dominance":
        return check_hyper_dominance(form, inst["C"], inst["N"], inst["M"], inst["length"], tol)
    A = _wf(inst["A"], inst["lam"])
    B = _wf(inst["B"], inst["w"])
    if group == "check_theorem_3_1":
        return check_theorem_3_1(form, _triple(inst), A, B, inst["X"], grid, tol)
    if group == "check_corollary_3_3":
        return check_corollary_3_3(form, inst["s"], A, B, inst["X"], tol)
    return check_corollary_3_4(form, _triple(inst), A, B, inst["X"], grid, tol)


# ---------------------------------------------------------------- running


@dataclass(frozen=True)
class RunConfig:
    """Everything a sweep needs; see :meth:`from_mapping` for the keys."""

    checkers: tuple = CHECKER_IDS
    trials: int = 10
    sampler: SamplerSettings = field(default_factory=SamplerSettings)
    seed: int = 0
    tol: Tolerance = field(default_factory=Tolerance)
    grid: tuple = DEFAULT_SHIFT_GRID
    out: str = None
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "checkers", expand_checkers(self.checkers))
        if int(self.trials) < 1:
            raise ConfigInvalid(f"trials must be >= 1, got {self.trials}")
        if int(self.jobs) < 1:
            raise ConfigInvalid(f"jobs must be >= 1, got {self.jobs}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigInvalid(f"seed must fit in 64 bits, got {self.seed}")
        grid = tuple(float(g) for g in self.grid)
        if not grid or any(not (math.isfinite(g) and g > 0) for g in grid):
            raise ConfigInvalid(f"shift grid must be positive and finite, got {self.grid}")
        if self.tol.rel < 0 or self.tol.abs_ < 0:
            raise ConfigInvalid("tolerances must be non-negative")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "jobs", int(self.jobs))
        object.__setattr__(self, "seed", int(self.seed))

    KEYS = (
        "checker", "trials", "dim", "len", "seed", "s", "q", "r",
        "tol_rel", "tol_abs", "grid", "out", "jobs",
    )  # fmt: skip

    @classmethod
    def from_mapping(cls, m):
        """Build from string-valued keys as found in a config file or on the
        command line: ``checker, trials, dim, len, seed, s, q, r, tol_rel,
        tol_abs, grid, out, jobs``. Missing keys take the defaults."""
        unknown = set(m) - set(cls.KEYS)
        if unknown:
            raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
        d = cls()

        def num(key, conv, default):
            if m.get(key) in (None, ""):
                return default
            try:
                return conv(m[key])
            except (TypeError, ValueError):
                raise ConfigInvalid(f"bad value for {key}: {m[key]!r}") from None

        grid = m.get("grid")
        if isinstance(grid, str):
            try:
                grid = tuple(float(x) for x in grid.replace(",", " ").split())
            except ValueError:
                raise ConfigInvalid(f"bad shift grid {grid!r}") from None
        return cls(
            checkers=m.get("checker") or "all",
            trials=num("trials", int, d.trials),
            sampler=SamplerSettings(
                m.get("dim") or d.sampler.dim,
                m.get("len") or d.sampler.length,
                m.get("s"),
                m.get("q"),
                m.get("r"),
            ),
            seed=num("seed", int, d.seed),
            tol=Tolerance(num("tol_rel", float, d.tol.rel), num("tol_abs", float, d.tol.abs_)),
            grid=grid or d.grid,
            out=m.get("out") or None,
            jobs=num("jobs", int, d.jobs),
        )


def run_trial(checker_id, seed, sampler, tol=Tolerance(), grid=DEFAULT_SHIFT_GRID, trial=None):
    """Sample, evaluate and time one trial; returns its record.

    Errors raised while sampling or checking become failing records with an
    ``error`` field instead of propagating.
    """
    start = time.perf_counter()
    inst = None
    record = {"checker_id": checker_id, "seed": int(seed), "resolved_id": None}
    try:
        resolved = resolve_checker(checker_id, seed)
        inst = sample_instance(resolved, seed, sampler)
        report = evaluate(resolved, inst, tol, grid)
        record.update(report.to_dict())
        record.update(checker_id=checker_id, seed=int(seed), resolved_id=resolved)
    except SamplerExhausted as exc:
        record.update(_error_fields(exc, acceptance_rate=exc.acceptance_rate))
    except Exception as exc:  # noqa: BLE001 - every trial must yield a record
        record.update(_error_fields(exc))
    record["trial"] = trial
    record["wall_ms"] = (time.perf_counter() - start) * 1e3
    record["digest"] = instance_digest(inst) if inst is not None else None
    record["sampler"] = sampler.to_dict()
    record["tolerance"] = {"rel": tol.rel, "abs": tol.abs_}
    record["grid"] = list(grid)
    if not record["pass"] and inst is not None:
        record["instance"] = encode(inst)
    return record


def _error_fields(exc, **extra):
    return {
        "params": {},
        "lhs": None,
        "rhs": None,
        "gap": None,
        "relative_margin": None,
        "pass": False,
        "notes": "",
        "error": f"{type(exc).__name__}: {exc}",
        **extra,
    }


def _task(args):
    return run_trial(*args)


def _tasks(config):
    for cid in config.checkers:
        for i in range(config.trials):
            seed = trial_seed(config.seed, cid, i)
            yield (cid, seed, config.sampler, config.tol, config.grid, i)


@dataclass
class RunSummary:
    records: list
    rows: list

    @property
    def ok(self):
        return all(r["pass"] for r in self.records)

    def table(self):
        head = f"{'checker':44s} {'trials':>6s} {'pass':>6s} {'min margin':>12s} {'max ms':>9s}"
        lines = [head, "-" * len(head)]
        for row in self.rows:
            margin = "n/a" if row["min_margin"] is None else f"{row['min_margin']:.3e}"
            lines.append(
                f"{row['checker_id']:44s} {row['trials']:6d} {row['passed']:6d} "
                f"{margin:>12s} {row['max_wall_ms']:9.2f}"
            )
        failed = sum(not r["pass"] for r in self.records)
        lines.append(f"{len(self.records)} trials, {failed} failed")
        return "\n".join(lines)


def summarize(records, checkers):
    rows = []
    for cid in checkers:
        rs = [r for r in records if r["checker_id"] == cid]
        margins = [r["relative_margin"] for r in rs if r["relative_margin"] is not None]
        rows.append(
            {
                "checker_id": cid,
                "trials": len(rs),
                "passed": sum(r["pass"] for r in rs),
                "min_margin": min(margins) if margins else None,
                "max_wall_ms": max((r["wall_ms"] for r in rs), default=0.0),
            }
        )
    return RunSummary(records, rows)


def run(config, stream=None):
    """Execute every trial of `config`.

    Records are produced in (checker, trial) order whatever the number of
    workers, written as JSON lines to ``config.out`` (if set) and to
    `stream` (a text file object, if given).
    """
    tasks = list(_tasks(config))
    sink = None
    try:
        if config.out:
            try:
                sink = open(config.out, "w", encoding="utf-8")
            except OSError as exc:
                raise IoFailure(f"cannot write {config.out}: {exc}") from exc
        records = []
        if config.jobs > 1:
            with ProcessPoolExecutor(config.jobs) as pool:
                results = pool.map(_task, tasks, chunksize=max(1, len(tasks) // (8 * config.jobs)))
                for rec in results:
                    records.append(_emit(rec, sink, stream))
        else:
            for t in tasks:
                records.append(_emit(_task(t), sink, stream))
    finally:
        if sink is not None:
            sink.close()
    return summarize(records, config.checkers)


def _emit(rec, *outs):
    line = json.dumps(rec, sort_keys=True)
    for out in outs:
        if out is not None:
            out.write(line + "\n")
    return rec


def replay(record, use_instance=True):
    """Re-run a record and return the fresh one.

    With ``use_instance`` and a dumped ``instance`` in `record`, the stored
    matrices are evaluated directly; otherwise the instance is re-sampled
    from the record's seed and sampler settings. Either way the fresh
    ``lhs``/``rhs`` must equal the stored ones bit for bit.
    """
    tol = Tolerance(record["tolerance"]["rel"], record["tolerance"]["abs"])
    grid = tuple(record["grid"])
    sampler = SamplerSettings.from_dict(record["sampler"])
    if use_instance and "instance" in record:
        inst = decode(record["instance"])
        fresh = {key: val for key, val in record.items() if key != "error"}
        try:
            resolved = resolve_checker(record["checker_id"], record["seed"])
            fresh.update(evaluate(resolved, inst, tol, grid).to_dict())
        except Exception as exc:  # noqa: BLE001 - mirror run_trial
            fresh.update(_error_fields(exc))
        fresh.update(checker_id=record["checker_id"], seed=record["seed"])
        return fresh
    return run_trial(record["checker_id"], record["seed"], sampler, tol, grid, record.get("trial"))

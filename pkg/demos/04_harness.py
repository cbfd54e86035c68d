"""Seeded sweeps, JSON-lines records and bit-identical replay.

The same flow is available on the command line as ``schattencs verify`` and
``schattencs replay``. Run with ``python3 demos/04_harness.py``.
"""

# %%
import io
import json

from schattencs.harness import RunConfig, replay, run

config = RunConfig.from_mapping(
    {"checker": "check_theorem_3_1,check_hyper_dominance", "trials": "5", "seed": "42"}
)
stream = io.StringIO()
summary = run(config, stream)
print(summary.table())

# %% each line is one trial; replaying from the seed reproduces it exactly
records = [json.loads(line) for line in stream.getvalue().splitlines()]
first = records[0]
print(json.dumps({k: first[k] for k in ("checker_id", "seed", "lhs", "rhs", "pass")}, indent=1))
fresh = replay(first)
print("replay identical:", (fresh["lhs"], fresh["rhs"]) == (first["lhs"], first["rhs"]))

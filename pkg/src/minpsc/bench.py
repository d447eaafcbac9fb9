"""Benchmark suites: generator specs x seeds x algorithms -> CSV rows.

Suite file (JSON)::

    {
      "instances": [
        {"kind": "tree-plus-g", "params": {"n": 60, "g": 3, "wmax": 9}, "seeds": [1, 2]},
        {"kind": "grid", "params": {"rows": 4, "cols": 4, "weight": "perturbed"}, "seeds": [0]}
      ],
      "algos": ["exact", "cc-det", "kernel+exact"]
    }
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import generators
from .errors import InvalidParams, MinPSCError
from .graph import Instance
from .hardness import margin
from .solvers import ALGORITHMS, run

COLUMNS = ["instance", "n", "m", "g", "c", "algo", "cost", "margin", "time_ms", "seed"]


def generate(kind: str, params: dict, seed: int) -> Instance:
    params = dict(params)
    if kind == "tree-plus-g":
        return generators.tree_plus_g(seed=seed, **params)
    if kind == "grid":
        return generators.grid(seed=seed, **params)
    if kind == "geometric":
        return generators.geometric(seed=seed, **params)
    if kind == "setcover":
        sets = params["sets"]
        if isinstance(sets, str):
            sets = generators.parse_sets(sets)
        return generators.setcover(params["universe"], sets)
    raise InvalidParams(f"unknown generator kind {kind!r}")


@dataclass(frozen=True)
class Job:
    name: str
    kind: str
    params: dict
    seed: int
    algo: str


def load_suite(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def jobs(suite: dict) -> list[Job]:
    algos = suite.get("algos", ["exact"])
    for a in algos:
        if a not in ALGORITHMS:
            raise InvalidParams(f"unknown algorithm {a!r} in suite")
    out = []
    for spec in suite["instances"]:
        kind, params = spec["kind"], spec.get("params", {})
        name = spec.get("name") or ":".join([kind] + [f"{k}={params[k]}" for k in sorted(params)])
        for seed in spec.get("seeds", [0]):
            out += [Job(name, kind, params, seed, a) for a in algos]
    return out


def run_job(job: Job, epsilon: float = 0.01) -> dict:
    row = {"instance": job.name, "algo": job.algo, "seed": job.seed}
    try:
        inst = generate(job.kind, job.params, job.seed)
        row.update(n=inst.n, m=inst.m, g=inst.m - inst.n + 1)
        t0 = time.perf_counter()
        out = run(inst, job.algo, seed=job.seed, epsilon=epsilon)
        elapsed = (time.perf_counter() - t0) * 1000
        row.update(c=out.c, cost=out.solution.total_cost, margin=margin(inst, out.solution),
                   time_ms=f"{elapsed:.3f}")
    except (MinPSCError, ValueError) as exc:
        row.update(cost="FAIL", margin=type(exc).__name__)
    return row


def run_suite(suite: dict, epsilon: float = 0.01) -> list[dict]:
    """Rows in suite order."""
    return [run_job(j, epsilon) for j in jobs(suite)]


def to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()

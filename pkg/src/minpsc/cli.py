"""Command-line interface.

Exit codes: 0 success, 1 other solver error, 2 bad input, 3 size guard exceeded, 4 infeasible selection.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bench, generators, io
from .errors import DisconnectedResult, GuardExceeded, InvalidParams, MinPSCError, ParseError, UncoveredElement
from .graph import cost, is_connected_spanning
from .hardness import margin
from .kernel import kernelize
from .solvers import ALGORITHMS, lower_bounds_for, run

EXIT_ERROR, EXIT_INPUT, EXIT_GUARD, EXIT_INFEASIBLE = 1, 2, 3, 4


class _Out:
    def __init__(self, fmt: str, quiet: bool):
        self.fmt, self.quiet = fmt, quiet

    def emit(self, record: dict, text_lines: list[str]) -> None:
        if self.fmt == "json":
            print(json.dumps(record, sort_keys=True))
        elif not self.quiet:
            print("\n".join(text_lines))


def _load(path: str):
    try:
        return io.read_instance(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_solve(args, out: _Out) -> int:
    inst, ell = _load(args.instance)
    bounds = lower_bounds_for(inst, ell) if inst.n >= 2 else [0]
    algo = "cc-det" if args.algo == "cc" and args.deterministic else args.algo
    t0 = time.perf_counter()
    res = run(inst, algo, ell=bounds, seed=args.seed, epsilon=args.epsilon, max_repetitions=args.max_repetitions)
    elapsed = (time.perf_counter() - t0) * 1000
    sol = res.solution
    if args.out:
        Path(args.out).write_text(io.render_solution(sol.edges), encoding="utf-8")
    record = {
        "algo": res.algo, "total_cost": sol.total_cost, "margin": margin(inst, sol), "c": res.c, "g": res.g,
        "time_ms": round(elapsed, 3), "edges": [list(e) for e in sol.edges],
        "per_vertex_cost": list(sol.per_vertex_cost), **res.notes,
    }
    lines = [f"algo        {res.algo}", f"total cost  {sol.total_cost}", f"margin      {record['margin']}",
             f"c           {res.c}", f"g           {res.g}", f"time        {elapsed:.3f} ms"]
    if res.notes.get("truncated"):
        lines.append("warning     repetitions were capped; the error bound no longer holds")
    lines.append("edges")
    lines += [f"  {u} {v}" for u, v in sol.edges]
    lines.append("per-vertex cost " + " ".join(map(str, sol.per_vertex_cost)))
    out.emit(record, lines)
    return 0


def cmd_generate(args, out: _Out) -> int:
    if args.kind == "grid":
        inst = generators.grid(args.rows, args.cols, args.defect, args.weight, args.w, args.wmax, seed=args.seed)
    elif args.kind == "tree-plus-g":
        inst = generators.tree_plus_g(args.n, args.g, args.wmax, seed=args.seed)
    elif args.kind == "geometric":
        inst = generators.geometric(args.n, args.radius, args.alpha, seed=args.seed)
    else:
        inst = generators.setcover(args.universe, generators.parse_sets(args.sets))
    text = io.render(inst, comments=[f"generated by minpsc generate {args.kind} seed={args.seed}"])
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.emit({"n": inst.n, "m": inst.m, "path": args.out}, [f"wrote {args.out} (n={inst.n}, m={inst.m})"])
    else:
        sys.stdout.write(text)
    return 0


def cmd_kernelize(args, out: _Out) -> int:
    inst, _ = _load(args.instance)
    t0 = time.perf_counter()
    k = kernelize(inst)
    elapsed = (time.perf_counter() - t0) * 1000
    text = io.render(k.reduced, comments=[f"d {k.d}"])
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    record = {"n": k.reduced.n, "m": k.reduced.m, "d": k.d, "g": k.g, "cycle": k.cycle,
              "vertex_bound": k.vertex_bound, "edge_bound": k.edge_bound, "time_ms": round(elapsed, 3)}
    lines = [] if args.out else [text.rstrip("\n")]
    lines.append(f"d {k.d}")
    if args.stats:
        lines += [f"n' {k.reduced.n}  m' {k.reduced.m}  g {k.g}",
                  f"bound slack  vertices {k.vertex_bound - k.reduced.n}  edges {k.edge_bound - k.reduced.m}"
                  + ("  (cycle input, bound not applicable)" if k.cycle else "")]
    out.emit(record, lines)
    return 0


def cmd_verify(args, out: _Out) -> int:
    inst, _ = _load(args.instance)
    try:
        edges = io.parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {args.solution}: {exc.strerror}") from exc
    try:
        feasible = is_connected_spanning(inst, edges)
    except ValueError as exc:
        out.emit({"feasible": False, "reason": str(exc)}, [f"INFEASIBLE: {exc}"])
        return EXIT_INFEASIBLE
    if not feasible:
        out.emit({"feasible": False, "reason": "not connected"}, ["INFEASIBLE: edges do not connect all vertices"])
        return EXIT_INFEASIBLE
    sol = cost(inst, edges)
    m = margin(inst, sol)
    out.emit({"feasible": True, "total_cost": sol.total_cost, "margin": m},
             [f"OK total cost {sol.total_cost} margin {m}"])
    return 0


def cmd_bench(args, out: _Out) -> int:
    rows = bench.run_suite(bench.load_suite(args.suite), epsilon=args.epsilon)
    text = bench.to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if rows and all(r.get("cost") == "FAIL" for r in rows):
        return EXIT_ERROR
    return 0


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without defaults so they never mask the top-level value
        d = (lambda x: argparse.SUPPRESS) if suppress else (lambda x: x)
        q = argparse.ArgumentParser(add_help=False)
        q.add_argument("--seed", type=int, default=d(0), help="RNG seed (default 0)")
        q.add_argument("--format", choices=["text", "json"], default=d("text"))
        q.add_argument("--quiet", action="store_true", default=d(False), help="suppress text reports")
        return q

    common = global_flags(True)
    p = argparse.ArgumentParser(prog="minpsc", description="Min-power symmetric connectivity solvers.",
                                parents=[global_flags(False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--algo", choices=ALGORITHMS, default="auto")
    s.add_argument("--epsilon", type=float, default=0.01)
    s.add_argument("--deterministic", action="store_true", help="exhaustive colourings for --algo cc")
    s.add_argument("--max-repetitions", type=int, default=None)
    s.add_argument("--out", help="write the chosen edges as a solution file")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", parents=[common], help="write a random instance")
    gsub = g.add_subparsers(dest="kind", required=True)
    gg = gsub.add_parser("grid", parents=[common])
    gg.add_argument("--rows", type=int, required=True)
    gg.add_argument("--cols", type=int, required=True)
    gg.add_argument("--defect", type=float, default=0.0)
    gg.add_argument("--weight", choices=["uniform", "perturbed"], default="uniform")
    gg.add_argument("--w", type=int, default=1)
    gg.add_argument("--wmax", type=int, default=10)
    gt = gsub.add_parser("tree-plus-g", parents=[common])
    gt.add_argument("--n", type=int, required=True)
    gt.add_argument("--g", type=int, required=True)
    gt.add_argument("--wmax", type=int, default=10)
    ge = gsub.add_parser("geometric", parents=[common])
    ge.add_argument("--n", type=int, required=True)
    ge.add_argument("--radius", type=float, required=True)
    ge.add_argument("--alpha", type=float, default=2.0)
    gs = gsub.add_parser("setcover", parents=[common])
    gs.add_argument("--universe", type=int, required=True)
    gs.add_argument("--sets", required=True, help='e.g. "0,1;1,2"')
    for q in (gg, gt, ge, gs):
        q.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    k = sub.add_parser("kernelize", parents=[common], help="reduce an instance")
    k.add_argument("instance")
    k.add_argument("--out")
    k.add_argument("--stats", action="store_true")
    k.set_defaults(func=cmd_kernelize)

    v = sub.add_parser("verify", parents=[common], help="check a solution file")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common], help="run a benchmark suite, print CSV")
    b.add_argument("suite")
    b.add_argument("--out")
    b.add_argument("--epsilon", type=float, default=0.01)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.format, args.quiet)
    try:
        return args.func(args, out)
    except (ParseError, InvalidParams, UncoveredElement) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (DisconnectedResult, MinPSCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

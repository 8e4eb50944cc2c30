"""Command-line interface: route, verify, oracle, bench, info.

Exit codes: 0 success, 1 verification or benchmark failure, 2 usage error,
3 I/O or resource error.  All randomness flows from --seed flags; repeated
invocations with identical flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .engine import (
    RouteProblem,
    load_trace,
    save_trace,
    validate_trace,
)
from .errors import NotRoutedError, ResourceLimitError, TraceInvalidError
from .mesh_router import mesh_bound, route_mesh, route_path
from .oracle import exact_routing_number, exact_rt
from .permutation import derive_seed, parse_perm, random_permutation
from .pyramid_router import route_pyramid, step_bound
from .topology import PyramidSpec, build_multigrid, parse_graph_spec, parse_label, phi

USAGE_ERROR = 2
IO_ERROR = 3


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_route(args) -> int:
    try:
        graph = parse_graph_spec(args.graph)
        pi = parse_perm(args.perm, graph.n)
        kind, params = parse_label(args.graph)
        if args.algo in ("path", "oddeven"):
            if kind != "path":
                raise ValueError(f"algo {args.algo} needs a path:... graph, got {kind}")
            trace = route_path(graph.n, pi)
            bound = graph.n
        elif args.algo == "mesh":
            if kind != "mesh":
                raise ValueError(f"algo mesh needs a mesh:... graph, got {kind}")
            trace = route_mesh(params["side"], params["d"], pi)
            bound = mesh_bound(params["side"], params["d"])
        elif args.algo == "pyramid":
            if kind not in ("pyramid", "multigrid"):
                raise ValueError(f"algo pyramid needs a pyramid or multigrid graph, got {kind}")
            spec = PyramidSpec(params["m"], params["d"])
            multigrid = graph if kind == "multigrid" else build_multigrid(spec)
            trace = route_pyramid(RouteProblem(multigrid, pi))
            bound = step_bound(spec)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown algo {args.algo}")
    except ResourceLimitError as exc:
        return _fail(str(exc), IO_ERROR)
    except ValueError as exc:
        return _fail(str(exc), USAGE_ERROR)

    trace = dataclasses.replace(trace, graph=graph.label, perm=tuple(pi), algo=args.algo)
    try:
        steps = validate_trace(RouteProblem(graph, pi), trace)
    except (TraceInvalidError, NotRoutedError) as exc:
        return _fail(f"router produced an invalid trace: {exc}", 1)
    if args.out:
        try:
            save_trace(args.out, trace)
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc}", IO_ERROR)
    print(f"steps={steps} bound={bound}")
    return 0


def cmd_verify(args) -> int:
    try:
        trace = load_trace(args.trace)
        graph = parse_graph_spec(trace.graph)
        problem = RouteProblem(graph, trace.perm)
    except (OSError, json.JSONDecodeError, ValueError, ResourceLimitError) as exc:
        return _fail(f"cannot read trace: {exc}", IO_ERROR)
    try:
        steps = validate_trace(problem, trace)
    except (TraceInvalidError, NotRoutedError) as exc:
        return _fail(f"invalid trace: {exc}", 1)
    print(f"steps={steps}")
    return 0


def cmd_oracle(args) -> int:
    try:
        graph = parse_graph_spec(args.graph)
        if args.perm is not None:
            pi = parse_perm(args.perm, graph.n)
    except ValueError as exc:
        return _fail(str(exc), USAGE_ERROR)
    except ResourceLimitError as exc:
        return _fail(str(exc), IO_ERROR)
    try:
        if args.perm is not None:
            print(f"rt={exact_rt(RouteProblem(graph, pi))}")
        else:
            print(f"routing_number={exact_routing_number(graph)}")
    except (ResourceLimitError, ValueError) as exc:
        return _fail(str(exc), IO_ERROR)
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    return lo, hi


def cmd_bench(args) -> int:
    try:
        m_lo, m_hi = _parse_range(args.m)
        d_lo, d_hi = _parse_range(args.d)
        if args.trials < 1:
            raise ValueError("--trials must be >= 1")
    except ValueError as exc:
        return _fail(str(exc), USAGE_ERROR)

    rows = ["m,d,N,trial,steps,bound,ratio"]
    max_ratio: dict[int, float] = {}
    for m in range(m_lo, m_hi + 1):
        for d in range(d_lo, d_hi + 1):
            spec = PyramidSpec(m, d)
            try:
                multigrid = build_multigrid(spec)
            except ResourceLimitError as exc:
                return _fail(str(exc), IO_ERROR)
            n = spec.vertex_count
            bound = step_bound(spec)
            denom = d * n ** (1.0 / d)
            for trial in range(args.trials):
                pi = random_permutation(n, derive_seed(args.seed, m, d, trial))
                problem = RouteProblem(multigrid, pi)
                trace = route_pyramid(problem)
                try:
                    steps = validate_trace(problem, trace)
                except (TraceInvalidError, NotRoutedError) as exc:
                    return _fail(f"invalid trace for m={m} d={d} trial={trial}: {exc}", 1)
                if steps > bound:
                    return _fail(
                        f"steps {steps} exceed bound {bound} for m={m} d={d} trial={trial}", 1)
                ratio = steps / denom
                max_ratio[d] = max(max_ratio.get(d, 0.0), ratio)
                rows.append(f"{m},{d},{n},{trial},{steps},{bound},{ratio:.6f}")

    csv_text = "\n".join(rows) + "\n"
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
        except OSError as exc:
            return _fail(f"cannot write {args.csv}: {exc}", IO_ERROR)
    else:
        sys.stdout.write(csv_text)
    for d in sorted(max_ratio):
        print(f"# max ratio d={d}: {max_ratio[d]:.6f}")
    return 0


def cmd_info(args) -> int:
    try:
        kind, params = parse_label(args.graph)
        graph = parse_graph_spec(args.graph)
    except ValueError as exc:
        return _fail(str(exc), USAGE_ERROR)
    except ResourceLimitError as exc:
        return _fail(str(exc), IO_ERROR)
    if kind in ("pyramid", "multigrid"):
        spec = PyramidSpec(params["m"], params["d"])
        print(f"N={spec.vertex_count}")
        for level in range(spec.m):
            print(f"n_{level}={spec.level_size(level)}")
        for k in range(1, spec.m):
            print(f"phi_{k}={phi(spec, k)}")
    else:
        print(f"vertices={graph.n}")
        print(f"edges={len(graph.edges)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchroute",
        description="Permutation routing via matchings on pyramids, multi-grids, "
                    "meshes, and paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    route = sub.add_parser("route", help="route a permutation and print steps/bound")
    route.add_argument("--graph", required=True, help="graph spec, e.g. multigrid:m=3,d=2")
    route.add_argument("--perm", required=True,
                       help="permutation: id | rev | seed:<u64> | cycles:(..) | array:[..]")
    route.add_argument("--algo", required=True,
                       choices=("pyramid", "mesh", "path", "oddeven"))
    route.add_argument("--out", help="write the trace JSON here")
    route.set_defaults(func=cmd_route)

    verify = sub.add_parser("verify", help="replay a trace file and check it routes")
    verify.add_argument("trace", help="trace JSON produced by route")
    verify.set_defaults(func=cmd_verify)

    oracle = sub.add_parser("oracle", help="exact routing time via BFS (tiny graphs)")
    oracle.add_argument("--graph", required=True)
    oracle.add_argument("--perm", help="omit to compute the routing number")
    oracle.set_defaults(func=cmd_oracle)

    bench = sub.add_parser("bench", help="seeded random sweeps on multi-grids")
    bench.add_argument("--m", required=True, help="level range, e.g. 2..6 or 3")
    bench.add_argument("--d", required=True, help="dimension range, e.g. 1..2")
    bench.add_argument("--trials", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--csv", help="write rows to this file instead of stdout")
    bench.set_defaults(func=cmd_bench)

    info = sub.add_parser("info", help="print sizes (N, n_l, phi_k) for a graph spec")
    info.add_argument("--graph", required=True)
    info.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

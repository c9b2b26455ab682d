"""medialmu command line."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import gf2
from . import plane_graph as pg
from .coloring import TooMany, iter_conservative, laplacian_mod2
from .flat_trace import count_components, simplify
from .harness import METHODS, iter_default_instances, mu_report, parse_families, random_instances, run_check, single_method
from .medial import medial
from .plane_graph import NonPlanar, PlaneGraph, PlaneGraphError
from .tutte import DEFAULT_MAX_EDGES, EdgeBudgetExceeded

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True)


def load_graph(args: argparse.Namespace) -> tuple[str, PlaneGraph]:
    if args.gen:
        family, *raw = args.gen
        try:
            nums = [int(x) for x in raw]
        except ValueError as exc:
            raise InputError(f"generator arguments must be integers: {raw}") from exc
        if family == "random_grid_subgraph" and len(nums) == 2:
            nums.append(args.seed)
        try:
            return " ".join(args.gen), pg.generate(family, *nums)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    if args.file is None:
        raise InputError("give a .pg file, '-' for standard input, or --gen FAMILY ARGS")
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
    try:
        g = pg.parse_plane_graph(text)
        pg.check_planar(g)
    except (PlaneGraphError, NonPlanar) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    return args.file, g


def cmd_mu(args: argparse.Namespace) -> int:
    name, g = load_graph(args)
    if args.method == "all":
        report = mu_report(name, g, args.max_edges)
        if args.json:
            print(_dump(report.to_dict(args.timings)))
        else:
            print(report.mu_trace if report.agree else " ".join(map(str, report.values())))
        return EXIT_OK if report.agree else EXIT_DISAGREE
    try:
        value = single_method(args.method, g, args.max_edges)
    except EdgeBudgetExceeded as exc:
        raise InputError(str(exc)) from exc
    if value is None:
        raise InputError("conservative colourings exceed the enumeration cap")
    print(_dump({"instance": name, "method": args.method, "mu": value}) if args.json else value)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        if args.families:
            instances = parse_families(args.families) + random_instances(args.random, args.seed)
        else:
            instances = list(iter_default_instances(args.seed, args.random))
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    def progress(rep):
        if args.json:
            print(_dump(rep.to_dict(args.timings)))
        else:
            mus = " ".join("-" if v is None else str(v) for v in (
                rep.mu_trace, rep.mu_nullity, rep.mu_regions, rep.mu_coloring, rep.mu_tutte))
            print(f"{'ok ' if rep.agree else 'BAD'} {rep.instance}: {mus}")

    result = run_check(instances, args.max_edges, progress)
    bad_pairs = [(a, b) for a, b, ok in result.embedding_pairs if not ok]
    summary = {
        "instances": len(result.reports),
        "embedding_pairs": len(result.embedding_pairs),
        "disagreements": sum(not r.agree for r in result.reports),
        "embedding_mismatches": len(bad_pairs),
        "pass": result.ok,
    }
    print(_dump({"summary": summary}) if args.json else
          f"{'PASS' if result.ok else 'FAIL'}: {summary['instances']} reports, "
          f"{summary['embedding_pairs']} embedding pairs, {summary['disagreements']} disagreements, "
          f"{summary['embedding_mismatches']} embedding mismatches")
    return EXIT_OK if result.ok else EXIT_DISAGREE


def cmd_colorings(args: argparse.Namespace) -> int:
    _, g = load_graph(args)
    try:
        for colors in iter_conservative(g, args.cap):
            print("".join(map(str, colors)))
    except TooMany as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_simplify(args: argparse.Namespace) -> int:
    name, g = load_graph(args)
    f = medial(g)
    budget = args.budget if args.budget is not None else 10 * max(1, f.crossing_count)
    res = simplify(f, budget)
    if args.log:
        print(_dump([m.to_dict() for m in res.moves]))
    else:
        out = {
            "instance": name,
            "complete": res.complete,
            "moves": len(res.moves),
            "crossings": res.flat.crossing_count,
            "free_circles": res.flat.free_circles,
            "mu_trace": count_components(f),
        }
        print(_dump(out) if args.json else
              f"{name}: {len(res.moves)} moves, {res.flat.crossing_count} crossings left, "
              f"{res.flat.free_circles} free circles")
    return EXIT_OK if res.complete else EXIT_DISAGREE


def cmd_info(args: argparse.Namespace) -> int:
    name, g = load_graph(args)
    f = medial(g)
    if args.json:
        print(_dump(f.to_dict()))
    else:
        print(f"{name}: {g.vertex_count} vertices, {g.edge_count} edges, "
              f"{g.component_count} components, {len(pg.faces(g))} faces")
        print(f"medial: {f.crossing_count} crossings, {f.free_circles} free circles, "
              f"{f.region_count} regions")
    return EXIT_OK


def bench_rows(sizes: Sequence[int], repeat: int, backends: Sequence[str]) -> list[dict]:
    rows = []
    for n in sizes:
        g = pg.grid(n, n)
        for backend in backends:
            for _ in range(repeat):
                t0 = time.perf_counter()
                lap = laplacian_mod2(g)
                t1 = time.perf_counter()
                value = gf2.nullity(lap, backend)
                t2 = time.perf_counter()
                rows.append({
                    "n": n,
                    "backend": backend,
                    "build_ms": round(1000 * (t1 - t0), 3),
                    "elim_ms": round(1000 * (t2 - t1), 3),
                    "nullity": value,
                })
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(s) for s in args.grids.split(",") if s]
    except ValueError as exc:
        raise InputError(f"bad --grids {args.grids!r}") from exc
    if any(n < 1 for n in sizes):
        raise InputError("grid sizes must be positive")
    if args.backend == "both":
        backends = sorted(gf2.KERNELS)
    elif args.backend in gf2.KERNELS:
        backends = [args.backend]
    else:
        raise InputError(f"backend {args.backend!r} unavailable; have {sorted(gf2.KERNELS)}")
    for row in bench_rows(sizes, args.repeat, backends):
        print(_dump(row))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    _, g = load_graph(args)
    text = pg.serialize_plane_graph(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help=".pg file, or - for standard input")
    p.add_argument("--gen", nargs="+", metavar=("FAMILY", "ARGS"),
                   help=f"generate instead of reading; families: {', '.join(pg.FAMILIES)}")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="medialmu", description="Component number of medial flats.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="compute mu")
    _input_args(p)
    p.add_argument("--method", choices=(*METHODS, "all"), default="trace")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="include per-method times in JSON")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("check", help="cross-validate all methods over a family sweep")
    p.add_argument("--families", help="e.g. cycles:2..12,grids:2x2..5x5,theta:2..6,complete4")
    p.add_argument("--random", type=int, default=0, help="random grid subgraphs to add")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("colorings", help="list conservative colourings as 0/1 strings")
    _input_args(p)
    p.add_argument("--cap", type=int, default=20, help="refuse nullity above this")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("simplify", help="reduce the medial flat to free circles")
    _input_args(p)
    p.add_argument("--budget", type=int, help="move budget (default 10 per crossing)")
    p.add_argument("--log", action="store_true", help="print the move list as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("info", help="describe the graph and its medial flat")
    _input_args(p)
    p.add_argument("--json", action="store_true", help="print the flat as JSON")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("bench", help="time mod-2 Laplacian nullity on square grids")
    p.add_argument("--grids", default="10,50,100")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--backend", default=gf2.BACKEND, help="compiled, python or both")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a generated graph in .pg format")
    p.add_argument("family")
    p.add_argument("args", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen, file=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        args.gen = [args.family, *args.args]
    try:
        return args.func(args)
    except InputError as exc:
        print(f"medialmu: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 for a positive result (solvable, caught, finite), 1 for a
negative game result (unsolvable, escape), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from collections import Counter
from pathlib import Path

from . import characterize, engine, strategy
from .generate import random_tree
from .graph import Palace, PalaceError, canonical_form, parse_palace, serialize_palace, to_dot
from .walks import ProbeSequence, UnknownVertex

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def input_digest(g: Palace) -> str:
    if g.is_tree():
        body = "tree:" + canonical_form(g)
    else:
        body = "graph:" + ";".join(f"{u},{v}" for u, v in g.edges())
    return hashlib.sha256(body.encode()).hexdigest()


def _load(path: str) -> Palace:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        return parse_palace(text)
    except PalaceError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, report: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text)


def _report(command: str, g: Palace, started: float, **payload) -> dict:
    return {"command": command, "input_digest": input_digest(g),
            **payload, "timing": round(time.perf_counter() - started, 6)}


def cmd_check(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    verdict = characterize.is_solvable(g)
    report = _report("check", g, started, result=verdict.kind, **{
        k: v for k, v in verdict.to_json().items() if k != "verdict"})
    lines = [verdict.kind]
    if verdict.cycle:
        lines.append("cycle: " + " ".join(verdict.cycle))
    if verdict.spider:
        lines.append(f"center: {verdict.spider.center}")
        lines += ["branch: " + " ".join(b) for b in verdict.spider.branches]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if verdict.solvable else EXIT_NEGATIVE


def _unsolvable(args, command, g, started, exc) -> int:
    report = _report(command, g, started, result=exc.verdict.kind)
    _emit(args, report, f"unsolvable: {exc.verdict.kind}")
    return EXIT_NEGATIVE


def cmd_strategy(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    try:
        if len(g) <= 2:
            probes = ProbeSequence(g.vertices[:1] * len(g))
            m = len(g)
        else:
            probes = strategy.linear_strategy(g)
            m = characterize.reduce(g).m
    except strategy.Unsolvable as exc:
        return _unsolvable(args, "strategy", g, started, exc)
    report = _report("strategy", g, started, result="linear_strategy", days=probes.days,
                     probes=list(probes.probes), reduced_vertices=m)
    claim = f"n = 2m - 4 = 2*{m} - 4 = {probes.days}" if len(g) > 2 else f"n = {probes.days}"
    text = ",".join(probes.probes) + f"\ndays: {probes.days}\n{claim}"
    _emit(args, report, text)
    return EXIT_OK


def _read_probes(args, g: Palace) -> ProbeSequence:
    if args.probes_file:
        try:
            probes = ProbeSequence.from_text(Path(args.probes_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(str(exc)) from exc
    elif args.probes is not None:
        probes = ProbeSequence(p for p in args.probes.replace(",", " ").split())
    else:
        raise InputError("give --probes or --probes-file")
    try:
        probes.check(g)
    except UnknownVertex as exc:
        raise InputError(str(exc)) from exc
    return probes


def cmd_verify(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    probes = _read_probes(args, g)
    result = engine.verify_strategy(g, probes)
    if result.caught:
        report = _report("verify", g, started, result="caught", days=result.day,
                         probes=list(probes.probes))
        _emit(args, report, f"caught by day {result.day}")
        return EXIT_OK
    report = _report("verify", g, started, result="escape", probes=list(probes.probes),
                     witness=result.walk.to_json())
    _emit(args, report, "escape\n" + result.walk.to_text().rstrip("\n"))
    return EXIT_NEGATIVE


def cmd_solve(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    try:
        result = engine.min_days_exact(g, max_days=args.max_days, dominance=not args.no_dominance)
    except engine.CapExceeded as exc:
        raise InputError(f"CapExceeded: {exc}") from exc
    if not result.solvable:
        report = _report("solve", g, started, result="unsolvable", states=result.states)
        _emit(args, report, "unsolvable")
        return EXIT_NEGATIVE
    report = _report("solve", g, started, result="finite", days=result.days,
                     probes=list(result.witness.probes), states=result.states)
    _emit(args, report, f"{result.days}\n" + ",".join(result.witness.probes))
    return EXIT_OK


def cmd_reduce(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    rep = characterize.reduce(g)
    report = _report("reduce", g, started, result="reduced", vertices=len(g), m=rep.m,
                     removed=[list(pair) for pair in rep.removed],
                     edges=[list(e) for e in rep.result.edges()])
    text = (f"removed {len(rep.removed)} leaves: "
            + " ".join(f"{leaf}(at {nbr})" for leaf, nbr in rep.removed)
            + f"\nm = {rep.m}\n" + serialize_palace(rep.result).rstrip("\n"))
    _emit(args, report, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    started = time.perf_counter()
    g = _load(args.file)
    try:
        days = strategy.optimal_length(g)
    except strategy.Unsolvable as exc:
        return _unsolvable(args, "enumerate", g, started, exc)
    try:
        found = engine.enumerate_optimal(g, days)
    except (engine.BudgetExceeded, engine.CapExceeded) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from exc
    leaves = set(g.leaves()) if len(g) > 2 else set()
    leaf_free = all(not leaves & set(s.probes) for s in found)
    multisets = {tuple(sorted(Counter(s.probes).items())) for s in found}
    linear = sum(strategy.is_linear_strategy(g, s) for s in found)
    report = _report("enumerate", g, started, result="enumerated", days=days,
                     count=len(found), sequences=[list(s.probes) for s in found],
                     leaf_free=leaf_free, single_multiset=len(multisets) == 1,
                     linear_count=linear)
    text = "\n".join([
        f"optimal days: {days}",
        f"optimal sequences: {len(found)}",
        f"no optimal sequence probes a leaf: {str(leaf_free).lower()}",
        f"all share one probe multiset: {str(len(multisets) == 1).lower()}",
        f"linear strategies among them: {linear}/{len(found)}",
    ] + [",".join(s.probes) for s in found])
    _emit(args, report, text)
    return EXIT_OK


def cmd_random(args) -> int:
    if args.vertices < 1:
        raise InputError("--vertices must be positive")
    g = random_tree(args.vertices, args.seed)
    text = f"# prufer tree, vertices={args.vertices} seed={args.seed}\n" + serialize_palace(g)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InputError(f"{corpus} is not a directory")
    rows = []
    for path in sorted(corpus.glob("*.txt")):
        g = _load(str(path))
        t0 = time.perf_counter()
        try:
            closed = strategy.optimal_length(g)
        except strategy.Unsolvable:
            closed = None
        t1 = time.perf_counter()
        row = {"file": path.name, "vertices": len(g), "closed_form": closed,
               "closed_ms": round((t1 - t0) * 1e3, 3), "exact": None, "exact_ms": None,
               "agree": None}
        if len(g) <= engine.EXACT_VERTEX_CAP:
            row["exact"] = engine.min_days_exact(g).days
            row["exact_ms"] = round((time.perf_counter() - t1) * 1e3, 3)
            row["agree"] = row["exact"] == closed
        rows.append(row)
    if args.format == "json":
        print(json.dumps({"command": "bench", "rows": rows}, indent=2, sort_keys=True))
    else:
        print(f"{'file':<24}{'n':>4}{'closed':>8}{'exact':>8}{'closed_ms':>11}{'exact_ms':>11}  agree")
        for r in rows:
            print(f"{r['file']:<24}{r['vertices']:>4}{str(r['closed_form']):>8}{str(r['exact']):>8}"
                  f"{r['closed_ms']:>11}{str(r['exact_ms']):>11}  {r['agree']}")
    return EXIT_OK if all(r["agree"] is not False for r in rows) else EXIT_NEGATIVE


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_load(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="palace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, file=True):
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("file", help="edge-list palace file, or - for stdin")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    command("check", cmd_check, "decide solvability and print a witness")
    command("strategy", cmd_strategy, "print the linear strategy")
    p = command("verify", cmd_verify, "check a probe sequence against every princess")
    p.add_argument("--probes", help="comma- or space-separated vertex labels")
    p.add_argument("--probes-file", help="file with one label per line")
    p = command("solve", cmd_solve, "exact minimum days by subset search")
    p.add_argument("--max-days", type=int)
    p.add_argument("--no-dominance", action="store_true", help="disable subset dominance pruning")
    command("reduce", cmd_reduce, "strip removable leaves")
    command("enumerate", cmd_enumerate, "list every optimal probe sequence")
    p = command("random", cmd_random, "random tree from a seeded Prüfer sequence", file=False)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p = command("bench", cmd_bench, "closed form vs exact solver over a corpus", file=False)
    p.add_argument("--corpus", required=True)
    command("dot", cmd_dot, "export as DOT")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

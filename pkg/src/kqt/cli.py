"""``kqt`` command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from collections.abc import Sequence
from pathlib import Path

from .digraph import Digraph, INFINITY, diameter, from_edge_list, is_strong, to_dot, to_edge_list
from .engine import GenerationFailure, GenerationStats, OUTSIDE_MODES, find_violation, generate_frame_instance
from .errors import HypothesisFailure, KqtError, ParseError, StructuralViolation, UsageError
from .structure import BIPARTITE, classify_all, find_frame, witness_path
from .structure.report import fmt_path
from .verifier import run_converse_suite, run_lemma6_suite, run_theorem2_scan, run_theorem3_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# generate retries with seed, seed+1, ... up to this many attempts
GENERATE_RETRIES = 20

SUITES = ("theorem3", "theorem2", "converse", "lemma6")


def _err(msg: str) -> None:
    print(f"kqt: {msg}", file=sys.stderr)


def _load(path: str) -> Digraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return from_edge_list(text)


def _fmt_set(vertices) -> str:
    return "{" + ",".join(map(str, sorted(vertices))) + "}"


def _pick_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    seed = secrets.randbits(32)
    print(f"seed: {seed}")
    return seed


def cmd_check(args: argparse.Namespace) -> int:
    d = _load(args.file)
    strong = is_strong(d)
    diam = diameter(d) if d.n else INFINITY
    violation = find_violation(d, args.k)
    print(f"vertices: {d.n}")
    print(f"arcs: {d.arc_count()}")
    print(f"strong: {'yes' if strong else 'no'}")
    print(f"diameter: {'infinity' if diam is INFINITY else diam}")
    print(f"k-quasi-transitive: {'yes' if violation is None else 'no'} (k={args.k})")
    if violation is not None:
        print(f"violation: {violation}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    d = _load(args.file)
    try:
        c = classify_all(d, args.k, witnesses=True, strict=False)
    except HypothesisFailure as exc:
        print(str(exc))
        return EXIT_USAGE
    frame = c.frame
    print(f"path: {fmt_path(frame.path)}")
    if c.frame_class.kind == BIPARTITE and c.frame_class.same_bipartition(frame.odd_class, frame.even_class):
        print(f"frame: {BIPARTITE} (O|E)")
    else:
        print(f"frame: {c.frame_class}")
    print(f"O(P): {_fmt_set(frame.odd_class)}")
    print(f"E(P): {_fmt_set(frame.even_class)}")
    print(f"outside: {c.outside_class if c.outside_class is not None else 'unclassified'}")
    if c.partition is not None:
        print("partition: " + " ".join(f"{cell}={size}" for cell, size in c.partition.sizes().items()))
    for line in c.lines():
        print(line)
    if args.dot:
        Path(args.dot).write_text(to_dot(d, "D", frame.path))
    print(f"result: {'PASS' if c.passed else 'FAIL'}")
    return EXIT_OK if c.passed else EXIT_FAIL


def cmd_witness(args: argparse.Namespace) -> int:
    d = _load(args.file)
    frame = find_frame(d, args.k)
    if frame is None:
        raise HypothesisFailure("diameter < k+2")
    if not 0 <= args.t < args.s <= frame.top:
        raise UsageError(f"need 0 <= t < s <= {frame.top}, got s={args.s}, t={args.t}")
    try:
        path = witness_path(d, frame, args.s, args.t)
    except StructuralViolation as exc:
        print(f"construction failed: {exc}")
        return EXIT_FAIL
    print(f"{' '.join(map(str, path))} (length {path.length})")
    print(f"strategy: {path.strategy}")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    k = args.k
    if args.n < k + 3:
        raise UsageError(f"n must be at least k+3 = {k + 3}, got {args.n}")
    seed = _pick_seed(args.seed)
    stats = GenerationStats()
    for attempt in range(GENERATE_RETRIES):
        stats.attempts += 1
        try:
            d = generate_frame_instance(k, args.n - k - 3, args.density, seed + attempt, args.outside)
        except GenerationFailure as exc:
            stats.record(exc)
            continue
        used = seed + attempt
        comments = [f"k={k} n={args.n} density={args.density} outside={args.outside} seed={used}"]
        text = to_edge_list(d, comments)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        out = sys.stderr if not args.output else sys.stdout
        print(f"seed used: {used} (attempts: {stats.attempts})", file=out)
        print(f"arcs: {d.arc_count()}", file=out)
        return EXIT_OK
    print(f"generation failed after {stats.attempts} attempts (seeds {seed}..{seed + GENERATE_RETRIES - 1})")
    for requirement, count in sorted(stats.failures.items()):
        print(f"  {requirement}: {count}")
    return EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    suite = args.suite
    if suite == "theorem3":
        k = args.k if args.k is not None else 5
        lo = args.n_min if args.n_min is not None else k + 3
        hi = args.n_max if args.n_max is not None else k + 9
        report = run_theorem3_suite(k, args.instances, (lo, hi), _pick_seed(args.seed), args.jobs)
    elif suite == "theorem2":
        report = run_theorem2_scan(args.n if args.n is not None else 4, args.jobs)
    elif suite == "converse":
        k = args.k if args.k is not None else 5
        if args.exhaustive_n is not None:
            report = run_converse_suite(k, 0, 0, exhaustive_n=args.exhaustive_n)
        else:
            report = run_converse_suite(k, args.trials, _pick_seed(args.seed), args.jobs)
    else:
        lo = args.n_min if args.n_min is not None else 4
        hi = args.n_max if args.n_max is not None else 8
        report = run_lemma6_suite((lo, hi), _pick_seed(args.seed), args.trials, args.jobs)
    sys.stdout.write(report.json_lines() if args.format == "json" else report.text())
    return EXIT_OK if report.ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad arguments, matching the usage exit code."""

    def error(self, message: str):  # noqa: D401
        self.print_usage(sys.stderr)
        _err(message)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kqt", description="Structure of strong k-quasi-transitive digraphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="strongness, diameter and k-quasi-transitivity of a digraph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="frame and outside classification with every structural check")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--dot", metavar="FILE", help="also write the digraph as DOT, frame vertices boxed")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="length k-2 / k-1 path from x_s to x_t inside the frame")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("generate", help="random frame instance in edge-list format")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True, help="total number of vertices")
    p.add_argument("--density", type=float, default=0.2)
    p.add_argument("--outside", choices=OUTSIDE_MODES, default="random")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("-k", type=int)
    p.add_argument("-n", "--n", type=int, dest="n", help="order for the theorem2 scan")
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--exhaustive-n", type=int, help="converse suite: check every digraph up to this order")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, HypothesisFailure) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except KqtError as exc:
        _err(str(exc))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

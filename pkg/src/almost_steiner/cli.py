"""Command-line entry point.

Exit codes: 0 ok, 1 verification failure, 2 construction failure,
64 usage error, 65 malformed input.
"""
from __future__ import annotations

import argparse
import sys
from itertools import combinations
from pathlib import Path

from .augmenter import AugmentConfig, AugmentReport, augment
from .core import leave_hypergraph
from .errors import ConstructionFailure, MalformedDesignError, ParameterError
from .fileformat import format_design, read_design
from .packer import PackingConfig, check_parameters, format_profile, leave_profile, pack
from .verifier import brute_force_design_search, design_stats, lambda_set, verify_multiplicity

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONSTRUCT = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lambda(text: str):
    try:
        return lambda_set(int(x) for x in text.split(","))
    except (ValueError, ParameterError) as exc:
        raise argparse.ArgumentTypeError(f"bad lambda list {text!r}: {exc}") from None


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="almost-steiner", description="Construct and verify t-(n,k,{1,2})-designs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def params(p, with_t=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if with_t:
            p.add_argument("--t", type=int, required=True)

    def packing(p):
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--strategy", choices=["greedy", "nibble"], default="greedy")
        p.add_argument("--pass-order", choices=["random-permutation", "rank-order"], default="random-permutation")
        p.add_argument("--bite", type=float, default=0.1, help="nibble bite fraction")
        p.add_argument("--rounds", type=int, default=10, help="nibble rounds")
        p.add_argument("--refine", type=float, default=5.0,
                       help="hill-climbing steps per t-set after packing (0 disables)")

    def augmenting(p):
        p.add_argument("--epsilon", type=float, default=0.5)
        p.add_argument("--p", dest="p_override", type=float, default=None)
        p.add_argument("--q-target", type=int, default=None)
        p.add_argument("--max-retries", type=int, default=10)
        p.add_argument("--no-repair", action="store_true", help="use the strict selection rule only")
        p.add_argument("--threads", type=int, default=1)

    def output(p):
        p.add_argument("--out", help="design file to write (default: stdout)")
        p.add_argument("--report", help="write the key=value report here instead of stderr")

    p = sub.add_parser("construct", help="pack, augment and verify")
    params(p)
    packing(p)
    augmenting(p)
    output(p)

    p = sub.add_parser("pack", help="Phase I only: a partial Steiner system")
    params(p)
    packing(p)
    output(p)

    p = sub.add_parser("augment", help="Phase II on an existing partial design")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--seed", type=_seed, default=0)
    augmenting(p)
    output(p)

    p = sub.add_parser("verify", help="check multiplicities against a lambda set")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda, default=frozenset({1, 2}))
    p.add_argument("--t", type=int, default=None, help="override the t from the file header")

    p = sub.add_parser("stats", help="edge count, overhead ratio and multiplicity histogram")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--report")

    p = sub.add_parser("oracle", help="exhaustive search for a small exact design")
    params(p)
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--max-nodes", type=int, default=1_000_000)
    p.add_argument("--out")
    return parser


def _emit_design(text: str, out: str | None) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _emit_report(lines: list, path: str | None, stream=None) -> None:
    text = "".join(f"{ln}\n" for ln in lines)
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        (stream or sys.stderr).write(text)


def _packing_config(args) -> PackingConfig:
    return PackingConfig(
        strategy=args.strategy,
        seed=args.seed,
        nibble_bite_fraction=args.bite,
        nibble_rounds=args.rounds,
        greedy_pass_order=args.pass_order,
        refine_factor=args.refine,
    )


def _augment_config(args) -> AugmentConfig:
    return AugmentConfig(
        epsilon=args.epsilon,
        p_override=args.p_override,
        q_target=args.q_target,
        max_retries=args.max_retries,
        master_seed=args.seed,
        repair=not args.no_repair,
        workers=args.threads,
    )


def _run_augment(partial, t, args, lines):
    leave = leave_hypergraph(partial, t)
    lines += [f"leave_{ln}" for ln in format_profile(leave_profile(leave)).splitlines()]
    report = AugmentReport()
    try:
        combined = augment(partial, leave, _augment_config(args), report)
    except ConstructionFailure as exc:
        lines += report.lines()
        lines.append("status=construction_failure")
        lines += ["blocked=" + " ".join(map(str, b)) for b in exc.blocked]
        return None, leave
    lines += report.lines()
    return combined, leave


def _finish(combined, leave, t, args, lines) -> int:
    verdict = verify_multiplicity(combined, t, {1, 2})
    leave_once = all(c == 1 for c in _counts_on(combined, t, leave))
    if not verdict or not leave_once:
        lines.append("status=verification_failure")
        if not verdict:
            lines.append(f"witness={' '.join(map(str, verdict.witness))} count={verdict.count}")
        _emit_report(lines, args.report)
        return EXIT_VERIFY
    lines += design_stats(combined, t).lines()
    lines.append("status=ok")
    _emit_design(format_design(combined, t), args.out)
    _emit_report(lines, args.report)
    return EXIT_OK


def _counts_on(d, t, leave):
    edges_through = {}
    for e in d.edges:
        for s in combinations(e, t):
            if s in leave:
                edges_through[s] = edges_through.get(s, 0) + 1
    return [edges_through.get(s, 0) for s in leave.edges]


def cmd_construct(args) -> int:
    check_parameters(args.n, args.k, args.t)
    partial = pack(args.n, args.k, args.t, _packing_config(args))
    lines = [f"n={args.n}", f"k={args.k}", f"t={args.t}", f"seed={args.seed}", f"partial_edges={len(partial)}"]
    combined, leave = _run_augment(partial, args.t, args, lines)
    if combined is None:
        _emit_report(lines, args.report)
        return EXIT_CONSTRUCT
    return _finish(combined, leave, args.t, args, lines)


def cmd_pack(args) -> int:
    check_parameters(args.n, args.k, args.t)
    d = pack(args.n, args.k, args.t, _packing_config(args))
    if not verify_multiplicity(d, args.t, {0, 1}):
        return EXIT_VERIFY
    lines = [f"edge_count={len(d)}"]
    lines += format_profile(leave_profile(leave_hypergraph(d, args.t))).splitlines()
    _emit_design(format_design(d), args.out)
    _emit_report(lines, args.report)
    return EXIT_OK


def cmd_augment(args) -> int:
    partial = read_design(args.in_path)
    t = partial.t
    check_parameters(partial.n, partial.k, t)
    verdict = verify_multiplicity(partial, t, {0, 1})
    if not verdict:
        _emit_report([
            "status=not_a_partial_steiner_system",
            f"witness={' '.join(map(str, verdict.witness))} count={verdict.count}",
        ], args.report)
        return EXIT_VERIFY
    lines = [f"n={partial.n}", f"k={partial.k}", f"t={t}", f"seed={args.seed}", f"partial_edges={len(partial)}"]
    combined, leave = _run_augment(partial, t, args, lines)
    if combined is None:
        _emit_report(lines, args.report)
        return EXIT_CONSTRUCT
    return _finish(combined, leave, t, args, lines)


def cmd_verify(args) -> int:
    d = read_design(args.in_path)
    t = d.t if args.t is None else args.t
    verdict = verify_multiplicity(d, t, args.lam)
    if verdict:
        print("verified=true")
        return EXIT_OK
    print("verified=false")
    print(f"witness={' '.join(map(str, verdict.witness))} count={verdict.count}")
    return EXIT_VERIFY


def cmd_stats(args) -> int:
    d = read_design(args.in_path)
    t = d.t if args.t is None else args.t
    _emit_report(design_stats(d, t).lines(), args.report, sys.stdout)
    return EXIT_OK


def cmd_oracle(args) -> int:
    result = brute_force_design_search(args.n, args.k, args.t, args.lam, args.max_nodes)
    print(f"status={result.status} nodes={result.nodes}", file=sys.stderr)
    if result.design is None:
        return EXIT_CONSTRUCT
    _emit_design(format_design(result.design), args.out)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "pack": cmd_pack,
    "augment": cmd_augment,
    "verify": cmd_verify,
    "stats": cmd_stats,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedDesignError as exc:
        print(f"malformed design: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"cannot read or write file: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

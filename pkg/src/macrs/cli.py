"""Command-line front end.

Exit codes: 0 success, 1 input or usage error, 2 no solution.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .cherries import apply_sequence, parse_sequence
from .enewick import parse, serialize
from .model import MacrsError, validate, vertex_count
from .oracle import diamond_caterpillar, oracle_macrs, random_network
from .solver import macrs, summarize
from .trimming import reticulation_trimmed_subnetworks, set_fingerprint

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MacrsError(f"cannot read {path}: {exc}") from exc
    return parse(text)


def cmd_compute(args: argparse.Namespace) -> int:
    a = _load(args.network_a)
    b = _load(args.network_b)
    result = macrs(a, b, use_r_filter=not args.no_r_filter, threads=args.threads)
    if result is None:
        if args.format == "json":
            print(json.dumps({"status": "no_solution"}))
        else:
            print("no solution: the networks share no taxon")
        return EXIT_NO_SOLUTION
    record = summarize(result)
    if args.format == "json":
        print(json.dumps(record))
    else:
        for key in ("v1", "v2", "v_star", "leaf_count", "reticulation_count"):
            print(f"{key} = {record[key]}")
        print(f"deltas = {record['deltas'][0]}, {record['deltas'][1]}")
        print(f"network = {record['network']}")
        print(f"f1 = {record['f1']}")
        print(f"f2 = {record['f2']}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.network).read_text(encoding="utf-8")
    except OSError as exc:
        raise MacrsError(f"cannot read {args.network}: {exc}") from exc
    try:
        network = parse(text)
    except MacrsError as exc:
        print(f"INVALID: {exc}")
        return EXIT_ERROR
    report = validate(network)
    if report.ok:
        print("OK")
        return EXIT_OK
    for violation in report.violations:
        print(f"INVALID: {violation}")
    return EXIT_ERROR


def cmd_reduce(args: argparse.Namespace) -> int:
    network = _load(args.network)
    try:
        seq_text = Path(args.sequence).read_text(encoding="utf-8")
    except OSError as exc:
        raise MacrsError(f"cannot read {args.sequence}: {exc}") from exc
    seq = parse_sequence(seq_text)
    print(serialize(apply_sequence(network, seq)))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    network = _load(args.network)
    for f, subnet in reticulation_trimmed_subnetworks(network):
        record = {
            "F": [list(edge) for edge in set_fingerprint(network, f)],
            "network": serialize(subnet),
        }
        print(json.dumps(record))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    network = random_network(args.seed, args.leaves, args.retics)
    text = serialize(network) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    a = _load(args.network_a)
    b = _load(args.network_b)
    solved = macrs(a, b, use_r_filter=not args.no_r_filter, threads=args.threads)
    exact = oracle_macrs(a, b, max_leaves=args.max_oracle_leaves)
    solver_size = solved.v_star if solved is not None else None
    oracle_size = exact[0] if exact is not None else None
    print(f"solver: {'no_solution' if solver_size is None else solver_size}")
    print(f"oracle: {'no_solution' if oracle_size is None else oracle_size}")
    if solver_size == oracle_size:
        print("AGREE")
        return EXIT_OK
    print("DISAGREE")
    return EXIT_ERROR


def cmd_bench(args: argparse.Namespace) -> int:
    """Time the solver on caterpillar-of-diamonds pairs.

    r is the summed reticulation count of a pair, split as evenly as
    possible; per-network leaf counts shrink with the reticulation count so
    the vertex count stays fixed across r.
    """
    print("r,n,mean_ms")
    for r in range(args.retics + 1):
        r1, r2 = (r + 1) // 2, r // 2
        a = diamond_caterpillar(r1, args.leaves - r1)
        b = diamond_caterpillar(r2, args.leaves - r2)
        n = max(vertex_count(a), vertex_count(b))
        elapsed = []
        for _ in range(args.reps):
            start = time.perf_counter()
            macrs(a, b, use_r_filter=not args.no_r_filter, threads=args.threads)
            elapsed.append(time.perf_counter() - start)
        mean_ms = 1000.0 * sum(elapsed) / len(elapsed)
        print(f"{r},{n},{mean_ms:.3f}")
    return EXIT_OK


def _add_solver_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--no-r-filter", action="store_true",
                     help="also run subnetwork pairs with unequal reticulation counts")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for the pair loop (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macrs",
        description="Maximum agreement cherry-reduced subnetworks of "
        "rooted binary level-1 orchard networks",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("compute", help="compute a MACRS of two networks")
    p.add_argument("network_a")
    p.add_argument("network_b")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_compute)

    p = subs.add_parser("validate", help="check a file against the network invariants")
    p.add_argument("network")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("reduce", help="apply a cherry-sequence file to a network")
    p.add_argument("network")
    p.add_argument("sequence", help="file with one 'taxon,taxon' pair per line")
    p.set_defaults(func=cmd_reduce)

    p = subs.add_parser("enumerate",
                        help="stream reticulation-trimmed subnetworks as JSON lines")
    p.add_argument("network")
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("generate", help="write a random level-1 orchard network")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--leaves", type=int, default=6)
    p.add_argument("--retics", type=int, default=2)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = subs.add_parser("oracle", help="compare the solver against brute force")
    p.add_argument("network_a")
    p.add_argument("network_b")
    p.add_argument("--max-oracle-leaves", type=int, default=8)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("bench", help="CSV runtime trend over reticulation counts")
    p.add_argument("--retics", type=int, default=4,
                   help="largest summed reticulation count (default 4)")
    p.add_argument("--leaves", type=int, default=10,
                   help="base leaf count per network (default 10)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MacrsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""
Command line front end.

Exit codes::

    0  success
    2  invalid flags or malformed input file
    3  size not supported by the command
    4  internal verification failed
    5  the verified sequence violates the snake conditions
    6  search budget exhausted before the search completed

Data goes to stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analysis, formats, hamgen, hypergraph, search
from . import covers
from .config import Limits

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4
EXIT_VIOLATION = 5
EXIT_BUDGET = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty generator list")
    return values


def _emit(text: str, out: str | None) -> None:
    if out:
        formats.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _render(seq: covers.GenSequence, fmt: str, limits: Limits) -> str:
    if fmt == "seq":
        return formats.format_sequence(seq)
    if fmt == "succ":
        return formats.format_cover(covers.sequences_to_cover([seq], seq.n))
    return formats.format_perms(seq)


def cmd_gen(args, limits: Limits) -> int:
    n = args.n
    if n % 2 == 0:
        raise CliError(EXIT_USAGE, f"gen needs odd n, got n={n}")
    if args.format == "perms" and n > limits.perms_max_n:
        raise CliError(EXIT_USAGE, f"--format perms is limited to n <= {limits.perms_max_n}")
    try:
        hamgen.check_generate_size(n, limits)
    except hamgen.UnsupportedSize as e:
        raise CliError(EXIT_UNSUPPORTED, str(e)) from None
    try:
        seq = hamgen.generate(n, limits)
    except hamgen.ConstructionError as e:
        raise CliError(EXIT_INTERNAL, f"construction failed: {e}") from None
    report = analysis.verify_snake(seq)
    if not (report.is_hamiltonian_in_An and report.min_pairwise_kendall_ok and not report.violations):
        sys.stderr.write(report.to_text())
        raise CliError(EXIT_INTERNAL, "generated cycle failed verification")
    if n - 2 not in report.generator_histogram:
        raise CliError(EXIT_INTERNAL, f"generated cycle has no tau_{n - 2} edge")
    logging.info("verified Hamiltonian cycle of A_%d, length %d", n, report.length)
    _emit(_render(seq, args.format, limits), args.out)
    return EXIT_OK


def _read_input(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as e:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {e.strerror}") from None


def cmd_verify(args, limits: Limits) -> int:
    try:
        seq = formats.parse_sequence(_read_input(args.input))
    except formats.FormatError as e:
        raise CliError(EXIT_USAGE, f"malformed sequence file: {e}") from None
    report = analysis.verify_snake(seq, mode=args.mode)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    ok = report.min_pairwise_kendall_ok and report.self_avoiding and not report.violations
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_search(args, limits: Limits) -> int:
    if args.n > limits.exact_search_max_n:
        raise CliError(EXIT_UNSUPPORTED, f"search is limited to n <= {limits.exact_search_max_n}")
    if args.budget is not None and args.budget <= 0:
        raise CliError(EXIT_USAGE, "--budget must be positive")
    try:
        result = search.longest_snake_search(args.n, args.gens, budget=args.budget)
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None
    if result.witness is not None:
        if analysis.verify_snake(result.witness, mode="sn").length != result.length:
            raise CliError(EXIT_INTERNAL, "search witness does not replay to its length")
        if args.out:
            formats.write_atomic(args.out, formats.format_sequence(result.witness))
    sys.stdout.write(f"length: {result.length}\nexact: {str(result.exact).lower()}\n")
    return EXIT_OK if result.exact else EXIT_BUDGET


def cmd_rankin(args, limits: Limits) -> int:
    if len(args.gens) != 2:
        raise CliError(EXIT_USAGE, "rankin needs exactly two generators")
    a, b = args.gens
    if a != b and 2 <= min(a, b) and max(a, b) <= args.n and max(a, b) > analysis.RANKIN_MAX_POINTS:
        raise CliError(EXIT_UNSUPPORTED, f"group closure is limited to {analysis.RANKIN_MAX_POINTS} points")
    try:
        inst = analysis.rankin_instance(args.n, a, b)
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None
    excluded = analysis.rankin_verdict(args.n, a, b)
    logging.info("group size %d, order(a) %d, order(ab^-1) %d", inst.group_size, inst.order_a, inst.order_ab_inv)
    sys.stdout.write("excluded\n" if excluded else "inconclusive\n")
    return EXIT_OK


def cmd_hypergraph(args, limits: Limits) -> int:
    least = 5 if args.connected else 3
    if not least <= args.n <= limits.max_n:
        raise CliError(EXIT_UNSUPPORTED, f"hypergraph needs {least} <= n <= {limits.max_n}")
    h = hypergraph.build_connected(args.n) if args.connected else hypergraph.build_acyclic(args.n)
    edges = hypergraph.order_hyperedges(h) if args.connected else sorted(h.hyperedges, key=hypergraph.edge_key)
    _emit(hypergraph.dump(edges), args.out)
    return EXIT_OK


def cmd_m6(args, limits: Limits) -> int:
    try:
        seq = analysis.m6_cycle()
    except RuntimeError as e:
        raise CliError(EXIT_INTERNAL, str(e)) from None
    report = analysis.verify_snake(seq, mode="sn")
    if not (report.is_cycle and report.self_avoiding and report.min_pairwise_kendall_ok):
        raise CliError(EXIT_INTERNAL, "stored M_6 cycle failed verification")
    _emit(_render(seq, args.format, limits), args.out)
    return EXIT_OK


def cmd_bound(args, limits: Limits) -> int:
    if not 2 <= args.n <= limits.max_n:
        raise CliError(EXIT_UNSUPPORTED, f"bound needs 2 <= n <= {limits.max_n}")
    sys.stdout.write(f"{analysis.upper_bound(args.n)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankgray", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="Hamiltonian cycle of A_n (odd n >= 7)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--format", choices=("seq", "succ", "perms"), default="seq")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check a sequence file")
    v.add_argument("--in", dest="input", required=True, help="sequence file, '-' for stdin")
    v.add_argument("--mode", choices=("an", "sn"), default="an")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="longest snake through the identity (n <= 6)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gens", type=_int_list, required=True)
    s.add_argument("--budget", type=float, help="seconds")
    s.add_argument("--out", help="write the witness as a sequence file")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("rankin", help="two-generator non-existence criterion")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--gens", type=_int_list, required=True)
    r.set_defaults(func=cmd_rankin)

    h = sub.add_parser("hypergraph", help="dump the triangle hypergraph")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--connected", action="store_true")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hypergraph)

    m = sub.add_parser("m6", help="the 315-step snake in S_6")
    m.add_argument("--format", choices=("seq", "perms"), default="seq")
    m.add_argument("--out")
    m.set_defaults(func=cmd_m6)

    b = sub.add_parser("bound", help="upper bound n!/2")
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(func=cmd_bound)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        limits = Limits.from_env()
    except ValueError as e:
        print(f"rankgray: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, limits)
    except CliError as e:
        print(f"rankgray: {e}", file=sys.stderr)
        return e.code
    except BrokenPipeError:
        return EXIT_OK

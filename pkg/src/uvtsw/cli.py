"""Command-line driver: every verification suite as a subcommand."""

from __future__ import annotations

import argparse
import sys

from . import suites
from .report import Report
from .uvt_rep import DEFAULT_SIZE_CAP, SizeCapExceeded

COMMANDS = ("relations", "braid", "hecke-action", "commutant", "idempotents", "decompose", "pairing", "jm", "all")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="rank parameter of sl_n (n >= 2)")
    common.add_argument("--k", type=int, default=3, help="number of tensor factors / Hecke rank (k >= 1)")
    common.add_argument("--cap", type=_positive, default=DEFAULT_SIZE_CAP, help="largest allowed n^k")
    common.add_argument("--height", type=_positive, default=2, help="Theta truncation height")
    common.add_argument("--seed", type=int, default=0, help="seed for the specialization pre-pass")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="uvtsw", description="Exact checks for U_{v,t}(sl_n), H_k(v,t) and their Schur-Weyl duality.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(subparser=p)
        if name == "idempotents":
            p.add_argument("--mode", choices=("inductive", "fusion", "compare"), default="compare")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.n < 2:
        parser.error(f"--n must be at least 2 (got {args.n})")
    if args.k < 1:
        parser.error(f"--k must be at least 1 (got {args.k})")
    if args.command in ("braid", "hecke-action", "commutant") and args.k < 2:
        parser.error(f"{args.command} needs --k >= 2")
    if args.command == "pairing" and args.n > 3:
        parser.error("pairing supports n <= 3")
    if args.command in ("idempotents", "jm") and args.k > 6:
        parser.error("idempotents and jm support k <= 6")


def run(args: argparse.Namespace) -> Report:
    n, k, cap, seed = args.n, args.k, args.cap, args.seed
    match args.command:
        case "relations":
            return suites.relations(n, None, cap)
        case "braid":
            return suites.braid(n, k, cap)
        case "hecke-action":
            return suites.hecke_action(n, k, seed, cap)
        case "commutant":
            return suites.commutant(n, k, cap)
        case "idempotents":
            return suites.idempotents(k, args.mode)
        case "decompose":
            return suites.decompose(n, k, seed, cap)
        case "pairing":
            return suites.pairing(n, args.height)
        case "jm":
            return suites.jm(k)
        case "all":
            return suites.run_all(n, k, seed, args.height, cap)
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args.subparser, args)
    try:
        report = run(args)
    except SizeCapExceeded as exc:
        print(f"uvtsw: {exc}", file=sys.stderr)
        return 2
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

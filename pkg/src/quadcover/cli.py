"""Command-line front end.

``verify run`` executes checks matching an id glob and emits a text table or
deterministic JSON; ``verify list`` prints the registry. Exit codes: 0 all
pass, 1 any fail, 2 usage error. The environment variable VERIFY_SEED
overrides the default seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import os
import sys

from .checks import SuiteConfig, UsageError, build_registry, emit_report, run_suite
from .numerics import PROFILES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run named numerical verifications of the disc-bundle compactification maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run checks matching an id glob")
    run.add_argument("--suite", default="*", metavar="GLOB", help="check id glob (default '*')")
    run.add_argument(
        "--n",
        type=int,
        action="append",
        metavar="INT",
        help="override the ambient dimension list (repeatable)",
    )
    run.add_argument(
        "--radius",
        type=float,
        action="append",
        metavar="REAL",
        help="override the radius list (repeatable)",
    )
    run.add_argument("--samples", type=int, metavar="INT", help="override sample counts")
    run.add_argument("--seed", type=int, default=None, metavar="INT", help="master seed (default 42)")
    run.add_argument("--tol-profile", choices=sorted(PROFILES), default="default")
    run.add_argument("--format", choices=["text", "json"], default="text")
    run.add_argument("--out", metavar="PATH", help="write the report to a file instead of stdout")

    sub.add_parser("list", help="print the check registry")
    return parser


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("VERIFY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"VERIFY_SEED must be an integer, got {env!r}") from None
    return 42


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0

    try:
        if args.command == "list":
            registry = build_registry()
            width = max(len(cid) for cid in registry)
            for cid, check in registry.items():
                print(f"{cid:<{width}}  {check.statement}")
            return 0

        config = SuiteConfig(
            seed=_resolve_seed(args.seed),
            samples=args.samples,
            n_values=tuple(args.n) if args.n else None,
            radii=tuple(args.radius) if args.radius else None,
            profile=args.tol_profile,
        )
        reports, status = run_suite(args.suite, config)
        emit_report(reports, format=args.format, destination=args.out)
        return status
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

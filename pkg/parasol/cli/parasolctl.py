"""CLI for parasol verification runs."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from parasol.config import (
    CHECK_CONFIG,
    CHECK_ORDER,
    ENV_LOG_LEVEL,
    get_default_checks,
    tolerance_from_env,
    workers_from_env,
)
from parasol.exprlang import ExprError
from parasol.manifold import BuiltinRegistry, SpecError, load_spec_file
from parasol.report import RunOptions, encode_json, render_report
from parasol.report.runner import QUANTITIES, eval_quantity, run_checks

logger = logging.getLogger("Parasolctl")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_LOAD_ERROR = 2


def _configure_logging() -> None:
    level_name = os.getenv(ENV_LOG_LEVEL, "WARNING").upper()
    level = getattr(logging, level_name, None)
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    if not isinstance(level, int):
        logger.warning(f"Ignoring {ENV_LOG_LEVEL}={level_name!r}: not a logging level")


def _parse_checks(value: Optional[str]) -> List[str]:
    if value is None:
        return get_default_checks()
    if value.strip().lower() == "all":
        return list(CHECK_ORDER)
    return [name.strip() for name in value.split(",") if name.strip()]


def _parse_point(value: str) -> List[float]:
    try:
        return [float(part) for part in value.strip().strip("()").split(",")]
    except ValueError:
        raise ValueError(f"--point must be comma-separated numbers, got {value!r}") from None


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.write_text(text, encoding="utf-8")


def _fail(message: str, code: int) -> int:
    print(f"parasolctl: {message}", file=sys.stderr)
    return code


def cmd_check(args: argparse.Namespace) -> int:
    tolerance = args.tolerance if args.tolerance is not None else tolerance_from_env()
    workers = args.workers if args.workers is not None else workers_from_env()
    try:
        options = RunOptions(
            tolerance=tolerance if tolerance is not None else CHECK_CONFIG["tolerance"],
            axiom_tolerance=(
                args.axiom_tolerance
                if args.axiom_tolerance is not None
                else CHECK_CONFIG["axiom_tolerance"]
            ),
            points=args.points,
            seed=args.seed,
            format=args.format,
            checks=_parse_checks(args.checks),
            workers=workers or 1,
            progress=args.progress,
        )
    except ValidationError as exc:
        return _fail(f"invalid options: {exc}", EXIT_LOAD_ERROR)

    try:
        loaded = load_spec_file(Path(args.spec), requested=options.checks)
        plan = loaded.plan.with_overrides(options.points, options.seed)
    except (SpecError, OSError, ValueError) as exc:
        return _fail(f"cannot load {args.spec}: {exc}", EXIT_LOAD_ERROR)

    reports = run_checks(loaded.bundle, loaded.plan, options)
    text = render_report(
        reports,
        options.format,
        spec_digest=loaded.digest,
        seed=plan.seed if plan.kind == "random" else None,
        tolerance=options.tolerance,
    )
    _write(text, Path(args.output) if args.output else None)
    failing = [report.check_name for report in reports if report.status.fails_run]
    if failing:
        logger.info(f"Failing checks: {', '.join(failing)}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    requested = [args.quantity] if args.quantity in ("quasi_conformal", "pseudo_projective") else []
    try:
        point = _parse_point(args.point)
        loaded = load_spec_file(Path(args.spec), requested=requested)
    except (SpecError, OSError, ValueError) as exc:
        return _fail(f"cannot load {args.spec}: {exc}", EXIT_LOAD_ERROR)
    try:
        tensor = eval_quantity(loaded.bundle, point, args.quantity)
    except (ArithmeticError, ValueError, ExprError) as exc:
        return _fail(f"{args.quantity} at {point}: {exc}", EXIT_FAILED)
    document = {
        "quantity": args.quantity,
        "point": point,
        "valence": list(tensor.valence),
        "components": tensor.components.tolist(),
    }
    _write(encode_json(document) + "\n", None)
    return EXIT_OK


def cmd_builtins(args: argparse.Namespace) -> int:
    try:
        registry = BuiltinRegistry.default(Path(args.registry) if args.registry else None)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot read builtins registry: {exc}", EXIT_LOAD_ERROR)
    print("=" * 60)
    print("BUILTIN FAMILIES")
    print("=" * 60)
    families = list(registry.list_families())
    for family in families:
        parameters = ", ".join(family.parameters) or "-"
        print(f"{family.name:12s} construction={family.construction:10s} params={parameters}")
        if family.description:
            print(f"{'':12s} {family.description}")
    print("-" * 60)
    print(f"Families: {len(families)}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="parasol verification CLI")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run checks over a spec file")
    check.add_argument("spec")
    check.add_argument("--tolerance", type=float, default=None)
    check.add_argument("--axiom-tolerance", type=float, default=None)
    check.add_argument("--points", type=int, default=None)
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--format", choices=["text", "json"], default="text")
    check.add_argument("--checks", default=None, help="comma-separated names, or 'all'")
    check.add_argument("--workers", type=int, default=None)
    check.add_argument("--progress", action="store_true")
    check.add_argument("--output", default=None)

    evaluate = sub.add_parser("eval", help="print one tensor at one point")
    evaluate.add_argument("spec")
    evaluate.add_argument("--point", required=True)
    evaluate.add_argument("--quantity", choices=QUANTITIES, required=True)

    builtins = sub.add_parser("builtins", help="list builtin metric families")
    builtins.add_argument("--registry", default=None)

    args = parser.parse_args(argv)
    _configure_logging()

    if args.command == "check":
        return cmd_check(args)
    if args.command == "eval":
        return cmd_eval(args)
    return cmd_builtins(args)


if __name__ == "__main__":
    sys.exit(main())

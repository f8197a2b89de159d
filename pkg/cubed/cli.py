"""
Command line entry point: `cubed <subcommand> [input]`.

Exit codes: 0 PASS, 1 FAIL, 2 PARTIAL, 3 input error.
"""

import argparse
import hashlib
import json
import sys

from pydantic import ValidationError

from cubed.core.canonical_surface import surface_report
from cubed.core.cube_complex import CubeComplex, validate_npc
from cubed.core.dehn_surgery import SurgerySpec, check_surgery
from cubed.core.disk_rewriter import DiskGraph, reduce_report
from cubed.core.fixtures import COMPLEX_FIXTURES, get_complex_fixture
from cubed.core.hierarchy import (
    HIERARCHY_FIXTURES,
    HierarchySpec,
    extend_with_fills,
    get_hierarchy_fixture,
    verify_hierarchy,
)
from cubed.core.surface_conditions import SurfaceModel, check_almost_cubed, surface_model_from_complex
from cubed.core.types import INPUT_ERROR_EXIT, CubedInputError, Report
from cubed.logger import ReportLogger, VerbosePrinter
from cubed.utils.config import OUTPUT_FORMATS, CubedConfig
from cubed.utils.parsing import load_file

SUBCOMMANDS = ("validate", "surface", "almost-cubed", "surgery", "hierarchy", "reduce")


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR_EXIT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubed", description="Checks for cubed 3-manifolds and their surfaces")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Report format")
    parser.add_argument("--log-dir", default=None, help="Write a JSONL run log here")
    parser.add_argument("--verbose", action="store_true", default=None, help="Rich progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help_text: str, fixtures) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="Input file")
        p.add_argument("--fixture", choices=sorted(fixtures), help="Use a built-in fixture instead")
        return p

    command("validate", "Non-positive curvature of a cube complex (.cubes)", COMPLEX_FIXTURES)
    command("surface", "Canonical surface census and region conditions (.cubes)", COMPLEX_FIXTURES)
    command("almost-cubed", "Almost cubed hypotheses (.cubes or .surf)", COMPLEX_FIXTURES)
    surgery = command("surgery", "Dehn filling criterion (.hier or .surf)", HIERARCHY_FIXTURES)
    surgery.add_argument("--fill", action="append", default=[], help="component=p/q; repeatable")
    surgery.add_argument(
        "--scan",
        nargs="?",
        type=int,
        const=0,
        metavar="N",
        help="Sweep primitive slopes with |p|, |q| <= N on every patterned component "
        "(bare --scan uses CUBED_SCAN_BOUND)",
    )
    hierarchy = command("hierarchy", "Hierarchy conditions (.hier)", HIERARCHY_FIXTURES)
    hierarchy.add_argument("--fill", action="append", default=[], help="Extend by meridian disks")
    reduce = sub.add_parser("reduce", help="Rewrite a disk graph (.dg) to the empty graph")
    reduce.add_argument("input", help="Input file")
    reduce.add_argument("--mode", choices=("theorem1", "theorem3"), default=None)
    reduce.add_argument("--max-steps", type=int, default=None)
    return parser


def _load(args, expected: tuple[type, ...]):
    """The input object and its digest, from a file or a named fixture."""
    if (args.input is None) == (getattr(args, "fixture", None) is None):
        raise CubedInputError("Give exactly one of an input file or --fixture")
    if args.input is None:
        getter = get_complex_fixture if args.fixture in COMPLEX_FIXTURES else get_hierarchy_fixture
        obj = getter(args.fixture)
        return obj, hashlib.sha256(args.fixture.encode()).hexdigest()
    obj, digest = load_file(args.input, getattr(args, "mode", None))
    if not isinstance(obj, expected):
        names = [t.__name__ for t in expected]
        raise CubedInputError(f"{args.command} takes {names}; {args.input} holds a {type(obj).__name__}")
    return obj, digest


def _dispatch(args, config: CubedConfig, moves: list[dict]) -> Report:
    if args.command in ("validate", "surface"):
        c, digest = _load(args, (CubeComplex,))
        report = validate_npc(c) if args.command == "validate" else surface_report(c)
    elif args.command == "almost-cubed":
        base, digest = _load(args, (CubeComplex, SurfaceModel))
        model = surface_model_from_complex(base) if isinstance(base, CubeComplex) else base
        report = check_almost_cubed(model)
    elif args.command == "surgery":
        base, digest = _load(args, (HierarchySpec, SurfaceModel))
        scan_bound = None
        if args.scan is not None:
            scan_bound = args.scan or config.scan_bound
        fills = [SurgerySpec.parse(text) for text in args.fill]
        report = check_surgery(base, fills, scan_bound=scan_bound)
    elif args.command == "hierarchy":
        h, digest = _load(args, (HierarchySpec,))
        if args.fill:
            h = extend_with_fills(h, [SurgerySpec.parse(text) for text in args.fill])
        report = verify_hierarchy(h)
    elif args.command == "reduce":
        g, digest = _load(args, (DiskGraph,))
        report = reduce_report(
            g,
            max_steps=args.max_steps or config.max_rewrite_steps,
            on_step=lambda step: moves.append(step.to_dict()),
        )
    else:
        raise ValueError(f"Unknown subcommand: {args.command}. Supported: {list(SUBCOMMANDS)}")
    report.input_digest = digest
    return report


def render(report: Report, output_format: str) -> str:
    if output_format == "structured":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if output_format == "text":
        return report.to_text()
    raise ValueError(f"Unknown output format: {output_format}. Supported: {list(OUTPUT_FORMATS)}")


def run(argv: list[str] | None = None) -> int:
    """Parse argv, run one subcommand, print its report, and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR_EXIT

    verbose = VerbosePrinter(enabled=False)
    try:
        config = CubedConfig(log_dir=args.log_dir, verbose=args.verbose, output_format=args.format)
        verbose = VerbosePrinter(enabled=config.verbose)
        logger = ReportLogger(config.log_dir) if config.log_dir else None
        source = args.input or f"fixture {getattr(args, 'fixture', '')}"
        moves: list[dict] = []
        report = _dispatch(args, config, moves)
    except (CubedInputError, ValidationError, OSError, ValueError) as exc:
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        verbose.print_error(message)
        print(f"cubed: input error: {message}", file=sys.stderr)
        return INPUT_ERROR_EXIT

    verbose.print_header(args.command, source, report.input_digest, format=config.output_format)
    verbose.print_checks(report.checks)
    if args.command == "reduce":
        verbose.print_trace(report.check("reduction").notes)
    verbose.print_verdict(report)
    if logger is not None:
        logger.log_metadata(args.command, report.input_digest, source=source)
        for check in report.checks:
            logger.log_check(check)
        for move in moves:
            logger.log_move(move)

    sys.stdout.write(render(report, config.output_format))
    return report.exit_code()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

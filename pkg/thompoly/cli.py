"""Command-line front end for thompoly."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, TextIO

import colorlog

from . import PIPELINE_CLASSES, get_pipeline, setup
from .config import Settings
from .const import (
    COMPLETE_INTERSECTION_CHARS,
    DOMAIN,
    EXIT_MALFORMED,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_SOLVER,
    EXIT_UNKNOWN,
    FORMAT_JSON,
    FORMAT_LATEX,
    FORMAT_TEXT,
    FORMATS,
    LOG_LEVELS,
    ORDINARY_CHARS,
    PRIMAL_CHARS,
    STATUS_FAIL,
    STATUS_PASS,
    SURFACE_CHARS,
    TABLE_ALL,
    VERSION,
)
from .runtime import ThomPolyData
from .enumerative import parse_characters
from .exceptions import (
    EmptyLocusError,
    IncompleteSpecError,
    MalformedCharactersError,
    SolverError,
    ThomPolyError,
    UnknownTypeError,
    UsageError,
    ValidationError,
)
from .golden import golden_entry
from .registry import Registry
from .solver import quotient_form, solve_tp
from .verification import Verifier

_LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"

# Characters accepted by --chars, per pipeline
PIPELINE_CHARS = {
    "p3-surface": SURFACE_CHARS + ORDINARY_CHARS[1:],
    "p4-surface": SURFACE_CHARS,
    "p4-primal": PRIMAL_CHARS,
}

# Most specific first
EXIT_CODES: tuple[tuple[type[ThomPolyError], int], ...] = (
    (UnknownTypeError, EXIT_UNKNOWN),
    (MalformedCharactersError, EXIT_MALFORMED),
    (ValidationError, EXIT_MALFORMED),
    (UsageError, EXIT_MALFORMED),
    (SolverError, EXIT_SOLVER),
    (EmptyLocusError, EXIT_SOLVER),
    (IncompleteSpecError, EXIT_SOLVER),
)


def exit_code_for(err: ThomPolyError) -> int:
    """Process exit code for a library error."""
    for error_type, code in EXIT_CODES:
        if isinstance(err, error_type):
            return code
    return EXIT_SOLVER


def setup_logging(level: str) -> None:
    """Install a coloured stderr handler on the package logger."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    logger = logging.getLogger(DOMAIN)
    logger.handlers = [handler]
    logger.setLevel(level)
    logger.propagate = False


def parse_pair(text: str) -> tuple[int, int]:
    """Parse ``m,n`` into a dimension pair."""
    parts = [part.strip() for part in text.split(",")]
    try:
        m, n = (int(part) for part in parts)
    except ValueError as err:
        msg = f"Dimension pair must look like 2,3 (got {text!r})"
        raise argparse.ArgumentTypeError(msg) from err
    return m, n


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the four subcommands."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN,
        description="Thom polynomials by restriction and degrees of singular-projection loci.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--registry", type=Path, help="extra registry file merged over the built-in one")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO, or DEBUG when repeated")
    parser.add_argument("--workers", type=int, help="threads used by verify")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="solve the restriction system for one type")
    solve.add_argument("--pair", type=parse_pair, required=True, help="source and target dimension, e.g. 2,3")
    solve.add_argument("--type", dest="type_name", required=True)
    solve.add_argument(
        "--constraints",
        default="auto",
        help="auto, or a comma-separated list of lower types",
    )
    solve.add_argument("--format", choices=FORMATS, default=FORMAT_TEXT)

    verify = commands.add_parser("verify", help="check computed values against published tables")
    verify.add_argument("--tables", nargs="+", default=[TABLE_ALL])
    verify.add_argument("--format", choices=(FORMAT_TEXT, FORMAT_JSON), default=FORMAT_TEXT)

    enumerate_ = commands.add_parser("enumerate", help="degree formulas of singular-projection loci")
    enumerate_.add_argument("--pipeline", required=True, help=", ".join(PIPELINE_CLASSES))
    enumerate_.add_argument("--type", dest="type_name", help="one type; all eligible types when omitted")
    enumerate_.add_argument("--chars", help="comma-separated name=value characters")
    enumerate_.add_argument("--d1", type=int)
    enumerate_.add_argument("--d2", type=int)
    enumerate_.add_argument("--d", type=int)
    enumerate_.add_argument("--format", choices=FORMATS, default=FORMAT_TEXT)

    registry = commands.add_parser("registry", help="dump, load or validate registry files")
    action = registry.add_mutually_exclusive_group(required=True)
    action.add_argument("--dump", action="store_true")
    action.add_argument("--load", type=Path, metavar="PATH")
    registry.add_argument("--validate", action="store_true")
    return parser


class CommandRunner:
    """Runs one parsed command against the runtime data."""

    def __init__(self, data: ThomPolyData, out: TextIO) -> None:
        """Initialize the runner."""
        self.data = data
        self.out = out
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")
        self._commands: dict[str, Callable[[argparse.Namespace], int]] = {
            "solve": self.solve,
            "verify": self.verify,
            "enumerate": self.enumerate,
            "registry": self.registry,
        }

    def run(self, args: argparse.Namespace) -> int:
        """Dispatch to the subcommand."""
        return self._commands[args.command](args)

    def write(self, text: str = "") -> None:
        """Write one line of output."""
        self.out.write(f"{text}\n")

    def write_json(self, data: Any) -> None:
        """Write a JSON document."""
        self.write(json.dumps(data, indent=2))

    # solve

    def solve(self, args: argparse.Namespace) -> int:
        """Solve for one type and compare with the published polynomial."""
        registry = self.data.registry
        target = registry.get(args.type_name, args.pair)
        constraints = None
        if args.constraints != "auto":
            names = filter(None, (name.strip() for name in args.constraints.split(",")))
            constraints = [registry.get(name, target.pair) for name in names]
        tp, report = solve_tp(target, constraints, registry=registry)

        status = None
        try:
            expected = golden_entry(target.name, target.pair).polynomial()
        except UnknownTypeError:
            self.logger.info("No published polynomial for %s", target.label)
        else:
            status = STATUS_PASS if expected == tp else STATUS_FAIL
            if status == STATUS_FAIL:
                self.logger.warning("Published: %s", expected.render())

        quotient = quotient_form(tp, target.pair)
        shown = tp if quotient is None else quotient
        if args.format == FORMAT_JSON:
            self.write_json(
                {
                    **report.to_dict(),
                    "tp_quotient": None if quotient is None else quotient.render(),
                    "golden": status,
                }
            )
        elif args.format == FORMAT_LATEX:
            self.write(f"{target.name} & ${shown.latex()}$ \\\\")
        else:
            self.write(f"Tp({target.name}) = {shown.render()}")
            self.write(f"basis: {', '.join(report.basis)}")
            self.write(f"constraint types: {', '.join(report.constraint_types) or 'none'}")
            self.write(
                f"{len(report.rows)} equations, {report.unknowns} unknowns, rank {report.rank}"
            )
            for row in report.rows:
                self.write(f"  [{row.tag}] {row.render()}")
            if status is not None:
                self.write(status)
        return EXIT_MISMATCH if status == STATUS_FAIL else EXIT_OK

    # verify

    def verify(self, args: argparse.Namespace) -> int:
        """Run the published-table checks."""
        verifier = Verifier(self.data.registry, self.data.settings.workers)
        summary = verifier.run(args.tables)
        if args.format == FORMAT_JSON:
            self.write_json(summary.to_dict())
        else:
            for table, results in summary.by_table().items():
                self.write(f"[{table}]")
                for result in results:
                    self.write(f"  {result.status}  {result.row}")
                    if not result.passed:
                        self.write(f"        expected: {result.expected}")
                        self.write(f"        actual:   {result.actual}")
                    if result.detail:
                        self.write(f"        {result.detail}")
            failed = len(summary.failures)
            self.write(
                f"{len(summary.results) - failed} passed, {failed} failed"
                f" ({STATUS_PASS if summary.passed else STATUS_FAIL})"
            )
        return EXIT_OK if summary.passed else EXIT_MISMATCH

    # enumerate

    def enumerate(self, args: argparse.Namespace) -> int:
        """Print degree formulas, evaluated when characters are given."""
        pipeline = get_pipeline(self.data, args.pipeline)
        values = self.characters(args)
        names = [args.type_name] if args.type_name else list(pipeline.eligible_names)
        records = [pipeline.record(name, values) for name in names]
        if args.format == FORMAT_JSON:
            data = [record.to_dict() for record in records]
            self.write_json(data[0] if args.type_name else data)
        elif args.format == FORMAT_LATEX:
            for record in records:
                self.write(record.latex_row())
        else:
            for record in records:
                line = f"{record.locus} ({record.type_name}): {record.formula}"
                if record.value is not None:
                    line += f" = {record.value}"
                self.write(line)
        return EXIT_OK

    def characters(self, args: argparse.Namespace) -> dict[str, int]:
        """Collect ``--chars`` and the degree flags."""
        allowed = PIPELINE_CHARS.get(args.pipeline, ())
        values = parse_characters(args.chars, allowed) if args.chars else {}
        flags = {"d1": args.d1, "d2": args.d2, "d": args.d}
        for name, value in flags.items():
            if value is None:
                continue
            if name in values:
                msg = f"Character {name} given twice"
                raise MalformedCharactersError(msg)
            values[name] = value
        given = set(values) & set(COMPLETE_INTERSECTION_CHARS)
        if given and given != set(COMPLETE_INTERSECTION_CHARS):
            msg = "Give both --d1 and --d2"
            raise MalformedCharactersError(msg)
        return values

    # registry

    def registry(self, args: argparse.Namespace) -> int:
        """Dump, load or validate registry files."""
        if args.dump:
            self.out.write(self.data.registry.to_json())
            return EXIT_OK
        if args.validate:
            return self.validate(args.load)
        merged = self.data.registry.merge(Registry.from_json(_read(args.load), source=str(args.load)))
        self.write(f"Merged registry: {len(merged)} types")
        for pair in merged.pairs():
            names = ", ".join(t.name for t in merged.types_for(pair))
            self.write(f"  {pair[0]},{pair[1]}: {names}")
        return EXIT_OK

    def validate(self, path: Path) -> int:
        """Report every diagnostic of a registry file."""
        try:
            registry = Registry.from_json(_read(path), source=str(path), check=False)
        except ValidationError as err:
            self.write(f"{path}: {err}")
            for line in err.diagnostics:
                self.write(f"  {line}")
            return EXIT_MALFORMED
        report = registry.validate_all()
        if not report:
            self.write(f"{path}: {len(registry)} types valid")
            return EXIT_OK
        for label, diagnostics in report.items():
            self.write(f"{label}:")
            for line in diagnostics:
                self.write(f"  {line}")
        return EXIT_MALFORMED


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as err:
        msg = f"Cannot read registry file {path}: {err}"
        raise UsageError(msg) from err


def _settings(args: argparse.Namespace) -> Settings:
    level = args.log_level
    if level is None and args.verbose:
        level = "DEBUG" if args.verbose > 1 else "INFO"
    return Settings.from_env().merged(
        registry_path=str(args.registry) if args.registry else None,
        log_level=level,
        workers=args.workers,
    )


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Entry point of the ``thompoly`` command."""
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        settings = _settings(args)
        setup_logging(settings.log_level)
        data = setup(settings)
        return CommandRunner(data, out).run(args)
    except ValidationError as err:
        _LOGGER.error("%s", err)
        for line in err.diagnostics:
            _LOGGER.error("  %s", line)
        return EXIT_MALFORMED
    except ThomPolyError as err:
        _LOGGER.error("%s", err)
        return exit_code_for(err)

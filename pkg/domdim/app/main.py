"""Command-line entry point for dominant dimension computations."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from domdim import __version__
from domdim.app.components.reports import (
    dataframe_to_csv,
    dd_histogram,
    histogram_dict,
    render_histogram,
    render_report,
    report_frame,
    summarize_verdicts,
)
from domdim.field import FieldSpec
from domdim.quiver.core import RelationSet
from domdim.quiver.dsl import serialize
from domdim.quiver.families import FAMILY_KINDS, RELATION_BASES, FamilyDescriptor, FamilyError, generate_family
from domdim.services.runner import (
    COMMANDS,
    EXIT_INPUT,
    EXIT_OK,
    RunConfig,
    RunnerError,
    RunReport,
    batch_exit_code,
    run_batch,
)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

logger = logging.getLogger("domdim")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code instead of argparse's 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("+", ",").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from exc


def _placements(text: str) -> tuple[tuple[int, int], ...]:
    try:
        return tuple(
            (int(start), int(length))
            for start, length in (item.split("@") for item in text.replace("+", ",").split(",") if item)
        )
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected start@length items, got {text!r}") from exc


def _relation_list(text: str) -> RelationSet:
    try:
        return RelationSet(tuple(tuple(item.split()) for item in text.split(";") if item.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected relations like 'a t;d b', got {text!r}: {exc}") from exc


def _engine_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit one JSON object per run")
    parser.add_argument("--field", type=_field, default=None, help="rational or prime:<p> (overrides the file)")
    parser.add_argument("--max-steps", type=int, default=None, help="resolution cap (default n + 2)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the randomized isomorphism test")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domdim", description="Dominant dimension of monomial bound quiver algebras.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = commands.add_parser("compute", help="engine only")
    compute.add_argument("file", help="quiver file or family descriptor such as truncated:n=6,m=3")
    compute.add_argument("--resolution", action="store_true", help="include full resolutions")
    _engine_options(compute)

    for name, text in (("predict", "closed-form prediction only"), ("check", "engine, prediction and verdict")):
        sub = commands.add_parser(name, help=text)
        sub.add_argument("file", help="quiver file or family descriptor")
        _engine_options(sub)
        if name == "check":
            sub.add_argument("--expected", default=None, help="pin the engine value")
            sub.add_argument("--resolution", action="store_true", help="include full resolutions")
        sub.add_argument(
            "--core-relations",
            type=_relation_list,
            default=None,
            help="relations on the arm-free core, e.g. 'a t;d b' (default: derived from the file)",
        )

    generate = commands.add_parser("generate", help="write a family member as a quiver file")
    generate.add_argument("--family", required=True, choices=FAMILY_KINDS)
    generate.add_argument("--n", type=int, default=None, help="number of vertices of the linear quiver")
    generate.add_argument("--m", type=int, default=None, help="relation length for truncated quivers")
    generate.add_argument("--v", type=int, default=None, help="number of vertices of a random tree")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--count", type=int, default=0, help="number of random relations")
    generate.add_argument("--lengths", type=_int_list, default=(), help="monotone relation lengths, e.g. 2,3,4")
    generate.add_argument("--relations", type=_placements, default=(), help="disjoint relations, e.g. 1@2,4@2")
    generate.add_argument("--source", action="store_true", help="every source starts a relation")
    generate.add_argument("--sink", action="store_true", help="every sink ends a relation")
    generate.add_argument("--allow-linear", action="store_true", help="accept linear random trees")
    generate.add_argument(
        "--base", choices=RELATION_BASES, default="linear", help="quiver under random-relations (tree uses --v)"
    )
    generate.add_argument("--arms", action="store_true", help="matched trees with a non-trivial arm")
    generate.add_argument("--field", type=_field, default=None)
    generate.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    batch = commands.add_parser("batch", help="run a directory or manifest of inputs")
    batch.add_argument("target", help="directory of .qv files or a manifest CSV")
    batch.add_argument("--command", dest="batch_command", choices=sorted(COMMANDS), default="check")
    batch.add_argument("--jobs", type=int, default=1, help="worker processes")
    batch.add_argument("--csv", default=None, help="write the summary table to this CSV file")
    batch.add_argument("--fail-fast", action="store_true", help="stop at the first failing input")
    batch.add_argument("--resolution", action="store_true", help="include full resolutions")
    _engine_options(batch)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else (logging.INFO if verbosity == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        field=args.field,
        max_steps=args.max_steps,
        seed=args.seed,
        include_resolution=getattr(args, "resolution", False),
        core_relations=getattr(args, "core_relations", None),
    )


def _emit(report: RunReport, args: argparse.Namespace) -> None:
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(render_report(report, resolution=getattr(args, "resolution", False)))


def _single(args: argparse.Namespace) -> int:
    config = _run_config(args)
    if args.command == "check":
        report = COMMANDS["check"](args.file, config, expected=args.expected)
    else:
        report = COMMANDS[args.command](args.file, config)
    _emit(report, args)
    return report.exit_code


def _generate(args: argparse.Namespace) -> int:
    descriptor = FamilyDescriptor(
        kind=args.family,
        n=args.n,
        m=args.m,
        v=args.v,
        seed=args.seed,
        count=args.count,
        lengths=args.lengths,
        relations=args.relations,
        require_source=args.source,
        require_sink=args.sink,
        allow_linear=args.allow_linear,
        base=args.base,
        with_arms=args.arms,
    )
    try:
        quiver, relations = generate_family(descriptor)
    except FamilyError as exc:
        raise RunnerError(f"infeasible family: {exc}", EXIT_INPUT) from exc
    text = serialize(quiver, relations, args.field)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info("wrote %s to %s", quiver.name, args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _batch(args: argparse.Namespace) -> int:
    try:
        reports = run_batch(
            args.target,
            _run_config(args),
            command=args.batch_command,
            jobs=args.jobs,
            fail_fast=args.fail_fast,
        )
    except ValueError as exc:
        raise RunnerError(str(exc), EXIT_INPUT) from exc

    frame = report_frame(reports)
    counts = summarize_verdicts(frame)
    histogram = dd_histogram(frame)
    exit_code = batch_exit_code(reports)

    if args.json:
        for report in reports:
            print(json.dumps(report.to_dict()))
        summary = {"counts": counts, "histogram": histogram_dict(histogram), "exit_code": exit_code}
        print(json.dumps({"summary": summary}))
    else:
        if not frame.empty:
            print(frame.drop(columns=["timing"]).to_string(index=False))
        print()
        print(", ".join(f"{status}: {count}" for status, count in counts.items()))
        print(render_histogram(histogram))
    if args.csv:
        Path(args.csv).write_bytes(dataframe_to_csv(frame))
    return exit_code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "generate":
            return _generate(args)
        if args.command == "batch":
            return _batch(args)
        return _single(args)
    except RunnerError as exc:
        print(f"domdim: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"domdim: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

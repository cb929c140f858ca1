"""Run the engine and the predictors on documents, family descriptors and manifests."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any

import pandas as pd

from domdim.algebra.bound import BoundQuiverAlgebra, EngineConfig
from domdim.algebra.representation import ResolutionError
from domdim.algebra.resolution import dominant_dimension_of, format_value
from domdim.analysis.predict import MISMATCH, Prediction, ScopeError, predict, reconcile
from domdim.field import FieldSpec
from domdim.quiver.core import RelationSet, ValidationError, validate
from domdim.quiver.dsl import ParseError, QuiverDocument, parse_document
from domdim.quiver.families import FAMILY_KINDS, FamilyError, generate_family, parse_family

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEFECT = 2
EXIT_SCOPE = 3
EXIT_MISMATCH = 4

MANIFEST_NAME = "manifest.csv"


class RunnerError(RuntimeError):
    """Raised when a run cannot produce a report; ``exit_code`` follows the CLI contract."""

    def __init__(self, message: str, exit_code: int = EXIT_DEFECT) -> None:
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every run; ``field`` overrides the document's field when set.

    ``core_relations`` replaces the relations derived on the core of a tree with arms.
    """

    field: FieldSpec | None = None
    max_steps: int | None = None
    seed: int = 0
    include_resolution: bool = False
    core_relations: RelationSet | None = None


def _run_config(config: RunConfig | None = None, **overrides: Any) -> RunConfig:
    """Build a run configuration, allowing call-site overrides."""
    config = config or RunConfig()
    if overrides:
        config = replace(config, **overrides)
    return config


@dataclass
class RunReport:
    """Everything one run produced, as plain data."""

    input: str
    command: str
    seed: int
    field: str
    quiver: dict | None = None
    engine_dd: int | str | None = None
    projectives: list[dict] = field(default_factory=list)
    prediction: dict | None = None
    verdict: dict | None = None
    timing: float = 0.0
    exit_code: int = EXIT_OK
    error: str | None = None
    expected: str | None = None
    pinned_ok: bool | None = None

    @property
    def status(self) -> str:
        if self.error and self.exit_code in (EXIT_INPUT, EXIT_DEFECT):
            return "error"
        if self.pinned_ok is False:
            return MISMATCH
        if self.verdict is not None:
            return self.verdict["status"]
        if self.exit_code == EXIT_SCOPE:
            return "out-of-scope"
        return "ok"

    def to_dict(self) -> dict:
        report = asdict(self)
        report["status"] = self.status
        return report


def load_document(source: str) -> tuple[str, QuiverDocument]:
    """Read a document from a file or build it from a family descriptor like ``truncated:n=6,m=3``."""
    kind = source.split(":", 1)[0]
    if ":" in source and kind in FAMILY_KINDS and not Path(source).exists():
        quiver, relations = generate_family(parse_family(source))
        return source, QuiverDocument(quiver, relations)
    path = Path(source)
    return path.stem, parse_document(path.read_text(encoding="utf-8"))


def _engine_config(document: QuiverDocument, config: RunConfig) -> EngineConfig:
    return EngineConfig(field=config.field or document.field, max_steps=config.max_steps, seed=config.seed)


def _execute(action: Callable[[], RunReport]) -> RunReport:
    """Run ``action`` translating library failures into ``RunnerError`` exit codes."""
    try:
        return action()
    except (ParseError, ValidationError, FamilyError) as exc:
        raise RunnerError(f"invalid input: {exc}", EXIT_INPUT) from exc
    except OSError as exc:
        raise RunnerError(f"cannot read input: {exc}", EXIT_INPUT) from exc
    except ResolutionError as exc:
        raise RunnerError(f"internal defect: {exc}", EXIT_DEFECT) from exc
    except RunnerError:
        raise
    except Exception as exc:
        raise RunnerError(f"internal defect: {exc}", EXIT_DEFECT) from exc


def _new_report(name: str, command: str, engine: EngineConfig, document: QuiverDocument) -> RunReport:
    info = validate(document.quiver, document.relations)
    summary = info.to_dict()
    summary.update(
        name=document.quiver.name,
        vertices=len(document.quiver.vertices),
        arrows=len(document.quiver.arrows),
        relations=[list(rel) for rel in document.relations],
    )
    return RunReport(input=name, command=command, seed=engine.seed, field=str(engine.field), quiver=summary)


def _compute_into(report: RunReport, document: QuiverDocument, engine: EngineConfig, include_resolution: bool) -> float | int:
    algebra = BoundQuiverAlgebra(document.quiver, document.relations, config=engine)
    result = dominant_dimension_of(algebra)
    report.engine_dd = format_value(result.value)
    report.projectives = [r.to_dict(include_resolution=include_resolution) for r in result.reports]
    return result.value


def _predict_into(
    report: RunReport, document: QuiverDocument, engine: EngineConfig, core_relations: RelationSet | None = None
) -> Prediction | None:
    try:
        prediction = predict(document.quiver, document.relations, config=engine, core_relations=core_relations)
    except ScopeError as exc:
        report.exit_code = EXIT_SCOPE
        report.error = str(exc)
        prediction = exc.fallback
    if prediction is not None:
        report.prediction = prediction.to_dict()
    return prediction


def run_compute(source: str, config: RunConfig | None = None, **overrides: Any) -> RunReport:
    """Engine only: the dominant dimension and one resolution summary per projective."""
    config = _run_config(config, **overrides)

    def action() -> RunReport:
        started = time.perf_counter()
        name, document = load_document(source)
        engine = _engine_config(document, config)
        report = _new_report(name, "compute", engine, document)
        _compute_into(report, document, engine, config.include_resolution)
        report.timing = time.perf_counter() - started
        return report

    return _execute(action)


def run_predict(source: str, config: RunConfig | None = None, **overrides: Any) -> RunReport:
    """Predictors only; out-of-scope inputs report the generic bound with exit code 3."""
    config = _run_config(config, **overrides)

    def action() -> RunReport:
        started = time.perf_counter()
        name, document = load_document(source)
        engine = _engine_config(document, config)
        report = _new_report(name, "predict", engine, document)
        _predict_into(report, document, engine, config.core_relations)
        report.timing = time.perf_counter() - started
        return report

    return _execute(action)


def run_check(
    source: str, config: RunConfig | None = None, *, expected: str | None = None, **overrides: Any
) -> RunReport:
    """Engine, predictor and verdict; ``expected`` pins the engine value as well."""
    config = _run_config(config, **overrides)

    def action() -> RunReport:
        started = time.perf_counter()
        name, document = load_document(source)
        engine = _engine_config(document, config)
        report = _new_report(name, "check", engine, document)
        value = _compute_into(report, document, engine, config.include_resolution)
        prediction = _predict_into(report, document, engine, config.core_relations)
        if prediction is not None:
            verdict = reconcile(prediction, value)
            report.verdict = verdict.to_dict()
            if not verdict.ok:
                report.exit_code = EXIT_MISMATCH
        if expected:
            report.expected = str(expected)
            report.pinned_ok = str(report.engine_dd) == str(expected)
            if not report.pinned_ok:
                logger.error("%s: pinned %s, engine computed %s", name, expected, report.engine_dd)
                report.exit_code = EXIT_MISMATCH
        report.timing = time.perf_counter() - started
        return report

    return _execute(action)


COMMANDS: dict[str, Callable[..., RunReport]] = {
    "compute": run_compute,
    "predict": run_predict,
    "check": run_check,
}


def read_manifest(target: str | Path) -> pd.DataFrame:
    """Batch inputs as a frame with ``source`` and ``expected`` columns.

    ``target`` is a manifest CSV (columns ``path`` or ``family``, optionally
    ``expected``) or a directory; a directory uses its ``manifest.csv`` when
    present and otherwise every ``*.qv`` file in name order. Other columns,
    such as the corpus ``alias``, are ignored.
    """
    target = Path(target)
    if target.is_dir():
        manifest = target / MANIFEST_NAME
        if not manifest.exists():
            files = sorted(target.glob("*.qv"))
            return pd.DataFrame({"source": [str(f) for f in files], "expected": [""] * len(files)})
        target = manifest

    frame = pd.read_csv(target, dtype=str, keep_default_na=False)
    if "path" not in frame.columns and "family" not in frame.columns:
        raise ValueError(f"Missing required columns: one of ['family', 'path'] in {target}")
    if "expected" not in frame.columns:
        frame["expected"] = ""
    if frame.empty:
        return pd.DataFrame({"source": pd.Series(dtype=str), "expected": pd.Series(dtype=str)})

    def source(row: pd.Series) -> str:
        path = row.get("path", "")
        if path:
            return str((target.parent / path).resolve()) if not Path(path).is_absolute() else path
        family = row.get("family", "")
        if not family:
            raise ValueError(f"Manifest row without path or family: {row.to_dict()}")
        return family

    return pd.DataFrame(
        {"source": frame.apply(source, axis=1).astype(str), "expected": frame["expected"].str.strip()}
    ).reset_index(drop=True)


def _batch_item(item: tuple[str, str, str, RunConfig]) -> RunReport:
    source, expected, command, config = item
    try:
        if command == "check":
            return run_check(source, config, expected=expected or None)
        return COMMANDS[command](source, config)
    except RunnerError as exc:
        return RunReport(
            input=source,
            command=command,
            seed=config.seed,
            field=str(config.field) if config.field else "document",
            exit_code=exc.exit_code,
            error=str(exc),
            expected=expected or None,
        )


def run_batch(
    target: str | Path,
    config: RunConfig | None = None,
    *,
    command: str = "check",
    jobs: int = 1,
    fail_fast: bool = False,
    **overrides: Any,
) -> list[RunReport]:
    """One report per manifest row, in manifest order, continuing past failures."""
    if command not in COMMANDS:
        raise ValueError(f"Unknown batch command {command!r}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    config = _run_config(config, **overrides)
    try:
        manifest = read_manifest(target)
    except (OSError, ValueError) as exc:
        raise RunnerError(f"cannot read batch input {target}: {exc}", EXIT_INPUT) from exc

    items = [(row.source, row.expected, command, config) for row in manifest.itertuples(index=False)]
    logger.info("batch: %d inputs, %d job(s)", len(items), jobs)
    if jobs == 1 or len(items) <= 1:
        reports = []
        for item in items:
            report = _batch_item(item)
            reports.append(report)
            if fail_fast and report.exit_code not in (EXIT_OK, EXIT_SCOPE):
                break
        return reports

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_batch_item, items))


def batch_exit_code(reports: list[RunReport]) -> int:
    """4 on any mismatch, else the worst input/defect code, else 0."""
    if any(r.status == MISMATCH for r in reports):
        return EXIT_MISMATCH
    failures = [r.exit_code for r in reports if r.status == "error"]
    return max(failures, default=EXIT_OK)

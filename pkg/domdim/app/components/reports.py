"""Table, histogram and text helpers for rendering run reports."""

from __future__ import annotations

import math

import pandas as pd

from domdim.services.runner import RunReport

REPORT_COLUMNS = [
    "input",
    "command",
    "status",
    "engine_dd",
    "predicted",
    "theorem",
    "expected",
    "exit_code",
    "seed",
    "field",
    "timing",
]
STATUSES = ("agree", "within-interval", "MISMATCH", "out-of-scope", "ok", "error")


def report_frame(reports: list[RunReport]) -> pd.DataFrame:
    """One row per report, in input order."""
    rows: list[dict] = []
    for report in reports:
        prediction = report.prediction or {}
        verdict = report.verdict or {}
        rows.append(
            {
                "input": report.input,
                "command": report.command,
                "status": report.status,
                "engine_dd": "" if report.engine_dd is None else str(report.engine_dd),
                "predicted": verdict.get("predicted", _describe(prediction)),
                "theorem": prediction.get("theorem", ""),
                "expected": report.expected or "",
                "exit_code": report.exit_code,
                "seed": report.seed,
                "field": report.field,
                "timing": round(report.timing, 4),
            }
        )
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def _describe(prediction: dict) -> str:
    if not prediction:
        return ""
    if prediction.get("interval"):
        lo, hi = prediction["interval"]
        return str(lo) if lo == hi else f"[{lo}, {hi}]"
    return str(prediction.get("value", ""))


def summarize_verdicts(frame: pd.DataFrame) -> dict[str, int]:
    """Counts per status plus the total; every status key is always present."""
    counts = {status: 0 for status in STATUSES}
    if not frame.empty:
        for status, count in frame["status"].value_counts().items():
            counts[str(status)] = int(count)
    counts["total"] = int(len(frame))
    return counts


def _dd_key(value: str) -> float:
    return math.inf if value == "infinity" else float(value)


def dd_histogram(frame: pd.DataFrame) -> pd.DataFrame:
    """Number of runs per engine value, ordered numerically with infinity last."""
    if frame.empty or "engine_dd" not in frame:
        return pd.DataFrame(columns=["dd", "count"])
    values = frame.loc[frame["engine_dd"] != "", "engine_dd"]
    if values.empty:
        return pd.DataFrame(columns=["dd", "count"])
    counts = values.value_counts().rename_axis("dd").reset_index(name="count")
    counts["order"] = counts["dd"].map(_dd_key)
    return counts.sort_values("order").drop(columns="order").reset_index(drop=True)


def histogram_dict(histogram: pd.DataFrame) -> dict[str, int]:
    return {str(dd): int(count) for dd, count in zip(histogram["dd"], histogram["count"])}


def render_histogram(histogram: pd.DataFrame, width: int = 40) -> str:
    """Horizontal text bars, one line per engine value."""
    if histogram.empty:
        return "(no engine values)"
    peak = int(histogram["count"].max())
    label_width = max(len(str(dd)) for dd in histogram["dd"])
    lines = []
    for dd, count in zip(histogram["dd"], histogram["count"]):
        bar = "#" * max(1, round(width * int(count) / peak))
        lines.append(f"dd {str(dd).rjust(label_width)} | {bar} {count}")
    return "\n".join(lines)


def projective_frame(report: RunReport) -> pd.DataFrame:
    """Per-projective dominant dimensions with their resolution terms."""
    rows = [
        {"vertex": p["vertex"], "dd": str(p["dd"]), "resolution": " -> ".join(p.get("terms", []))}
        for p in report.projectives
    ]
    return pd.DataFrame(rows, columns=["vertex", "dd", "resolution"])


def render_resolution(projective: dict) -> str:
    """Pretty-print one projective's resolution, listing its path basis when available."""
    lines = [f"P({projective['vertex']}): dd = {projective['dd']}"]
    if projective.get("basis"):
        lines.append(f"  basis: {', '.join(projective['basis'])}")
    terms = projective.get("terms", [])
    for step, term in enumerate(terms):
        lines.append(f"  E{step}: {term}")
    resolution = projective.get("resolution") or {}
    if resolution.get("truncated"):
        lines.append("  ... (cap reached)")
    return "\n".join(lines)


def render_report(report: RunReport, *, resolution: bool = False) -> str:
    """Human-readable summary of a single run."""
    lines = [f"{report.input} [{report.command}] field={report.field} seed={report.seed}"]
    if report.quiver:
        q = report.quiver
        shape = "linear" if q.get("is_linear") else ("tree" if q.get("is_tree") else "acyclic")
        lines.append(
            f"quiver {q.get('name')}: {q.get('vertices')} vertices, {q.get('arrows')} arrows, "
            f"{len(q.get('relations', []))} relations ({shape})"
        )
    if report.engine_dd is not None:
        lines.append(f"dominant dimension: {report.engine_dd}")
        table = projective_frame(report)
        if not table.empty:
            lines.append(table.to_string(index=False))
        if resolution:
            lines.extend(render_resolution(p) for p in report.projectives)
    if report.prediction:
        prediction = report.prediction
        lines.append(f"prediction: {_describe(prediction)} ({prediction['theorem']})")
        lines.extend(f"  note: {note}" for note in prediction.get("notes", []))
        failures = prediction.get("evidence", {}).get("failures", [])
        lines.extend(f"  witness: {w}" for w in failures)
    if report.verdict:
        lines.append(f"verdict: {report.verdict['status']}")
        if report.verdict.get("detail"):
            lines.append(f"  {report.verdict['detail']}")
    if report.expected:
        lines.append(f"pinned: {report.expected} ({'ok' if report.pinned_ok else 'MISMATCH'})")
    if report.error:
        lines.append(f"error: {report.error}")
    return "\n".join(lines)


def dataframe_to_csv(df: pd.DataFrame) -> bytes:
    """Serialize frame to CSV bytes."""
    return df.to_csv(index=False).encode("utf-8")

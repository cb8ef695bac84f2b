"""Machine-readable result emission: JSON + CSV summaries and case bundles.

Everything written here is deterministic: equal inputs produce
byte-identical files. Reals are serialized with six decimal places
(round-half-even) so golden files survive platform changes, files are
written atomically (temp file + rename), and per-example records are
emitted alongside the aggregates so every percentage in the report can
be recomputed from the same directory.
"""

from __future__ import annotations

import difflib
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusStats, Prediction, RepairExample
from .errors import EnvironmentFailure, InputError
from .metrics import BEHAVIOR_ORDER, BehaviorClass, EvalRecord, SummaryStats, aggregate
from .syntax import SyntaxVerdict, check_syntax
from .tracking import CheckpointRecord, CheckpointSeries

TOOL_NAME = "repairdx"

CHECKPOINTS_HEADER = (
    "step,n,syntax_validity,exact_match,copy_rate,modification_rate,"
    "ned_mean,ned_median,ned_std,eval_loss"
)
BEHAVIOR_HEADER = "class,count,percentage"
TABLE1_HEADER = "metric,mean,median,std"


def _tool_version() -> str:
    try:
        from importlib.metadata import version

        return version(TOOL_NAME)
    except Exception:
        return "0.0.0+unpackaged"


def file_digest(path) -> str:
    """SHA-256 of a file's bytes (stable content hash for provenance)."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class Provenance:
    """Everything needed to reproduce a report from scratch."""

    seed: int
    parser: str
    inputs: dict[str, str] = field(default_factory=dict)  # label -> sha256
    config: dict = field(default_factory=dict)
    tool: str = TOOL_NAME
    version: str = field(default_factory=_tool_version)

    def to_obj(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "seed": self.seed,
            "parser": self.parser,
            "config": dict(sorted(self.config.items())),
            "inputs": dict(sorted(self.inputs.items())),
        }


@dataclass
class EvalReport:
    """Full result of an evaluation or tracking run."""

    corpus_stats: CorpusStats
    series: CheckpointSeries
    final: CheckpointRecord
    behavior_counts: dict[BehaviorClass, int]
    table1: list[tuple[str, SummaryStats]]
    provenance: Provenance
    records_by_step: dict[int, list[EvalRecord]] = field(default_factory=dict)


@dataclass
class Case:
    """One qualitative inspection case with recomputed diffs."""

    example_id: str
    buggy: str
    fixed: str
    prediction: str
    behavior: BehaviorClass
    verdict: SyntaxVerdict
    diff_vs_buggy: str
    diff_vs_fixed: str


@dataclass
class CaseBundle:
    seed: int
    cases: list[Case] = field(default_factory=list)


def behavior_distribution(records) -> dict[BehaviorClass, tuple[int, float]]:
    """Count and percentage per behavior class; all classes always present."""
    records = list(records)
    if not records:
        raise InputError("cannot build a behavior distribution from zero records")
    counts = {cls: 0 for cls in BEHAVIOR_ORDER}
    for r in records:
        counts[r.behavior] += 1
    n = len(records)
    return {cls: (c, 100.0 * c / n) for cls, c in counts.items()}


def _unified(a: str, b: str, a_name: str, b_name: str) -> str:
    lines = difflib.unified_diff(
        a.splitlines(), b.splitlines(), fromfile=a_name, tofile=b_name, lineterm=""
    )
    return "\n".join(lines)


def extract_cases(
    examples: list[RepairExample],
    predictions: dict[str, Prediction],
    records: list[EvalRecord],
    k: int,
    seed: int,
    parser=None,
) -> CaseBundle:
    """Seeded deterministic sample of k cases, with both diffs rendered.

    ``predictions`` maps example id to the rank-0 prediction the records
    were computed from; diffs are recomputed here from the stored texts,
    never copied from elsewhere.
    """
    if k <= 0:
        raise InputError(f"case count must be positive, got {k}")
    if k > len(records):
        raise InputError(f"asked for {k} cases but only {len(records)} records exist")
    by_id = {ex.id: ex for ex in examples}
    ranked = sorted(
        records,
        key=lambda r: hashlib.sha256(f"{seed}:case:{r.example_id}".encode()).hexdigest(),
    )
    chosen = sorted(ranked[:k], key=lambda r: r.example_id)
    cases: list[Case] = []
    for record in chosen:
        ex = by_id.get(record.example_id)
        if ex is None:
            raise InputError(f"record references unknown example {record.example_id!r}")
        pred = predictions.get(record.example_id)
        if pred is None:
            raise InputError(f"no prediction available for case {record.example_id!r}")
        text = pred.prediction
        cases.append(
            Case(
                example_id=ex.id,
                buggy=ex.buggy,
                fixed=ex.fixed,
                prediction=text,
                behavior=record.behavior,
                verdict=check_syntax(text, parser=parser),
                diff_vs_buggy=_unified(ex.buggy, text, "buggy", "prediction"),
                diff_vs_fixed=_unified(text, ex.fixed, "prediction", "fixed"),
            )
        )
    return CaseBundle(seed=seed, cases=cases)


def build_table1(records: list[EvalRecord]) -> list[tuple[str, SummaryStats]]:
    """Exact-match and NED summaries over one record set."""
    if not records:
        raise InputError("cannot build summary table from zero records")
    em = aggregate([1.0 if r.exact else 0.0 for r in records])
    ned = aggregate([r.ned for r in records])
    return [("Exact Match", em), ("Normalized Edit Distance", ned)]


def build_report(
    corpus_stats: CorpusStats,
    series: CheckpointSeries,
    records_by_step: dict[int, list[EvalRecord]],
    provenance: Provenance,
) -> EvalReport:
    """Assemble the full report from a tracking (or single-step) run."""
    final = series.final
    final_records = records_by_step.get(final.step)
    if not final_records:
        raise InputError(f"no per-example records for final step {final.step}")
    distribution = behavior_distribution(final_records)
    return EvalReport(
        corpus_stats=corpus_stats,
        series=series,
        final=final,
        behavior_counts={cls: c for cls, (c, _pct) in distribution.items()},
        table1=build_table1(final_records),
        provenance=provenance,
        records_by_step=records_by_step,
    )


# ----------------------------------------------------------------------
# serialization helpers

def _f(x: float) -> str:
    """Fixed six-decimal CSV form (round-half-even via format)."""
    return f"{x:.6f}"


def _r(x: float | None):
    """JSON form: six decimals, or None."""
    return None if x is None else round(x, 6)


def _stats_obj(s: SummaryStats) -> dict:
    return {
        "mean": _r(s.mean),
        "median": _r(s.median),
        "std": _r(s.std),
        "min": _r(s.min),
        "max": _r(s.max),
        "n": s.n,
    }


def _checkpoint_obj(r: CheckpointRecord) -> dict:
    return {
        "step": r.step,
        "n": r.n,
        "syntax_validity_pct": _r(r.syntax_validity_pct),
        "exact_match_pct": _r(r.exact_match_pct),
        "copy_pct": _r(r.copy_pct),
        "modification_pct": _r(r.modification_pct),
        "non_copy_pct": _r(r.non_copy_pct),
        "near_copy_count": r.near_copy_count,
        "ned": _stats_obj(r.ned_stats),
        "eval_loss": _r(r.eval_loss),
    }


def _record_obj(r: EvalRecord) -> dict:
    return {
        "id": r.example_id,
        "step": r.step,
        "behavior": r.behavior.value,
        "exact": r.exact,
        "edit_distance": r.edit_distance,
        "ned": _r(r.ned),
        "syntax_valid": r.syntax_valid,
        "near_copy": r.near_copy,
        "pred_len": r.pred_len,
    }


def _corpus_stats_obj(s: CorpusStats) -> dict:
    return {
        "n_examples": s.n_examples,
        "n_per_split": s.n_per_split,
        "mean_token_length": _r(s.mean_token_length),
        "median_token_length": _r(s.median_token_length),
        "identity_pairs": s.identity_pairs,
        "identity_pair_fraction": _r(s.identity_pair_fraction),
        "duplicate_buggy": s.duplicate_buggy,
    }


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(f".{path.name}.tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise EnvironmentFailure(f"cannot write {path}: {exc}") from None


def render_checkpoints_csv(series: CheckpointSeries) -> str:
    lines = [CHECKPOINTS_HEADER]
    for r in series.records:
        loss = "" if r.eval_loss is None else _f(r.eval_loss)
        lines.append(
            f"{r.step},{r.n},{_f(r.syntax_validity_pct)},{_f(r.exact_match_pct)},"
            f"{_f(r.copy_pct)},{_f(r.modification_pct)},{_f(r.ned_stats.mean)},"
            f"{_f(r.ned_stats.median)},{_f(r.ned_stats.std)},{loss}"
        )
    return "\n".join(lines) + "\n"


def render_behavior_csv(behavior_counts: dict[BehaviorClass, int]) -> str:
    total = sum(behavior_counts.values())
    if total == 0:
        raise InputError("behavior counts are all zero")
    lines = [BEHAVIOR_HEADER]
    for cls in BEHAVIOR_ORDER:
        count = behavior_counts.get(cls, 0)
        lines.append(f"{cls.value},{count},{_f(100.0 * count / total)}")
    return "\n".join(lines) + "\n"


def render_table1_csv(table1: list[tuple[str, SummaryStats]]) -> str:
    lines = [TABLE1_HEADER]
    for name, stats in table1:
        lines.append(f"{name},{_f(stats.mean)},{_f(stats.median)},{_f(stats.std)}")
    return "\n".join(lines) + "\n"


def render_report_json(report: EvalReport) -> str:
    obj = {
        "provenance": report.provenance.to_obj(),
        "corpus_stats": _corpus_stats_obj(report.corpus_stats),
        "series": [_checkpoint_obj(r) for r in report.series.records],
        "final": _checkpoint_obj(report.final),
        "behavior_counts": {
            cls.value: report.behavior_counts.get(cls, 0) for cls in BEHAVIOR_ORDER
        },
        "table1": [
            {"metric": name, **_stats_obj(stats)} for name, stats in report.table1
        ],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def render_records_jsonl(records_by_step: dict[int, list[EvalRecord]]) -> str:
    lines = []
    for step in sorted(records_by_step):
        for r in records_by_step[step]:
            lines.append(json.dumps(_record_obj(r), ensure_ascii=False))
    return "\n".join(lines) + "\n" if lines else ""


def emit_report(report: EvalReport, out_dir) -> list[Path]:
    """Write report.json, checkpoints.csv, behavior.csv, table1.csv, and
    records.jsonl into ``out_dir``. Returns the written paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise EnvironmentFailure(f"cannot create output directory {out}: {exc}") from None
    files = {
        "report.json": render_report_json(report),
        "checkpoints.csv": render_checkpoints_csv(report.series),
        "behavior.csv": render_behavior_csv(report.behavior_counts),
        "table1.csv": render_table1_csv(report.table1),
    }
    records_text = render_records_jsonl(report.records_by_step)
    if records_text:
        files["records.jsonl"] = records_text
    written = []
    for name, text in files.items():
        path = out / name
        _atomic_write(path, text)
        written.append(path)
    return written


def _case_obj(case: Case) -> dict:
    return {
        "id": case.example_id,
        "behavior": case.behavior.value,
        "syntax_valid": case.verdict.valid,
        "error_count": case.verdict.error_count,
        "buggy": case.buggy,
        "fixed": case.fixed,
        "prediction": case.prediction,
        "diff_vs_buggy": case.diff_vs_buggy,
        "diff_vs_fixed": case.diff_vs_fixed,
    }


def render_cases_json(bundle: CaseBundle) -> str:
    obj = {"seed": bundle.seed, "k": len(bundle.cases),
           "cases": [_case_obj(c) for c in bundle.cases]}
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit_cases(bundle: CaseBundle, out_dir) -> Path:
    """Write cases.json into ``out_dir``; returns the path."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise EnvironmentFailure(f"cannot create output directory {out}: {exc}") from None
    path = out / "cases.json"
    _atomic_write(path, render_cases_json(bundle))
    return path

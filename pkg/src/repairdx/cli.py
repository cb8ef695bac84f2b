"""Command-line interface.

Subcommands:

* ``stats``    — corpus shape summary (JSON on stdout)
* ``check``    — syntax verdicts for a file of snippets (JSONL on stdout)
* ``abstract`` — identifier abstraction of a corpus (or conformance check)
* ``eval``     — evaluate one prediction set and emit a report
* ``track``    — evaluate a multi-checkpoint prediction dump
* ``inspect``  — emit a qualitative case bundle

Exit status: 0 success, 1 input/usage error, 2 environment failure.
All flags are long-form; ``--help`` on any subcommand documents the file
schemas it consumes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .abstraction import abstract_identifiers, check_conformance
from .bindings import get_parser
from .corpus import (
    corpus_stats,
    filter_split,
    load_examples,
    load_predictions,
    predictions_by_step,
    TrackingConfig,
)
from .errors import EnvironmentFailure, InputError, UsageError
from .report import (
    Provenance,
    build_report,
    emit_cases,
    emit_report,
    extract_cases,
    file_digest,
)
from .syntax import check_syntax
from .tracking import (
    build_series,
    evaluate_examples,
    load_loss_log,
    run_tracking,
    summarize_records,
)

_EXAMPLES_SCHEMA = (
    "examples file: JSON Lines, one object per line: "
    '{"id": str, "buggy": str, "fixed": str, "split"?: str}'
)
_PREDICTIONS_SCHEMA = (
    "predictions file: JSON Lines, one object per line: "
    '{"id": str, "step": int, "prediction": str, "rank"?: int (default 0)}'
)
_LOSS_SCHEMA = (
    "loss log: JSON Lines, one object per line: "
    '{"step": int, "train_loss"?: float, "eval_loss"?: float}'
)


@dataclass
class RunConfig:
    """Validated invocation: one command plus everything it needs."""

    command: str
    corpus: Path | None = None
    preds: Path | None = None
    snippets: Path | None = None
    out_dir: Path | None = None
    field_name: str = "code"
    split: str | None = None
    seed: int = 42
    sample_size: int = 100
    interval_steps: int = 500
    fixed_sample: bool = False
    em_normalize: str = "none"
    ned_tokens: bool = False
    strict_gaps: bool = False
    verify_only: bool = False
    parser: str = "builtin"
    workers: int = 1
    cases: int = 0
    step: int | None = None
    loss_log: Path | None = None
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not exits."""

    def error(self, message):
        raise UsageError(message)


def _add_common(sub: argparse.ArgumentParser, workers_default: int) -> None:
    sub.add_argument("--parser", default="builtin",
                     help="parser binding to use (default: builtin)")
    sub.add_argument("--seed", type=int, default=42,
                     help="seed for all deterministic sampling (default: 42)")
    sub.add_argument("--workers", type=int, default=workers_default,
                     help="worker processes for per-example evaluation "
                          f"(default: {workers_default})")


def build_arg_parser() -> _Parser:
    workers_default = os.cpu_count() or 1
    top = _Parser(
        prog="repairdx",
        description="Diagnostics for program-repair model outputs: syntax "
                    "validity, repair metrics, behavior tracking, reports.",
    )
    sub = top.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("stats", help="summarize a corpus",
                       description=f"Summarize corpus shape. {_EXAMPLES_SCHEMA}")
    p.add_argument("--corpus", required=True, type=Path, help="examples JSONL file")
    p.add_argument("--split", default=None, help="restrict to one split label")

    p = sub.add_parser(
        "check", help="syntax-check a file of snippets",
        description="Emit one syntax verdict per snippet as JSONL on stdout. "
                    'Input: JSON Lines {"id": str, "<field>": str}; choose the '
                    "text field with --field (default: code).")
    p.add_argument("--in", dest="snippets", required=True, type=Path,
                   help="snippets JSONL file")
    p.add_argument("--field", dest="field_name", default="code",
                   help="name of the text field to check (default: code)")
    _add_common(p, workers_default)

    p = sub.add_parser(
        "abstract", help="abstract identifiers in a corpus",
        description="Rewrite identifiers to VAR_n/METHOD_n/TYPE_n placeholders. "
                    f"{_EXAMPLES_SCHEMA} Writes abstracted.jsonl plus "
                    "mappings.jsonl (one sidecar mapping per example) to --out. "
                    "With --verify-only, instead checks that the corpus is "
                    "already abstracted and writes conformance.jsonl.")
    p.add_argument("--corpus", required=True, type=Path, help="examples JSONL file")
    p.add_argument("--out", dest="out_dir", required=True, type=Path,
                   help="output directory")
    p.add_argument("--verify-only", action="store_true",
                   help="check conformance instead of abstracting")
    p.add_argument("--strict-gaps", action="store_true",
                   help="flag placeholder index gaps (verify mode)")
    _add_common(p, workers_default)

    p = sub.add_parser(
        "eval", help="evaluate one prediction set",
        description=f"Evaluate a single-checkpoint prediction set. "
                    f"{_EXAMPLES_SCHEMA} {_PREDICTIONS_SCHEMA}")
    p.add_argument("--corpus", required=True, type=Path, help="examples JSONL file")
    p.add_argument("--preds", required=True, type=Path, help="predictions JSONL file")
    p.add_argument("--out", dest="out_dir", required=True, type=Path,
                   help="output directory for report files")
    p.add_argument("--split", default=None, help="restrict corpus to one split")
    p.add_argument("--cases", type=int, default=0,
                   help="also emit a case bundle of this size")
    p.add_argument("--em-normalize", choices=["none", "whitespace"], default="none",
                   help="exact-match comparison mode (default: none)")
    p.add_argument("--ned-tokens", action="store_true",
                   help="compute NED over whitespace tokens instead of characters")
    _add_common(p, workers_default)

    p = sub.add_parser(
        "track", help="evaluate a multi-checkpoint dump",
        description=f"Evaluate every training step in a prediction dump, "
                    f"sampling the validation set per checkpoint. "
                    f"{_EXAMPLES_SCHEMA} {_PREDICTIONS_SCHEMA} {_LOSS_SCHEMA}")
    p.add_argument("--corpus", required=True, type=Path, help="examples JSONL file")
    p.add_argument("--preds", required=True, type=Path, help="predictions JSONL file")
    p.add_argument("--out", dest="out_dir", required=True, type=Path,
                   help="output directory for report files")
    p.add_argument("--split", default=None, help="restrict corpus to one split")
    p.add_argument("--sample", dest="sample_size", type=int, default=100,
                   help="validation examples per checkpoint (default: 100)")
    p.add_argument("--interval", dest="interval_steps", type=int, default=500,
                   help="intended step cadence, recorded in provenance "
                        "(default: 500)")
    p.add_argument("--fixed-sample", action="store_true",
                   help="reuse one sample across checkpoints instead of "
                        "re-drawing per step")
    p.add_argument("--loss-log", type=Path, default=None,
                   help="optional loss log to attach eval_loss by step")
    p.add_argument("--cases", type=int, default=0,
                   help="also emit a case bundle from the final checkpoint")
    p.add_argument("--em-normalize", choices=["none", "whitespace"], default="none",
                   help="exact-match comparison mode (default: none)")
    p.add_argument("--ned-tokens", action="store_true",
                   help="compute NED over whitespace tokens instead of characters")
    _add_common(p, workers_default)

    p = sub.add_parser(
        "inspect", help="emit a qualitative case bundle",
        description=f"Sample cases with diffs for manual inspection. "
                    f"{_EXAMPLES_SCHEMA} {_PREDICTIONS_SCHEMA}")
    p.add_argument("--corpus", required=True, type=Path, help="examples JSONL file")
    p.add_argument("--preds", required=True, type=Path, help="predictions JSONL file")
    p.add_argument("--out", dest="out_dir", required=True, type=Path,
                   help="output directory for cases.json")
    p.add_argument("--cases", type=int, default=10,
                   help="number of cases to sample (default: 10)")
    p.add_argument("--step", type=int, default=None,
                   help="checkpoint step to inspect (default: last step present)")
    p.add_argument("--split", default=None, help="restrict corpus to one split")
    _add_common(p, workers_default)
    return top


def parse_args(argv=None) -> RunConfig:
    ns = build_arg_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    for name in vars(ns):
        if hasattr(cfg, name):
            setattr(cfg, name, getattr(ns, name))
    if cfg.workers < 1:
        raise UsageError(f"--workers must be at least 1, got {cfg.workers}")
    if cfg.seed < 0:
        raise UsageError(f"--seed must be non-negative, got {cfg.seed}")
    return cfg


# ----------------------------------------------------------------------
# command bodies

def _load_corpus(cfg: RunConfig):
    examples = load_examples(cfg.corpus)
    if cfg.split is not None:
        examples = filter_split(examples, cfg.split)
    return examples


def _provenance(cfg: RunConfig, **extra_config) -> Provenance:
    inputs = {}
    if cfg.corpus is not None:
        inputs["corpus"] = file_digest(cfg.corpus)
    if cfg.preds is not None:
        inputs["predictions"] = file_digest(cfg.preds)
    if cfg.loss_log is not None:
        inputs["loss_log"] = file_digest(cfg.loss_log)
    config = {
        "em_normalize": cfg.em_normalize,
        "ned_tokens": cfg.ned_tokens,
        "split": cfg.split,
        **extra_config,
    }
    return Provenance(seed=cfg.seed, parser=cfg.parser, inputs=inputs, config=config)


def _cmd_stats(cfg: RunConfig) -> int:
    stats = corpus_stats(_load_corpus(cfg))
    obj = {
        "n_examples": stats.n_examples,
        "n_per_split": stats.n_per_split,
        "mean_token_length": round(stats.mean_token_length, 6),
        "median_token_length": round(stats.median_token_length, 6),
        "identity_pairs": stats.identity_pairs,
        "identity_pair_fraction": round(stats.identity_pair_fraction, 6),
        "duplicate_buggy": stats.duplicate_buggy,
    }
    print(json.dumps(obj, indent=2))
    return 0


def _cmd_check(cfg: RunConfig) -> int:
    parser = get_parser(cfg.parser)
    path = cfg.snippets
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    total = 0
    valid = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(obj, dict) or "id" not in obj:
            raise InputError(f"{path}:{lineno}: expected an object with an 'id' field")
        if cfg.field_name not in obj:
            raise InputError(
                f"{path}:{lineno}: no field {cfg.field_name!r} "
                f"(have: {', '.join(sorted(obj))})"
            )
        code = obj[cfg.field_name]
        if not isinstance(code, str):
            raise InputError(f"{path}:{lineno}: field {cfg.field_name!r} must be str")
        verdict = check_syntax(code, parser=parser)
        total += 1
        valid += 1 if verdict.valid else 0
        print(json.dumps({
            "id": obj["id"],
            "valid": verdict.valid,
            "error_count": verdict.error_count,
            "error_spans": [list(s) for s in verdict.error_spans],
        }))
    if total == 0:
        raise InputError(f"{path}: no snippets found")
    pct = 100.0 * valid / total
    print(f"checked {total} snippet(s): {valid} valid ({pct:.1f}%)", file=sys.stderr)
    return 0


def _cmd_abstract(cfg: RunConfig) -> int:
    examples = _load_corpus(cfg)
    out = cfg.out_dir
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise EnvironmentFailure(f"cannot create output directory {out}: {exc}") from None
    parser = get_parser(cfg.parser)
    if cfg.verify_only:
        lines = []
        bad = 0
        for ex in examples:
            entry = {"id": ex.id}
            clean = True
            for fname in ("buggy", "fixed"):
                report = check_conformance(getattr(ex, fname), strict_gaps=cfg.strict_gaps)
                entry[fname] = [
                    {"span": list(v.span), "message": v.message}
                    for v in report.violations
                ]
                clean = clean and report.conformant
            entry["conformant"] = clean
            bad += 0 if clean else 1
            lines.append(json.dumps(entry, ensure_ascii=False))
        (out / "conformance.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"checked {len(examples)} example(s): "
              f"{len(examples) - bad} conformant, {bad} with violations",
              file=sys.stderr)
        print(out / "conformance.jsonl")
        return 0
    abstracted_lines = []
    mapping_lines = []
    for ex in examples:
        try:
            new_buggy, map_buggy = abstract_identifiers(ex.buggy, parser=parser)
            new_fixed, map_fixed = abstract_identifiers(ex.fixed, parser=parser)
        except InputError as exc:
            raise InputError(f"example {ex.id!r}: {exc}") from None
        record = {
            "id": ex.id, "buggy": new_buggy, "fixed": new_fixed,
            "split": ex.split,
        }
        abstracted_lines.append(json.dumps(record, ensure_ascii=False))
        mapping_lines.append(json.dumps(
            {"id": ex.id, "buggy": map_buggy.to_obj(), "fixed": map_fixed.to_obj()},
            ensure_ascii=False,
        ))
    (out / "abstracted.jsonl").write_text("\n".join(abstracted_lines) + "\n", encoding="utf-8")
    (out / "mappings.jsonl").write_text("\n".join(mapping_lines) + "\n", encoding="utf-8")
    print(f"abstracted {len(examples)} example(s)", file=sys.stderr)
    print(out / "abstracted.jsonl")
    return 0


def _single_step(preds_by_step: dict, requested: int | None):
    if requested is not None:
        if requested not in preds_by_step:
            have = ", ".join(str(s) for s in sorted(preds_by_step))
            raise InputError(f"no predictions at step {requested}; steps present: {have}")
        return requested
    return max(preds_by_step)


def _cmd_eval(cfg: RunConfig) -> int:
    examples = _load_corpus(cfg)
    predictions = load_predictions(cfg.preds, corpus=examples)
    by_step = predictions_by_step(predictions)
    if not by_step:
        raise InputError("prediction set contains no rank-0 predictions")
    if len(by_step) > 1:
        steps = ", ".join(str(s) for s in sorted(by_step))
        raise InputError(
            f"eval expects a single-checkpoint prediction set but found "
            f"steps {steps}; use the track command for multi-step dumps"
        )
    step = next(iter(by_step))
    step_preds = by_step[step]
    covered = [ex for ex in examples if ex.id in step_preds]
    parser = get_parser(cfg.parser)
    records = evaluate_examples(
        covered, step_preds, parser=parser, step=step,
        em_normalize=cfg.em_normalize, ned_tokens=cfg.ned_tokens,
        workers=cfg.workers,
    )
    series = build_series([summarize_records(records, step=step)])
    report = build_report(
        corpus_stats(examples), series, {step: records},
        _provenance(cfg, command="eval"),
    )
    written = emit_report(report, cfg.out_dir)
    if cfg.cases:
        bundle = extract_cases(covered, step_preds, records, cfg.cases, cfg.seed,
                               parser=parser)
        written.append(emit_cases(bundle, cfg.out_dir))
    final = series.final
    print(f"evaluated {final.n} example(s) at step {step}: "
          f"syntax validity {final.syntax_validity_pct:.1f}%, "
          f"exact match {final.exact_match_pct:.1f}%, "
          f"copy {final.copy_pct:.1f}%", file=sys.stderr)
    for path in written:
        print(path)
    return 0


def _cmd_track(cfg: RunConfig) -> int:
    examples = _load_corpus(cfg)
    predictions = load_predictions(cfg.preds, corpus=examples)
    config = TrackingConfig(
        sample_size=cfg.sample_size,
        interval_steps=cfg.interval_steps,
        seed=cfg.seed,
        fixed_sample=cfg.fixed_sample,
    )
    loss_by_step = load_loss_log(cfg.loss_log) if cfg.loss_log else None
    parser = get_parser(cfg.parser)
    series, records_by_step = run_tracking(
        examples, predictions, config, parser=parser,
        loss_by_step=loss_by_step,
        em_normalize=cfg.em_normalize, ned_tokens=cfg.ned_tokens,
        workers=cfg.workers,
    )
    report = build_report(
        corpus_stats(examples), series, records_by_step,
        _provenance(
            cfg, command="track",
            sample_size=cfg.sample_size, interval_steps=cfg.interval_steps,
            fixed_sample=cfg.fixed_sample,
        ),
    )
    written = emit_report(report, cfg.out_dir)
    if cfg.cases:
        final_step = series.final.step
        by_step = predictions_by_step(predictions)
        sample_ids = {r.example_id for r in records_by_step[final_step]}
        covered = [ex for ex in examples if ex.id in sample_ids]
        bundle = extract_cases(
            covered, by_step[final_step], records_by_step[final_step],
            cfg.cases, cfg.seed, parser=parser,
        )
        written.append(emit_cases(bundle, cfg.out_dir))
    final = series.final
    print(f"tracked {len(series.records)} checkpoint(s) "
          f"(steps {series.steps[0]}..{series.steps[-1]}): "
          f"final syntax validity {final.syntax_validity_pct:.1f}%, "
          f"final copy rate {final.copy_pct:.1f}%", file=sys.stderr)
    for path in written:
        print(path)
    return 0


def _cmd_inspect(cfg: RunConfig) -> int:
    examples = _load_corpus(cfg)
    predictions = load_predictions(cfg.preds, corpus=examples)
    by_step = predictions_by_step(predictions)
    if not by_step:
        raise InputError("prediction set contains no rank-0 predictions")
    step = _single_step(by_step, cfg.step)
    step_preds = by_step[step]
    covered = [ex for ex in examples if ex.id in step_preds]
    parser = get_parser(cfg.parser)
    records = evaluate_examples(
        covered, step_preds, parser=parser, step=step, workers=cfg.workers,
    )
    bundle = extract_cases(covered, step_preds, records, cfg.cases, cfg.seed,
                           parser=parser)
    path = emit_cases(bundle, cfg.out_dir)
    print(f"sampled {len(bundle.cases)} case(s) at step {step}", file=sys.stderr)
    print(path)
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "check": _cmd_check,
    "abstract": _cmd_abstract,
    "eval": _cmd_eval,
    "track": _cmd_track,
    "inspect": _cmd_inspect,
}


def run(cfg: RunConfig) -> int:
    return _COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EnvironmentFailure as exc:
        print(f"environment error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()

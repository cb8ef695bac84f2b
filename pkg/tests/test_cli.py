"""End-to-end tests of the command-line interface.

These drive ``repairdx.cli.main`` in-process with real files on disk,
asserting on exit codes, stdout/stderr text, and the files each
subcommand writes.
"""

import json
import os

import pytest

from repairdx.cli import main, parse_args
from repairdx.errors import UsageError

from conftest import SMALL_PREDICTIONS, load_jsonl, write_jsonl


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def test_parse_args_track_defaults():
    cfg = parse_args(["track", "--corpus", "c.jsonl", "--preds", "p.jsonl",
                      "--out", "results"])
    assert cfg.command == "track"
    assert cfg.seed == 42
    assert cfg.sample_size == 100
    assert cfg.interval_steps == 500
    assert cfg.fixed_sample is False
    assert cfg.em_normalize == "none"
    assert cfg.ned_tokens is False
    assert cfg.parser == "builtin"
    assert cfg.workers >= 1
    assert cfg.split is None
    assert cfg.loss_log is None


def test_parse_args_eval_flags():
    cfg = parse_args([
        "eval", "--corpus", "c.jsonl", "--preds", "p.jsonl", "--out", "r",
        "--split", "test", "--cases", "5", "--em-normalize", "whitespace",
        "--ned-tokens", "--seed", "7", "--workers", "2",
    ])
    assert cfg.split == "test"
    assert cfg.cases == 5
    assert cfg.em_normalize == "whitespace"
    assert cfg.ned_tokens is True
    assert cfg.seed == 7
    assert cfg.workers == 2


def test_parse_args_rejects_missing_required():
    with pytest.raises(UsageError):
        parse_args(["eval", "--preds", "p.jsonl", "--out", "r"])


def test_parse_args_rejects_unknown_flag():
    with pytest.raises(UsageError):
        parse_args(["stats", "--corpus", "c.jsonl", "--bogus"])


def test_parse_args_rejects_bad_worker_count():
    with pytest.raises(UsageError):
        parse_args(["check", "--in", "s.jsonl", "--workers", "0"])


def test_parse_args_rejects_negative_seed():
    with pytest.raises(UsageError):
        parse_args(["check", "--in", "s.jsonl", "--seed", "-1"])


def test_main_without_subcommand_is_usage_error(capsys):
    assert main([]) == 1
    assert "usage error" in capsys.readouterr().err


def test_main_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 1
    assert "usage error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------


def test_stats_emits_corpus_summary_json(corpus_file, capsys):
    assert main(["stats", "--corpus", str(corpus_file)]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["n_examples"] == 4
    assert obj["n_per_split"] == {"test": 4}
    assert obj["identity_pairs"] == 0
    assert obj["identity_pair_fraction"] == 0.0
    assert obj["duplicate_buggy"] == 0
    assert obj["mean_token_length"] > 0
    assert obj["median_token_length"] > 0


def test_stats_split_filter(tmp_path, capsys):
    corpus = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "buggy": "int x ;", "fixed": "int y ;", "split": "train"},
        {"id": "b", "buggy": "int p ;", "fixed": "int q ;", "split": "test"},
        {"id": "c", "buggy": "int m ;", "fixed": "int n ;", "split": "test"},
    ])
    assert main(["stats", "--corpus", str(corpus), "--split", "test"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["n_examples"] == 2
    assert obj["n_per_split"] == {"test": 2}


def test_stats_unknown_split_is_input_error(corpus_file, capsys):
    assert main(["stats", "--corpus", str(corpus_file), "--split", "dev"]) == 1
    assert "dev" in capsys.readouterr().err


def test_stats_missing_file_is_input_error(tmp_path, capsys):
    assert main(["stats", "--corpus", str(tmp_path / "absent.jsonl")]) == 1
    assert "error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_emits_one_verdict_per_snippet(tmp_path, capsys):
    snippets = write_jsonl(tmp_path / "snippets.jsonl", [
        {"id": "s1", "code": "int f ( ) { return 1 ; }"},
        {"id": "s2", "code": "int f ( { return 1 ; }"},
    ])
    assert main(["check", "--in", str(snippets)]) == 0
    captured = capsys.readouterr()
    lines = [json.loads(l) for l in captured.out.splitlines() if l.strip()]
    assert [l["id"] for l in lines] == ["s1", "s2"]
    assert lines[0]["valid"] is True
    assert lines[0]["error_count"] == 0
    assert lines[0]["error_spans"] == []
    assert lines[1]["valid"] is False
    assert lines[1]["error_count"] >= 1
    assert lines[1]["error_spans"]
    assert "checked 2 snippet(s): 1 valid (50.0%)" in captured.err


def test_check_honors_field_flag(tmp_path, capsys):
    snippets = write_jsonl(tmp_path / "snippets.jsonl", [
        {"id": "s1", "snippet": "void g ( ) { }"},
    ])
    assert main(["check", "--in", str(snippets), "--field", "snippet"]) == 0
    verdict = json.loads(capsys.readouterr().out.splitlines()[0])
    assert verdict == {"id": "s1", "valid": True, "error_count": 0,
                       "error_spans": []}


def test_check_missing_field_names_available_ones(tmp_path, capsys):
    snippets = write_jsonl(tmp_path / "s.jsonl", [{"id": "s1", "text": "int x ;"}])
    assert main(["check", "--in", str(snippets)]) == 1
    err = capsys.readouterr().err
    assert "'code'" in err
    assert "text" in err


def test_check_non_json_input_is_input_error(tmp_path, capsys):
    bad = tmp_path / "raw.txt"
    bad.write_text("int f ( ) { return 1 ; }\n", encoding="utf-8")
    assert main(["check", "--in", str(bad)]) == 1
    assert "invalid JSON" in capsys.readouterr().err


def test_check_missing_file_is_input_error(tmp_path, capsys):
    assert main(["check", "--in", str(tmp_path / "absent.jsonl")]) == 1
    assert "no such file" in capsys.readouterr().err


def test_check_empty_file_is_input_error(tmp_path, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    assert main(["check", "--in", str(empty)]) == 1
    assert "no snippets" in capsys.readouterr().err


def test_check_treesitter_binding_is_environment_failure(tmp_path, capsys):
    try:
        import tree_sitter  # noqa: F401
        import tree_sitter_java  # noqa: F401
    except ImportError:
        pass
    else:
        pytest.skip("tree-sitter packages are installed; binding would work")
    snippets = write_jsonl(tmp_path / "s.jsonl", [{"id": "s1", "code": "int x ;"}])
    assert main(["check", "--in", str(snippets), "--parser", "treesitter"]) == 2
    assert "environment error" in capsys.readouterr().err


def test_check_unknown_parser_is_usage_error(tmp_path, capsys):
    snippets = write_jsonl(tmp_path / "s.jsonl", [{"id": "s1", "code": "int x ;"}])
    assert main(["check", "--in", str(snippets), "--parser", "antlr"]) == 1
    assert "antlr" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# abstract
# ---------------------------------------------------------------------------


def test_abstract_writes_corpus_and_mappings(corpus_file, tmp_path, capsys):
    out = tmp_path / "abstracted"
    assert main(["abstract", "--corpus", str(corpus_file), "--out", str(out)]) == 0
    rows = load_jsonl(out / "abstracted.jsonl")
    assert [r["id"] for r in rows] == ["bug-001", "bug-002", "bug-003", "bug-004"]
    assert rows[0]["buggy"] == ("public int METHOD_1 ( int VAR_1 , int VAR_2 ) "
                                "{ return VAR_1 - VAR_2 ; }")
    assert all(r["split"] == "test" for r in rows)
    mappings = load_jsonl(out / "mappings.jsonl")
    assert mappings[0]["id"] == "bug-001"
    assert mappings[0]["buggy"]["methods"] == [["add", "METHOD_1"]]
    assert mappings[0]["buggy"]["variables"] == [["a", "VAR_1"], ["b", "VAR_2"]]
    assert str(out / "abstracted.jsonl") in capsys.readouterr().out


def test_abstract_verify_only_reports_conformance(tmp_path, capsys):
    corpus = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "ok", "buggy": "int METHOD_1 ( ) { return VAR_1 ; }",
         "fixed": "int METHOD_1 ( ) { return VAR_1 ; }"},
        {"id": "mixed", "buggy": "int METHOD_1 ( ) { return count ; }",
         "fixed": "int METHOD_1 ( ) { return VAR_1 ; }"},
    ])
    out = tmp_path / "verify"
    assert main(["abstract", "--corpus", str(corpus), "--out", str(out),
                 "--verify-only"]) == 0
    rows = load_jsonl(out / "conformance.jsonl")
    assert rows[0]["conformant"] is True
    assert rows[0]["buggy"] == []
    assert rows[1]["conformant"] is False
    assert any("count" in v["message"] for v in rows[1]["buggy"])
    err = capsys.readouterr().err
    assert "1 conformant, 1 with violations" in err


def test_abstract_unparseable_example_is_named(tmp_path, capsys):
    corpus = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "bad-123", "buggy": "int f ( { return 1 ; }",
         "fixed": "int f ( ) { return 1 ; }"},
    ])
    out = tmp_path / "out"
    assert main(["abstract", "--corpus", str(corpus), "--out", str(out)]) == 1
    assert "bad-123" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


@pytest.fixture
def final_predictions_file(tmp_path):
    rows = [p for p in SMALL_PREDICTIONS if p["step"] == 1000]
    return write_jsonl(tmp_path / "final.jsonl", rows)


def test_eval_writes_report_files(corpus_file, final_predictions_file,
                                  tmp_path, capsys):
    out = tmp_path / "results"
    assert main(["eval", "--corpus", str(corpus_file),
                 "--preds", str(final_predictions_file),
                 "--out", str(out)]) == 0
    for name in ("report.json", "checkpoints.csv", "behavior.csv",
                 "table1.csv", "records.jsonl"):
        assert (out / name).is_file(), name
    captured = capsys.readouterr()
    assert "evaluated 4 example(s) at step 1000" in captured.err
    assert "exact match 100.0%" in captured.err
    printed = captured.out.splitlines()
    assert str(out / "report.json") in printed
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["final"]["exact_match_pct"] == 100.0
    assert report["provenance"]["config"]["command"] == "eval"


def test_eval_cases_flag_adds_case_bundle(corpus_file, final_predictions_file,
                                          tmp_path, capsys):
    out = tmp_path / "results"
    assert main(["eval", "--corpus", str(corpus_file),
                 "--preds", str(final_predictions_file),
                 "--out", str(out), "--cases", "2"]) == 0
    bundle = json.loads((out / "cases.json").read_text(encoding="utf-8"))
    assert bundle["k"] == 2
    assert len(bundle["cases"]) == 2
    assert str(out / "cases.json") in capsys.readouterr().out


def test_eval_rejects_multistep_dump(corpus_file, predictions_file,
                                     tmp_path, capsys):
    assert main(["eval", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(tmp_path / "r")]) == 1
    err = capsys.readouterr().err
    assert "500" in err and "1000" in err
    assert "track" in err


def test_eval_unknown_prediction_id_is_named(corpus_file, tmp_path, capsys):
    preds = write_jsonl(tmp_path / "p.jsonl", [
        {"id": "ghost-999", "step": 500, "prediction": "int x ;"},
    ])
    assert main(["eval", "--corpus", str(corpus_file), "--preds", str(preds),
                 "--out", str(tmp_path / "r")]) == 1
    assert "ghost-999" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# track
# ---------------------------------------------------------------------------


def test_track_full_run(corpus_file, predictions_file, loss_file, tmp_path,
                        capsys):
    out = tmp_path / "results"
    assert main(["track", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(out),
                 "--interval", "500", "--sample", "100",
                 "--loss-log", str(loss_file)]) == 0
    captured = capsys.readouterr()
    assert "tracked 2 checkpoint(s) (steps 500..1000)" in captured.err
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert [c["step"] for c in report["series"]] == [500, 1000]
    assert report["series"][0]["eval_loss"] == 0.91
    assert report["series"][1]["eval_loss"] == 0.42
    assert report["final"]["exact_match_pct"] == 100.0
    csv_lines = (out / "checkpoints.csv").read_text(encoding="utf-8").splitlines()
    assert csv_lines[0] == ("step,n,syntax_validity,exact_match,copy_rate,"
                            "modification_rate,ned_mean,ned_median,ned_std,"
                            "eval_loss")
    assert len(csv_lines) == 3


def test_track_off_cadence_step_is_input_error(corpus_file, predictions_file,
                                               tmp_path, capsys):
    assert main(["track", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(tmp_path / "r"),
                 "--interval", "400"]) == 1
    assert "interval" in capsys.readouterr().err


def test_track_emits_case_bundle_from_final_step(corpus_file, predictions_file,
                                                 tmp_path, capsys):
    out = tmp_path / "results"
    assert main(["track", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(out), "--cases", "2"]) == 0
    bundle = json.loads((out / "cases.json").read_text(encoding="utf-8"))
    assert len(bundle["cases"]) == 2
    # Final checkpoint is step 1000 where every prediction is an exact fix.
    assert all(c["behavior"] == "exact_match" for c in bundle["cases"])


# ---------------------------------------------------------------------------
# inspect
# ---------------------------------------------------------------------------


def test_inspect_defaults_to_last_step(corpus_file, predictions_file,
                                       tmp_path, capsys):
    out = tmp_path / "cases"
    assert main(["inspect", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(out), "--cases", "2"]) == 0
    captured = capsys.readouterr()
    assert "at step 1000" in captured.err
    bundle = json.loads((out / "cases.json").read_text(encoding="utf-8"))
    assert len(bundle["cases"]) == 2


def test_inspect_step_flag_selects_checkpoint(corpus_file, predictions_file,
                                              tmp_path, capsys):
    out = tmp_path / "cases"
    assert main(["inspect", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(out), "--cases", "4", "--step", "500"]) == 0
    bundle = json.loads((out / "cases.json").read_text(encoding="utf-8"))
    behaviors = sorted(c["behavior"] for c in bundle["cases"])
    assert behaviors == ["copy", "copy", "modification", "modification"]


def test_inspect_unknown_step_lists_available(corpus_file, predictions_file,
                                              tmp_path, capsys):
    assert main(["inspect", "--corpus", str(corpus_file),
                 "--preds", str(predictions_file),
                 "--out", str(tmp_path / "c"), "--step", "750"]) == 1
    err = capsys.readouterr().err
    assert "750" in err
    assert "500" in err and "1000" in err


def test_inspect_seed_changes_the_draw(corpus_file, predictions_file, tmp_path):
    # Draws precomputed from the documented ranking (sha256 of
    # "<seed>:case:<id>"): seed 1 selects bug-002/bug-004, seed 2 selects
    # bug-001/bug-003.
    ids_by_seed = {}
    for seed in (1, 2):
        out = tmp_path / f"cases-{seed}"
        assert main(["inspect", "--corpus", str(corpus_file),
                     "--preds", str(predictions_file),
                     "--out", str(out), "--cases", "2",
                     "--seed", str(seed)]) == 0
        bundle = json.loads((out / "cases.json").read_text(encoding="utf-8"))
        assert bundle["seed"] == seed
        ids_by_seed[seed] = sorted(c["id"] for c in bundle["cases"])
    assert ids_by_seed[1] == ["bug-002", "bug-004"]
    assert ids_by_seed[2] == ["bug-001", "bug-003"]


# ---------------------------------------------------------------------------
# cross-cutting
# ---------------------------------------------------------------------------


def test_split_filter_applies_before_prediction_validation(tmp_path, capsys):
    corpus = write_jsonl(tmp_path / "c.jsonl", [
        {"id": "a", "buggy": "int x ;", "fixed": "int y ;", "split": "train"},
        {"id": "b", "buggy": "int p ;", "fixed": "int q ;", "split": "test"},
    ])
    # Prediction for the train-split example: once --split test drops it,
    # the prediction refers to an id outside the corpus.
    preds = write_jsonl(tmp_path / "p.jsonl", [
        {"id": "a", "step": 500, "prediction": "int y ;"},
    ])
    assert main(["eval", "--corpus", str(corpus), "--preds", str(preds),
                 "--out", str(tmp_path / "r"), "--split", "test"]) == 1
    assert "'a'" in capsys.readouterr().err


def test_output_directory_is_created_recursively(corpus_file,
                                                 final_predictions_file,
                                                 tmp_path):
    out = tmp_path / "deep" / "nested" / "results"
    assert main(["eval", "--corpus", str(corpus_file),
                 "--preds", str(final_predictions_file),
                 "--out", str(out)]) == 0
    assert (out / "report.json").is_file()


def test_blocked_output_directory_is_environment_failure(corpus_file,
                                                         final_predictions_file,
                                                         tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("a file, not a directory", encoding="utf-8")
    code = main(["eval", "--corpus", str(corpus_file),
                 "--preds", str(final_predictions_file),
                 "--out", str(blocker / "results")])
    assert code == 2
    assert "environment error" in capsys.readouterr().err

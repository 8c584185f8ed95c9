"""The command-line surface: subcommands, exit codes, output files, the
deterministic record stream with its crash-safe resume, and the summary
emitters.

Most tests drive ``main(argv)`` in-process; one test goes through the
installed console script to pin the packaging entry point.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from crossint.cli import (
    CHECK_ORDER,
    RecordDigest,
    digest_lines,
    emit_summary,
    main,
    parse_record_line,
    record_to_line,
    resolve_out,
)
from crossint.errors import IntegrityError
from crossint.inequalities import SectionParams, evaluate_point


SMALL_SWEEP = [
    "sweep-inequalities",
    "--t-min", "3", "--t-max", "3", "--k-span", "2", "--n-span", "3",
]


def test_missing_subcommand_is_usage_error(capsys) -> None:
    assert main([]) == 1
    assert "required" in capsys.readouterr().err.lower()


def test_unknown_flag_is_usage_error(capsys) -> None:
    assert main(["frankl", "--n", "8", "--k", "4", "--t", "3", "--frobnicate"]) == 1


def test_help_exits_zero(capsys) -> None:
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for name in ("sweep-inequalities", "search", "frankl", "compress", "genset"):
        assert name in out


def test_frankl_csv(capsys) -> None:
    assert main(["frankl", "--n", "8", "--k", "4", "--t", "3", "--out", "-"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == [
        "r,size,max,tie",
        "0,5,1,1",
        "1,5,1,1",
        "2,0,0,0",
    ]
    assert "regime: boundary r=0 tied=(0, 1) threshold=8" in captured.err


def test_frankl_domain_error_exits_one(capsys) -> None:
    assert main(["frankl", "--n", "3", "--k", "4", "--t", "3"]) == 1
    assert "t <= k <= n" in capsys.readouterr().err


def test_search_genset_product(capsys, tmp_path) -> None:
    out = tmp_path / "search.json"
    rc = main(
        ["search", "--n", "8", "--k", "4", "--t", "3", "--out", str(out)]
    )
    assert rc == 0
    assert "25 with 2 witness pair(s)" in capsys.readouterr().err
    obj = json.loads(out.read_text())
    assert obj["value"] == "25"
    assert obj["method"] == "genset"
    assert len(obj["witnesses"]) == 2
    kinds = {w["a"]["kind"] for w in obj["witnesses"]}
    assert kinds == {"genset"}
    # expandable sides carry both the generator text and the full family text
    star = obj["witnesses"][0]["a"]
    assert star["genset"].startswith("8 4\n")
    assert star["family"].count("\n") >= 2


def test_search_brute_sum(capsys) -> None:
    rc = main(
        ["search", "--n", "5", "--k", "3", "--t", "2",
         "--objective", "sum", "--method", "brute", "--out", "-"]
    )
    assert rc == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["value"] == "8"
    assert obj["method"] == "brute"


def test_search_genset_sum_is_usage_error(capsys) -> None:
    rc = main(
        ["search", "--n", "8", "--k", "4", "--t", "3", "--objective", "sum"]
    )
    assert rc == 1
    assert "sum" in capsys.readouterr().err


def test_search_capacity_error_exits_two(capsys) -> None:
    rc = main(["search", "--n", "10", "--k", "5", "--t", "2", "--method", "brute"])
    assert rc == 2
    assert "genset" in capsys.readouterr().err  # points at the scalable method


def test_compress_roundtrip(tmp_path, capsys) -> None:
    src = tmp_path / "fam.txt"
    src.write_text("5 3\n4,3,5\n1,2,3\n")
    out = tmp_path / "compressed.txt"
    assert main(["compress", "--in", str(src), "--out", str(out)]) == 0
    assert out.read_text() == "5 3\n1,2,3\n1,2,4\n"
    assert "compressed" in capsys.readouterr().err


def test_genset_and_expand_invert(tmp_path) -> None:
    fam_path = tmp_path / "star.txt"
    # members in canonical incidence-word order
    fam_path.write_text("5 3\n1,2,3\n1,2,4\n1,3,4\n1,2,5\n1,3,5\n1,4,5\n")
    gen_path = tmp_path / "gen.txt"
    assert main(["genset", "--in", str(fam_path), "--out", str(gen_path)]) == 0
    assert gen_path.read_text() == "5 3\n1\n"
    back_path = tmp_path / "back.txt"
    assert (
        main(["genset", "--in", str(gen_path), "--expand", "--out", str(back_path)])
        == 0
    )
    assert back_path.read_text() == fam_path.read_text()


def test_verify_case4(capsys, tmp_path) -> None:
    out = tmp_path / "case4.json"
    assert main(["verify-case4", "--n", "10", "--k", "6", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    names = [c["name"] for c in obj["checks"]]
    assert "senary-split" in names
    guarded_failures = [
        row
        for check in obj["checks"]
        for row in check.get("rows", [])
        if row["guard_met"] and not row["holds"]
    ]
    assert guarded_failures == []
    err = capsys.readouterr().err
    assert "all printed comparisons hold under their hypotheses" in err


def test_verify_main_small(capsys, tmp_path) -> None:
    out = tmp_path / "main.json"
    rc = main(
        ["verify-main-small", "--n", "9", "--k", "4", "--t", "3",
         "--shift-trials", "10", "--seed", "1", "--out", str(out)]
    )
    assert rc == 0
    err = capsys.readouterr().err
    assert "bound confirmed: True" in err
    obj = json.loads(out.read_text())
    assert obj["bound_confirmed"] is True
    assert obj["all_star"] is True
    assert obj["shift_ok"] is True
    assert obj["value"] == "36"


# ---------------------------------------------------------------------------
# record stream, summaries, resume


def _sweep_to(path, resume: bool = False) -> int:
    argv = SMALL_SWEEP + ["--out", str(path)]
    if resume:
        argv.append("--resume")
    return main(argv)


def test_sweep_writes_stream_and_summaries(tmp_path, capsys) -> None:
    out = tmp_path / "records.jsonl"
    assert _sweep_to(out) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 8
    for lineno, line in enumerate(lines, start=1):
        record = parse_record_line(lineno, line)
        assert record.t == 3
    csv_text = (tmp_path / "records.jsonl.summary.csv").read_text()
    rows = csv_text.splitlines()
    assert rows[0] == "check,holds,excluded,violated,skipped,min_value"
    assert rows[1] == "records,8,,,,"
    obj = json.loads((tmp_path / "records.jsonl.summary.json").read_text())
    assert obj["records"] == 8
    assert obj["checks"]["thm32"] == {
        "holds": 4, "excluded": 4, "violated": 0, "skipped": 0
    }
    assert obj["violations"] == []
    assert obj["last_point"] == [3, 5, 15, 7, 5]
    assert Fraction(obj["thm32_min_ratio"]) > 1


def test_sweep_stream_is_deterministic(tmp_path) -> None:
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert _sweep_to(a) == 0
    assert _sweep_to(b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_resume_after_partial_tail_is_byte_identical(tmp_path) -> None:
    fresh = tmp_path / "fresh.jsonl"
    assert _sweep_to(fresh) == 0
    fresh_bytes = fresh.read_bytes()

    resumed = tmp_path / "resumed.jsonl"
    lines = fresh_bytes.splitlines(keepends=True)
    # five complete records, then an interrupted sixth write
    resumed.write_bytes(b"".join(lines[:5]) + lines[5][:30])
    assert _sweep_to(resumed, resume=True) == 0
    assert resumed.read_bytes() == fresh_bytes
    assert (tmp_path / "resumed.jsonl.summary.csv").read_text() == (
        tmp_path / "fresh.jsonl.summary.csv"
    ).read_text()
    assert (tmp_path / "resumed.jsonl.summary.json").read_text() == (
        tmp_path / "fresh.jsonl.summary.json"
    ).read_text()


def test_resume_on_complete_stream_is_byte_identical(tmp_path) -> None:
    fresh = tmp_path / "s.jsonl"
    assert _sweep_to(fresh) == 0
    before = fresh.read_bytes()
    assert _sweep_to(fresh, resume=True) == 0
    assert fresh.read_bytes() == before


def test_resume_over_missing_file_starts_fresh(tmp_path) -> None:
    out = tmp_path / "new.jsonl"
    assert _sweep_to(out, resume=True) == 0
    assert len(out.read_text().splitlines()) == 8


def test_resume_rejects_midstream_damage(tmp_path, capsys) -> None:
    out = tmp_path / "damaged.jsonl"
    assert _sweep_to(out) == 0
    lines = out.read_text().splitlines(keepends=True)
    lines[2] = "not json at all\n"
    out.write_text("".join(lines))
    assert _sweep_to(out, resume=True) == 2
    assert "line 3" in capsys.readouterr().err


def test_resume_to_stdout_is_usage_error(capsys) -> None:
    assert main(SMALL_SWEEP + ["--out", "-", "--resume"]) == 1


def test_sweep_rejects_small_t(capsys) -> None:
    assert main(["sweep-inequalities", "--t-min", "2", "--t-max", "3"]) == 1
    assert "t >= 3" in capsys.readouterr().err


def test_record_line_is_compact_and_sorted() -> None:
    record = evaluate_point(SectionParams(18, 7, 8, 6, 5))
    line = record_to_line(record)
    assert "\n" not in line and ": " not in line
    obj = json.loads(line)
    assert list(obj) == sorted(obj)
    assert parse_record_line(1, line) == record


def test_parse_record_line_errors_name_the_line() -> None:
    with pytest.raises(IntegrityError, match="line 7"):
        parse_record_line(7, "{broken")
    with pytest.raises(IntegrityError, match="line 9"):
        parse_record_line(9, '["list", "not", "object"]')
    with pytest.raises(IntegrityError, match="line 2"):
        parse_record_line(2, '{"n": 18}')


def test_emit_summary_empty_stream_is_zeroed() -> None:
    csv_text, json_text = emit_summary([])
    rows = csv_text.splitlines()
    assert rows[1] == "records,0,,,,"
    assert len(rows) == 2 + len(CHECK_ORDER)
    for row in rows[2:]:
        name, rest = row.split(",", 1)
        assert rest == "0,0,0,0,"
    obj = json.loads(json_text)
    assert obj["records"] == 0
    assert obj["thm32_min_ratio"] is None
    assert obj["last_point"] is None


def test_emit_summary_single_flagship_record() -> None:
    record = evaluate_point(SectionParams(18, 7, 8, 6, 5))
    csv_text, json_text = emit_summary([record_to_line(record)])
    assert "thm32,1,0,0,0,615/572" in csv_text.splitlines()
    obj = json.loads(json_text)
    assert obj["thm32_min_ratio"] == "615/572"
    assert obj["checks"]["appendix"]["holds"] == 1
    assert obj["checks"]["equa1"]["skipped"] == 1


def test_emit_summary_is_stream_order_independent_of_chunking() -> None:
    records = [
        record_to_line(evaluate_point(p))
        for p in __import__("crossint.inequalities", fromlist=["iter_grid"]).iter_grid(
            3, 3, 2, 1
        )
    ]
    once = emit_summary(records)
    again = emit_summary(iter(records))
    assert once == again


def test_digest_skips_blank_lines_and_counts_minima() -> None:
    record = evaluate_point(SectionParams(18, 7, 8, 6, 5))
    digest = digest_lines(["", record_to_line(record), ""])
    assert digest.records == 1
    assert digest.min_ratio == Fraction(615, 572)
    assert digest.violation_count == 0
    # lemma_f is excluded at this triple, so it contributes no slack minimum
    assert "lemma_f" not in digest.min_slack
    assert digest.min_slack["lemma_g"] == int(
        record.values["lemma_g_slack"]
    )


def test_min_ratio_skips_excluded_points() -> None:
    excluded = evaluate_point(SectionParams(12, 5, 6, 4, 3))
    assert excluded.checks["thm32"] == "excluded"
    digest = digest_lines([record_to_line(excluded)])
    assert digest.min_ratio is None
    flagship = evaluate_point(SectionParams(18, 7, 8, 6, 5))
    digest = digest_lines([record_to_line(excluded), record_to_line(flagship)])
    assert digest.min_ratio == Fraction(615, 572)


def test_out_dir_environment_variable(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("CROSSINT_OUT_DIR", str(tmp_path / "outputs"))
    assert main(["frankl", "--n", "8", "--k", "4", "--t", "3"]) == 0
    produced = tmp_path / "outputs" / "frankl-8-4-3.csv"
    assert produced.exists()
    assert produced.read_text().startswith("r,size,max,tie")


def test_resolve_out_defaults_to_stdout_without_env(monkeypatch) -> None:
    monkeypatch.delenv("CROSSINT_OUT_DIR", raising=False)
    assert resolve_out(None, "anything.txt") == "-"
    assert resolve_out("given.txt", "anything.txt") == "given.txt"


def test_console_script_entry_point() -> None:
    exe = shutil.which("crossint")
    if exe is None:
        pytest.skip("console script not installed")
    proc = subprocess.run(
        [exe, "frankl", "--n", "8", "--k", "4", "--t", "3", "--out", "-"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "r,size,max,tie"

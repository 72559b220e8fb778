import json

import pytest

from app.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, render_reports, summary_line
from app.services.verification_service import verification_service


def test_verify_writes_json(tmp_path, capsys):
    out = tmp_path / "reports.json"
    assert main(["verify", "s3", "--json", str(out)]) == EXIT_OK
    reports = json.loads(out.read_text())
    assert [r["id"] for r in reports] == ["s3"]
    assert set(reports[0]) == {"id", "anchor", "inputs", "facts", "verdict", "ms"}
    assert reports[0]["ms"] is None
    assert "PASS" in capsys.readouterr().out


def test_repeated_runs_are_byte_identical(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "an", "--max-n", "5", "--json", str(first)]) == EXIT_OK
    assert main(["verify", "an", "--max-n", "5", "--json", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_timings_are_optional():
    reports = verification_service.run("s3")
    with_timings = json.loads(render_reports(reports, timings=True))
    assert with_timings[0]["ms"] == reports[0].ms


def test_bad_bound_is_a_usage_error():
    assert main(["verify", "sn", "--max-n", "4"]) == EXIT_USAGE


def test_unknown_claim_is_rejected_by_the_parser():
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "s5"])
    assert excinfo.value.code == 2


def test_failed_fact_sets_exit_code(monkeypatch):
    report = verification_service.run("s3")[0]
    facts = dict(report.facts)
    facts["size_H1"] = {"observed": 31, "expected": 32, "ok": False}
    failed = report.model_copy(update={"facts": facts, "verdict": "fail"})
    monkeypatch.setattr(verification_service, "run", lambda *args, **kwargs: [failed])
    assert main(["verify", "s3"]) == EXIT_MISMATCH
    assert "size_H1" in summary_line(failed)


def test_unexpected_error_exit_code(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(verification_service, "run", boom)
    assert main(["verify", "c5"]) == EXIT_MISMATCH

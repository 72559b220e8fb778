from pathlib import Path

import pytest

from app.services.registry_service import registry_service
from app.services.verification_service import VerificationService
from app.utils.errors import UnitGroupLabError


@pytest.fixture(scope="module")
def service():
    return VerificationService()


def facts_ok(report):
    return {
        name: value["ok"]
        for name, value in report.facts.items()
        if isinstance(value, dict) and "ok" in value
    }


def assert_all_facts_hold(report):
    failed = [name for name, ok in facts_ok(report).items() if not ok]
    assert failed == []


def test_c5(service):
    report = service.cmd_c5()
    assert report.verdict == "pass"
    assert_all_facts_hold(report)
    assert report.facts["distinct_ideals"]["observed"] == 4
    assert report.facts["unit_counts"]["observed"] == [1, 1, 15, 15]


def test_s3(service):
    report = service.cmd_s3()
    assert report.verdict == "pass"
    assert_all_facts_hold(report)
    assert report.facts["quotient_H1"]["ring_size"] == 32
    assert report.facts["quotient_H2"]["ring_size"] == 16


def test_s4(service):
    report = service.cmd_s4()
    assert report.verdict == "pass"
    assert_all_facts_hold(report)
    assert report.facts["surviving_sigmas"]["observed"] == ["(1,2,3,4)", "(1,4,3,2)"]
    assert report.facts["R1"]["unit_count"] == 24
    assert report.facts["max_units_proper_principal_quotient"]["observed"] == 6


def test_a4(service):
    report = service.cmd_a4()
    assert report.verdict == "pass"
    assert_all_facts_hold(report)
    assert report.facts["hurwitz_unit_group"]["observed"] == ["A4"]


@pytest.mark.parametrize("family", ["sn", "an"])
def test_families_up_to_six(service, family):
    reports = service.run(family, max_n=6)
    assert [r.id for r in reports] == [f"{family}.5", f"{family}.6"]
    for report in reports:
        assert report.verdict == "pass"
        assert_all_facts_hold(report)
        assert report.facts["sigma_candidates"]["observed"] == ["e"]


def test_s6_closure_crosscheck(service):
    report = service.run("sn", max_n=6)[1]
    outcome = report.facts["candidates"][0]
    assert outcome["sigma"] == "e"
    assert outcome["closure_weight2_witness"] is not None


@pytest.mark.slow
def test_symmetric_families_to_nine(service):
    reports = service.cmd_sn(9)
    assert [r.verdict for r in reports] == ["pass"] * 5
    s7 = reports[2]
    assert s7.facts["sigma_candidates"]["observed"] == ["(6,7)", "e"]
    transposition = next(o for o in s7.facts["candidates"] if o["sigma"] == "(6,7)")
    assert transposition["power"] == "(1,3,5,2,4) + (1,4,2,5,3)"
    assert transposition["contradiction"]
    for n, report in zip(range(5, 10), reports):
        from math import factorial
        assert report.facts["normalizer_order"]["observed"] == 10 * factorial(n - 5)


@pytest.mark.slow
def test_alternating_families_to_nine(service):
    reports = {r.id: r for r in service.cmd_an(9)}
    for n in (5, 6, 7, 9):
        assert reports[f"an.{n}"].verdict == "pass"
        assert reports[f"an.{n}"].facts["sigma_candidates"]["observed"] == ["e"]
    a8 = reports["an.8"]
    assert a8.verdict == "obstructed"
    assert a8.facts["sigma_candidates"]["observed"] == ["(6,7,8)", "(6,8,7)", "e"]
    assert a8.anchor == registry_service.anchor("an.8")


def test_a8_obstruction_survives_frobenius(service):
    report = service.run("an", max_n=8)[-1]
    assert report.id == "an.8"
    assert report.verdict == "obstructed"
    assert report.facts["frobenius_power_returns_element"]["ok"]
    for outcome in report.facts["candidates"]:
        if outcome["sigma"] == "e":
            assert outcome["contradiction"]
        else:
            assert outcome["exponent"] == "2^4"
            assert outcome["unchanged"] is True
            assert outcome["power"] == outcome["element"]
            assert not outcome["contradiction"]


@pytest.mark.slow
def test_a8(service):
    report = service.cmd_a8()
    assert report.verdict == "pass"
    assert report.facts["order_GL4"]["observed"] == 20160
    assert report.facts["identification"]["consistent"] is True
    assert report.facts["order_15_in_both"]["observed"] is True


def test_reports_are_deterministic(service):
    first = service.cmd_s3().certified()
    second = service.cmd_s3().certified()
    assert first == second
    assert "ms" not in first


def test_anchors_come_from_registry(service):
    quotes = {row["quote"] for row in registry_service.list_claims()}
    for report in [service.cmd_c5(), service.cmd_s3()] + service.run("an", max_n=5):
        assert report.anchor.quote in quotes


CITED_SOURCE = Path(__file__).resolve().parents[1] / "examples" / "original_source" / "paper.md"


@pytest.mark.skipif(not CITED_SOURCE.exists(), reason="cited source text not present")
def test_registry_quotes_are_verbatim():
    text = CITED_SOURCE.read_text(encoding="utf-8")
    for row in registry_service.list_claims():
        assert row["section"].startswith("§")
        assert row["quote"] in text, row["claim_id"]


def test_a8_family_anchor_has_its_own_row():
    assert registry_service.anchor("an.8") != registry_service.anchor("an.7")
    assert registry_service.anchor("an.7") == registry_service.anchor("an")


@pytest.mark.parametrize("max_n", [4, 10])
def test_max_n_range(service, max_n):
    with pytest.raises(UnitGroupLabError):
        service.run("sn", max_n=max_n)


def test_unknown_claim(service):
    with pytest.raises(UnitGroupLabError):
        service.run("s5")


def test_bad_thread_count(service):
    with pytest.raises(UnitGroupLabError):
        service.cmd_all(max_n=5, threads=0)


@pytest.mark.slow
def test_all_claims_in_fixed_order(service):
    reports = service.run("all", max_n=5, threads=2)
    assert [r.id for r in reports] == ["c5", "s3", "sn.5", "an.5", "s4", "a4", "a8"]
    assert all(r.passed for r in reports)

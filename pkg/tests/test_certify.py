"""Certificate pipelines: verdicts, gating, determinism, re-verification,
and the generic descent-problem scan."""

import json
from fractions import Fraction

import pytest

from weilcert.certify import (
    SCHEMA_VERSION,
    VERDICT_INCONCLUSIVE,
    VERDICT_NO_OBSTRUCTION,
    VERDICT_OBSTRUCTED,
    DescentProblem,
    certificate_to_json,
    cocycle_scan,
    fermat_quartic,
    hypotheses_check,
    run_control_pipeline,
    run_hyper_pipeline,
    run_pipeline,
    run_plane_pipeline,
    verify_certificate,
)
from weilcert.numbers import GaloisAut
from weilcert.polyforms import ProjMap3


def _checks(cert):
    return {c["name"]: c["status"] for c in cert["checks"]}


def test_hyper_pipeline_obstructed():
    cert = run_hyper_pipeline(2, 2, t="auto")
    assert cert["schema_version"] == SCHEMA_VERSION
    assert cert["family"] == "hyperelliptic"
    assert cert["verdict"] == VERDICT_OBSTRUCTED
    assert cert["assumptions"] == []
    checks = _checks(cert)
    assert checks["reduced-aut-trivial"] == "pass"
    assert checks["sigma-iso"] == "pass"
    assert checks["cocycle-obstruction"] == "pass"
    assert cert["params"]["t"] == "3"
    assert cert["params"]["etas"] == ["1+1*s"]


def test_plane_pipeline_obstructed_with_single_assumption():
    cert = run_plane_pipeline(2, 4, t=3, etas="1+1*s")
    assert cert["verdict"] == VERDICT_OBSTRUCTED
    assert len(cert["assumptions"]) == 1
    assumption = cert["assumptions"][0]
    assert assumption["name"] == "paper-Thm-5-Aut"
    assert assumption["evidence"]["psi_order"] == 2
    assert assumption["evidence"]["bitangent_discriminant_square_free"]
    checks = _checks(cert)
    assert checks["smoothness"] == "pass"
    # condition (ii) is violated on this instance yet never gates the
    # verdict: it is informational
    assert checks["condition-ii-shape-invariance"] == "fail"
    assert cert["params"]["alpha"] == "1+1*s"


def test_plane_d8_no_obstruction():
    cert = run_plane_pipeline(2, 8)
    assert cert["verdict"] == VERDICT_NO_OBSTRUCTION
    scan = next(
        c for c in cert["checks"] if c["name"] == "cocycle-obstruction"
    )
    assert scan["status"] == "fail"
    assert scan["witness"]["candidate_count"] == 4
    assert any(e["is_identity"] for e in scan["witness"]["entries"])


def test_control_pipeline_no_obstruction():
    cert = run_control_pipeline(2)
    assert cert["family"] == "control-fermat"
    assert cert["verdict"] == VERDICT_NO_OBSTRUCTION


def test_unsolvable_pell_is_inconclusive():
    cert = run_hyper_pipeline(3, 2)
    assert cert["verdict"] == VERDICT_INCONCLUSIVE
    assert _checks(cert)["pell-negative-solvable"] == "fail"


def test_invalid_genus_is_inconclusive():
    cert = run_hyper_pipeline(2, 3)
    assert cert["verdict"] == VERDICT_INCONCLUSIVE


def test_explicit_bad_t_is_inconclusive():
    # t = 2 at genus 2 yields a branch set with a nontrivial stabilizer
    cert = run_hyper_pipeline(2, 2, t=2)
    assert cert["verdict"] == VERDICT_INCONCLUSIVE
    assert _checks(cert)["reduced-aut-trivial"] == "fail"


def test_determinism_byte_identical():
    for maker in (
        lambda: run_hyper_pipeline(2, 2),
        lambda: run_plane_pipeline(2, 4, t=3),
        lambda: run_control_pipeline(2),
    ):
        assert certificate_to_json(maker()) == certificate_to_json(maker())


def test_json_format_is_canonical():
    text = certificate_to_json(run_control_pipeline(2))
    assert text.endswith("\n")
    assert "\r" not in text
    assert json.loads(text)["schema_version"] == SCHEMA_VERSION
    assert text.splitlines()[1].startswith('  "schema_version"')


def test_verify_round_trip_and_tamper_detection():
    cert = run_plane_pipeline(2, 4, t=3)
    ok, diffs, _ = verify_certificate(cert)
    assert ok and diffs == []
    tampered = json.loads(certificate_to_json(cert))
    tampered["verdict"] = VERDICT_NO_OBSTRUCTION
    ok, diffs, _ = verify_certificate(tampered)
    assert not ok
    assert any("verdict" in d for d in diffs)


def test_verify_detects_tampered_witness():
    cert = run_hyper_pipeline(2, 2)
    tampered = json.loads(certificate_to_json(cert))
    for c in tampered["checks"]:
        if c["name"] == "pell-negative-solvable":
            c["witness"]["a"] = 99
    ok, diffs, _ = verify_certificate(tampered)
    assert not ok


def test_run_pipeline_dispatch():
    cert = run_pipeline({"family": "control-fermat", "D": 2})
    assert cert["family"] == "control-fermat"
    with pytest.raises(Exception):
        run_pipeline({"family": "nonsense"})


def test_generic_scan_on_rational_curve():
    F = fermat_quartic(2)
    ident = ProjMap3.identity(F.field)
    problem = DescentProblem(
        "plane", F, (ident,), ident, GaloisAut(flip_sqrt=True)
    )
    ok, reasons = hypotheses_check(problem)
    assert ok and reasons == []
    entries = cocycle_scan(problem)
    assert len(entries) == 1 and entries[0].is_identity


def test_explicit_etas_match_auto_selection():
    auto = run_hyper_pipeline(2, 4)
    explicit = run_hyper_pipeline(
        2, 4, t=Fraction(auto["params"]["t"]),
        etas=",".join(auto["params"]["etas"]),
    )
    assert certificate_to_json(auto) == certificate_to_json(explicit)

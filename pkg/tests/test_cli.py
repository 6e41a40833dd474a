"""CLI: subcommands, exit codes, certificate emission, determinism."""

import json

from click.testing import CliRunner

from weilcert.cli import main


def _run(*args):
    return CliRunner().invoke(main, list(args))


def test_pell_solvable_exit_0():
    r = _run("pell", "--D", "2")
    assert r.exit_code == 0
    assert "a=1 b=1 unit=1+1*s" in r.output


def test_pell_unsolvable_exit_3():
    r = _run("pell", "--D", "3")
    assert r.exit_code == 3
    assert "none" in r.output


def test_pell_invalid_d_exit_2():
    assert _run("pell", "--D", "8").exit_code == 2


def test_hyper_odd_genus_exit_2():
    r = _run("hyper", "--D", "2", "--genus", "3")
    assert r.exit_code == 2


def test_hyper_no_pell_exit_3():
    r = _run("hyper", "--D", "3", "--genus", "2")
    assert r.exit_code == 3


def test_hyper_inconclusive_exit_5():
    # t = 2 is rejected by the branch-stabilizer check
    r = _run("hyper", "--D", "2", "--genus", "2", "--t", "2")
    assert r.exit_code == 5
    assert "inconclusive" in r.output


def test_bad_eta_expression_exit_2():
    r = _run("plane", "--D", "2", "--d", "4", "--t", "3", "--etas", "1+*s")
    assert r.exit_code == 2


def test_plane_end_to_end_and_verify(tmp_path):
    cert_path = tmp_path / "cert.json"
    r = _run(
        "plane", "--D", "2", "--d", "4", "--t", "3", "--etas", "1+1*s",
        "--emit-cert", str(cert_path),
    )
    assert r.exit_code == 0
    assert "verdict: not definable over Q" in r.output
    cert = json.loads(cert_path.read_text())
    assert cert["verdict"] == "not definable over Q"

    v = _run("verify", str(cert_path))
    assert v.exit_code == 0
    assert "match" in v.output

    for check in cert["checks"]:
        if check["name"] == "pell-negative-solvable":
            check["witness"]["b"] = 42
    cert_path.write_text(json.dumps(cert))
    v = _run("verify", str(cert_path))
    assert v.exit_code == 4
    assert "mismatch" in v.output


def test_hyper_end_to_end(tmp_path):
    cert_path = tmp_path / "hyper.json"
    r = _run(
        "hyper", "--D", "2", "--genus", "2", "--t", "auto",
        "--emit-cert", str(cert_path),
    )
    assert r.exit_code == 0
    cert = json.loads(cert_path.read_text())
    assert cert["verdict"] == "not definable over Q"
    assert cert["assumptions"] == []
    assert cert["params"]["t"] == "3"


def test_certificate_bytes_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        r = _run(
            "plane", "--D", "2", "--d", "4", "--t", "3",
            "--emit-cert", str(p),
        )
        assert r.exit_code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_verify_rejects_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run("verify", str(bad)).exit_code == 2

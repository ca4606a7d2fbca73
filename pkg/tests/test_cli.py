"""Command line behaviour: outputs, exit codes, atomic files."""
import json

import pytest

from eqcat.cli import EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_writes_checkable_certificate(tmp_path, capsys):
    path = tmp_path / "tc.json"
    code, out, _ = run(capsys, "compute", "c4", "tc", "--deterministic", "-o", str(path))
    assert code == EXIT_OK and "= 4" in out
    doc = json.loads(path.read_text())
    assert doc["value"] == 4 and "seconds" not in doc.get("stats", {})
    assert run(capsys, "check", str(path))[0] == EXIT_OK


def test_deterministic_output_is_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "compute", "z2-self", "stc", "--deterministic", "-o", str(a))
    run(capsys, "compute", "z2-self", "stc", "--deterministic", "-o", str(b))
    assert a.read_text() == b.read_text()
    assert json.loads(a.read_text())["value"] == 1


def test_tampered_certificate_fails_check(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "compute", "z3-self", "stc", "-o", str(path))
    doc = json.loads(path.read_text())
    doc["value"] = 2
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(path))
    assert code == EXIT_FAIL and out.startswith("invalid")


def test_compute_variants(capsys):
    code, out, _ = run(capsys, "compute", "c4", "catA", "--subset", "orbit0")
    assert code == EXIT_OK and json.loads(out)["value"] == 2
    code, out, _ = run(capsys, "compute", "c4", "whitehead", "--subset", "orbit0")
    assert code == EXIT_OK and json.loads(out)["value"] == "infinite"
    code, out, _ = run(capsys, "compute", "c4-reflection", "catG")
    assert code == EXIT_OK and json.loads(out)["value"] == "infinite"
    code, out, _ = run(capsys, "compute", "c4", "cat")
    assert code == EXIT_OK and json.loads(out)["value"] == 2


def test_unknown_result_exit_code(capsys):
    code, out, _ = run(capsys, "compute", "c6", "tc", "--budget", "5")
    assert code == EXIT_UNKNOWN and json.loads(out)["value"] == "unknown"


@pytest.mark.parametrize("argv", [
    ["compute", "nope", "tc"],
    ["compute", "c4", "catA"],
    ["compute", "c4", "catA", "--subset", "missing"],
    ["compute", "c4", "bogus"],
    ["verify", "no-such-suite"],
    ["planner", "--n", "3"],
    ["catalog", "dump"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [0],\n "covers": [[0, 9]]}')
    code, _, err = run(capsys, "compute", str(bad), "tc")
    assert code == EXIT_USAGE and "2:" in err and "undefined point" in err


def test_catalog_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == EXIT_OK and "c8-antipodal" in out
    path = tmp_path / "c4.json"
    assert run(capsys, "catalog", "dump", "c4", "-o", str(path))[0] == EXIT_OK
    code, out, _ = run(capsys, "compute", str(path), "tc")
    assert code == EXIT_OK and json.loads(out)["value"] == 4


def test_verify_suite(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "daleth-identities", "-o", str(path))
    assert code == EXIT_OK and "daleth-identities" in out
    doc = json.loads(path.read_text())
    assert doc["reports"][0]["suite"] == "daleth-identities"


def test_planner_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "planner", "--kind", "free", "--samples", "200")
    assert code == EXIT_OK and json.loads(out)["passed"]
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "planner", "--n", "2", "--samples", "500", "--adversarial", "50", "-o", str(path))
    summary = json.loads(out)
    assert summary["domain_count"] == 2 and summary["coverage"] == 1.0
    assert code == (EXIT_OK if summary["passed"] else EXIT_FAIL)
    assert json.loads(path.read_text())["kind"] == "planner-reflection"

import json
import subprocess
import sys

import pytest

from crystalrr.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert len(out.strip().splitlines()) == 10
    assert "a1-four-color" in out and "explore" in out


def test_verify_pass_and_json(capsys):
    code, out, _ = run(capsys, "verify", "a2-basic", "--order", "10", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "pass" and data["order"] == 10
    assert data["sum"]["20"] == 42  # p(10), keyed by twice the exponent


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "rr-single", "--order", "8")
    assert code == 0
    assert "PASS" in out and "classical" in out


def test_half_integer_order(capsys):
    code, out, _ = run(capsys, "verify", "half-int-distinct", "--order", "7/2", "--json")
    assert code == 0 and json.loads(out)["order"] == "7/2"


def test_unknown_case_exit_code(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2 and "unknown case" in err


def test_bad_order_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "a2-basic", "--order", "1/3"])
    assert exc.value.code == 2


def test_failing_case_exit_code(tmp_path, capsys):
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps({
        "matrix": [[2]],
        "specialization": {"m": 1, "shifts": {"1": 0}},
        "product": [{"modulus": 1, "residues": [0]}],
        "order": 10,
    }))
    code, out, _ = run(capsys, "load", str(path))
    assert code == 1
    assert "first mismatch at q^2: sum 1 vs product 2" in out


def test_load_config_error(tmp_path, capsys):
    path = tmp_path / "div.json"
    path.write_text(json.dumps({"matrix": [[1]], "specialization": {"m": 1, "shifts": {"1": 1}}}))
    code, _, err = run(capsys, "load", str(path))
    assert code == 2 and "divergent" in err


def test_series(capsys):
    code, out, _ = run(capsys, "series", "distinct-single", "--order", "6")
    assert code == 0
    assert out.strip() == "1 + q + q^2 + 2q^3 + 2q^4 + 3q^5 + 4q^6 + O(q^7)"


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "a2-basic", "--boxes", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "pass" and data["pairs_by_box"] == [1, 9, 27, 82, 207, 486]


def test_run_all_small(capsys):
    code, out, _ = run(capsys, "run-all", "--order", "4", "--no-timing")
    assert code == 0
    assert "10 cases, 2 structural suites, 0 failing" in out


def test_no_timing_output_is_byte_identical(capsys):
    outs = [run(capsys, "verify", "capparelli", "--order", "15", "--json", "--no-timing")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crystalrr", "series", "rr-single", "--order", "5"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "1 + q + q^2 + q^3 + 2q^4 + 2q^5 + O(q^6)"

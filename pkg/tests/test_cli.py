import json
import subprocess
import sys

import pytest

from tspp5.cli import ConfigError, main, parse_mod


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_mod():
    assert parse_mod("5^3") == 125
    assert parse_mod("25") == 25
    assert parse_mod(None) is None
    for bad in ("x", "1", "5^"):
        with pytest.raises(ConfigError):
            parse_mod(bad)


def test_compute_s_json(capsys):
    code, out, _ = run(capsys, "compute", "s", "--upto", "10")
    assert code == 0
    assert json.loads(out) == ["1", "1", "0", "0", "1", "0", "0", "2", "0", "0", "2"]


def test_compute_s_csv_and_mod(capsys):
    code, out, _ = run(capsys, "compute", "s", "--upto", "7", "--mod", "5^1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,value" and lines[-1] == "7,2"


def test_compute_g_table(capsys):
    code, out, _ = run(capsys, "compute", "g", "--upto", "4", "--format", "table")
    assert code == 0 and out.split()[-1] == "5"


def test_compute_series(capsys):
    code, out, _ = run(capsys, "compute", "series", "M2", "--prec", "10")
    data = json.loads(out)
    assert code == 0 and data["coeffs"] == ["1", "-1", "0", "0", "0", "0", "0", "0", "0", "-1"]


def test_matrices_regen_and_verify(capsys, tmp_path):
    path = tmp_path / "ab.json"
    code, _, _ = run(capsys, "matrices", "regen", "--rows", "6", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert [m["kind"] for m in data] == ["A", "B"] and len(data[0]["rows"]) == 6
    code, out, _ = run(capsys, "matrices", "verify-appendix", "--in", str(path))
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_matrices_verify_detects_tampering(capsys, tmp_path):
    path = tmp_path / "ab.json"
    run(capsys, "matrices", "regen", "--kind", "A", "--out", str(path))
    data = json.loads(path.read_text())
    data["rows"][0]["entries"]["1"] = "12"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "matrices", "verify-appendix", "--in", str(path))
    assert code == 1 and json.loads(out)["witnesses"][0][0] == ["A", 1]


def test_dseq(capsys):
    code, out, _ = run(capsys, "dseq", "--alpha", "3", "--via", "t")
    assert code == 0
    assert json.loads(out)["entries"]["1"] == "-17425"


def test_bounds(capsys):
    for which in ("a", "b", "t", "d"):
        code, out, _ = run(capsys, "bounds", "--which", which, "--imax", "4", "--jmax", "20")
        assert code == 0, out


def test_verify_claim_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "claim", "--target", "s", "--mod", "5", "--stride", "10", "--offset", "5",
                       "--nmax", "100")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, _, _ = run(capsys, "verify", "claim", "--target", "s", "--mod", "5", "--stride", "10", "--offset", "1",
                     "--nmax", "10")
    assert code == 1
    code, _, err = run(capsys, "verify", "claim", "--target", "s", "--mod", "6", "--stride", "10", "--offset", "5",
                       "--nmax", "10")
    assert code == 2 and "powers of 5" in err


def test_verify_thd_and_theta(capsys):
    assert run(capsys, "verify", "thd", "--alpha", "2", "--prec", "30")[0] == 0
    assert run(capsys, "verify", "thgd", "--alpha", "1", "--prec", "40")[0] == 0
    assert run(capsys, "verify", "theta", "--prec", "200")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys, "dseq", "--alpha", "0")[0] == 2
    assert run(capsys, "dseq", "--alpha", "2", "--via", "t")[0] == 2
    assert run(capsys, "verify", "thd", "--alpha", "7", "--prec", "10")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "nope"])
    assert exc.value.code == 2


def test_report_round_trip(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    run(capsys, "verify", "theta", "--prec", "100", "--out", str(path))
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "report", str(path), "--format", "json")
    assert len(out.strip().splitlines()) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tspp5", "compute", "s", "--upto", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)[-1] == "1"

import csv
import json

import numpy as np
import pytest

from ebi_forge import build_instance, reference
from ebi_forge.bounds import sos_certificate
from ebi_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBuild:
    def test_qutrit_summary(self, capsys, tmp_path):
        out_path = tmp_path / "t.json"
        code, out, _ = run(capsys, "build", "--dim", "3", "--fiducial", "hesse", "--out", str(out_path))
        assert code == 0
        assert out.strip() == "d=3 L=15 Q=18 visibility=0.8333"
        data = json.loads(out_path.read_text())
        assert data["d"] == 3 and data["seedOnly"] is False and data["fiducial"]["source"] == "hesse"

    def test_qubit_summary(self, capsys):
        code, out, _ = run(capsys, "build", "--dim", "2")
        assert code == 0
        assert out.strip() == "d=2 L=3.4641 Q=4 visibility=0.8660"

    def test_non_prime(self, capsys):
        code, _, err = run(capsys, "build", "--dim", "4")
        assert code == 1
        assert "d must be prime" in err

    def test_theta_needs_qutrit(self, capsys):
        assert run(capsys, "build", "--dim", "2", "--theta", "0.2")[0] == 1

    def test_file_and_selector_exclusive(self, capsys, d5_fiducial_path):
        assert run(capsys, "build", "--fiducial", "hesse", "--fiducial-file", str(d5_fiducial_path))[0] == 1

    def test_unknown_check(self, capsys):
        assert run(capsys, "verify", "--dim", "3", "--checks", "sic,nope")[0] == 1

    def test_rejected_fiducial(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"d": 3, "amplitudes": [[1, 0], [0, 0], [0, 0]]}))
        code, _, err = run(capsys, "build", "--fiducial-file", str(path))
        assert code == 2
        assert "fiducial rejected" in err

    def test_missing_builtin(self, capsys):
        assert run(capsys, "build", "--dim", "5")[0] == 2

    def test_theta(self, capsys):
        code, out, _ = run(capsys, "build", "--dim", "3", "--fiducial", "theta", "--theta", "0.5")
        assert code == 0 and out.startswith("d=3 L=15 Q=18")

    def test_d5_file(self, capsys, d5_fiducial_path):
        code, out, _ = run(capsys, "build", "--fiducial-file", str(d5_fiducial_path))
        assert code == 0
        assert "Q=100" in out and "heuristic" in out


class TestVerify:
    def test_round_trip(self, capsys, tmp_path):
        t = tmp_path / "t.json"
        rep = tmp_path / "r.json"
        assert run(capsys, "build", "--dim", "3", "--out", str(t))[0] == 0
        code, out, _ = run(capsys, "verify", "--in", str(t), "--out", str(rep))
        assert code == 0
        assert "FAIL" not in out
        data = json.loads(rep.read_text())
        inst = build_instance(3, "hesse")
        direct = sos_certificate(inst.tensor, inst.realization).to_dict()
        assert data["certificate"] == direct

    def test_fresh_build(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "3", "--fiducial", "hesse")
        assert code == 0
        assert out.count("[PASS]") == 9

    def test_tampered_tensor(self, capsys, tmp_path):
        t = tmp_path / "t.json"
        run(capsys, "build", "--dim", "3", "--out", str(t))
        data = json.loads(t.read_text())
        data["F"][0]["rows"][2][4] = [0.7, -0.1]
        t.write_text(json.dumps(data))
        code, out, err = run(capsys, "verify", "--in", str(t))
        assert code == 3
        assert "[FAIL] rows" in out
        assert "rows" in err

    def test_subset(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "3", "--checks", "sic,mub")
        assert code == 0
        assert out.count("[PASS]") == 2 and "sic" in out and "mub" in out

    def test_json_stdout(self, capsys):
        code, out, _ = run(capsys, "verify", "--dim", "2", "--checks", "sos", "--format", "json")
        assert code == 0
        payload = json.loads(out[out.index("{"):])
        assert payload["pass"] is True and payload["tolerances"]["tau_mat"] == 1e-9

    def test_tight_tolerance_fails(self, capsys):
        assert run(capsys, "verify", "--dim", "3", "--checks", "sos", "--tolerance", "1e-20")[0] == 3


class TestExportReport:
    def test_export_json(self, capsys, tmp_path):
        t = tmp_path / "t.json"
        assert run(capsys, "export", "--dim", "3", "--format", "json", "--out", str(t))[0] == 0
        data = json.loads(t.read_text())
        F1 = np.array([[complex(*z) for z in row] for row in data["F"][0]["rows"]])
        assert np.abs(F1 - reference.F1_QUTRIT).max() <= 1e-12

    def test_export_csv(self, capsys, tmp_path):
        t = tmp_path / "g.csv"
        assert run(capsys, "export", "--dim", "2", "--format", "csv", "--out", str(t))[0] == 0
        rows = list(csv.reader(t.open()))
        assert rows[0] == ["x", "y", "alpha", "beta", "g"]
        assert len(rows) == 1 + 3 * 4 * 2 * 2

    def test_report_csv_count(self, capsys):
        code, out, _ = run(capsys, "report", "--dim", "3", "--format", "csv")
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 648

    def test_report_qutrit(self, capsys):
        code, out, _ = run(capsys, "report", "--dim", "3")
        assert code == 0
        assert "max |F_1 - reference F_1|" in out
        assert "[FAIL]" not in out
        assert "SIC_2" in out and "MUB_1..MUB_4" in out

    def test_report_qubit(self, capsys):
        code, out, _ = run(capsys, "report", "--dim", "2")
        assert code == 0
        assert "y -> 3 - y" in out and "sqrt(3)" in out

    def test_bounds_json(self, capsys):
        code, out, _ = run(capsys, "bounds", "--dim", "3", "--format", "json", "--parallel")
        assert code == 0
        data = json.loads(out)
        assert data["L"] == pytest.approx(15, abs=1e-9) and data["exactL"] is True
        assert data["strategy"]["alice"] == [0] * 8

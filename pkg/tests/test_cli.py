"""End-to-end CLI behavior: exit codes, JSON records, file outputs."""

import json
import math

import pytest

from mobcert import __version__
from mobcert.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestCertify:
    def test_single_rho(self, capsys):
        rc, out, err = run(capsys, "certify", "--p", "3", "--q", "3", "--rho", "9+0.1i")
        assert rc == 0 and err == ""
        doc = json.loads(out)
        assert set(doc) == {
            "input", "verdict", "witness", "slack", "gamma",
            "symmetry_image", "lambda_branches",
        }
        assert doc["input"] == {"p": 3, "q": 3, "rho": [9.0, 0.1]}
        assert doc["verdict"] == "FreeDiscrete"
        assert doc["witness"] == "DisksElliptic"
        assert doc["slack"] > 0
        g = complex(*doc["gamma"])
        rho = 9 + 0.1j
        assert abs(g - rho * (rho - 3.0)) < 1e-9
        assert doc["symmetry_image"] == pytest.approx([-6.0, -0.1])
        assert len(doc["lambda_branches"]) == 2

    def test_multiple_rho_one_line_each(self, capsys):
        rc, out, _ = run(
            capsys, "certify", "--p", "3", "--q", "4",
            "--rho", "9", "--rho", "0.5+0.1i", "--rho", "-5",
        )
        assert rc == 0
        lines = out.strip().split("\n")
        assert len(lines) == 3
        docs = [json.loads(ln) for ln in lines]
        assert docs[0]["verdict"] == "FreeDiscrete"
        assert docs[1]["verdict"] == "NoCertificate"
        assert docs[2]["verdict"] == "FreeDiscrete"

    def test_infinite_order(self, capsys):
        rc, out, _ = run(capsys, "certify", "--p", "inf", "--q", "3", "--rho", "9")
        assert rc == 0
        doc = json.loads(out)
        assert doc["input"]["p"] == "inf"
        assert doc["verdict"] == "FreeDiscrete"
        assert doc["symmetry_image"] is None
        assert doc["lambda_branches"] is None

    def test_burau_mode(self, capsys):
        rc, out, _ = run(capsys, "certify", "--burau", "--mu", "9")
        assert rc == 0
        doc = json.loads(out)
        assert set(doc) == {
            "input", "verdict", "witness", "slack", "z", "rho", "lambda_branches",
        }
        assert doc["verdict"] == "Faithful"
        assert doc["witness"] == "LambdaRegion"
        assert doc["z"] == pytest.approx([8.0 / 3.0, 0.0])
        assert doc["rho"] == pytest.approx([math.sqrt(3.0), 8.0 / 3.0])

    def test_no_search_still_runs(self, capsys):
        rc, out, _ = run(
            capsys, "certify", "--p", "3", "--q", "3", "--no-search", "--rho", "9",
        )
        assert rc == 0
        assert json.loads(out)["verdict"] == "FreeDiscrete"

    def test_missing_rho_is_usage_error(self, capsys):
        rc, _, err = run(capsys, "certify", "--p", "3", "--q", "3")
        assert rc == 3
        assert err.startswith("error:")

    def test_forbidden_marking(self, capsys):
        rc, _, err = run(capsys, "certify", "--p", "2", "--q", "2", "--rho", "9")
        assert rc == 3
        assert "error:" in err

    def test_burau_mu_zero(self, capsys):
        rc, _, err = run(capsys, "certify", "--burau", "--mu", "0")
        assert rc == 3
        assert "error:" in err

    def test_malformed_rho_exits_2(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["certify", "--p", "3", "--q", "3", "--rho", "spam"])
        assert ei.value.code == 2
        capsys.readouterr()


class TestRegion:
    def test_svg_stdout(self, capsys):
        rc, out, _ = run(capsys, "region", "--p", "4", "--q", "4")
        assert rc == 0
        assert out.startswith("<svg ")
        assert out.count("<line ") == 6

    def test_json_to_file(self, capsys, tmp_path):
        target = tmp_path / "region.json"
        rc, out, _ = run(
            capsys, "region", "--p", "3", "--q", "7", "--format", "json",
            "--out", str(target),
        )
        assert rc == 0 and out == ""
        doc = json.loads(target.read_text())
        assert doc["p"] == 3 and doc["q"] == 7

    def test_unsupported_order(self, capsys):
        rc, _, err = run(capsys, "region", "--p", "2", "--q", "5")
        assert rc == 3
        assert err.startswith("error:")


class TestScan:
    def test_writes_csv_and_svg(self, capsys, tmp_path):
        base = tmp_path / "grid"
        rc, out, _ = run(
            capsys, "scan", "--p", "3", "--q", "3", "--window=-1,1,-1,1",
            "--res", "8", "--mode", "omega", "--backend", "numpy",
            "--out", str(base),
        )
        assert rc == 0
        doc = json.loads(out)
        assert doc["csv"] == str(base) + ".csv"
        assert doc["raster"] == str(base) + ".svg"
        assert doc["metadata"]["resolution"] == 8
        csv = (tmp_path / "grid.csv").read_bytes()
        assert csv.startswith(b"x,y,code\n")
        assert len(csv.strip().split(b"\n")) == 1 + 64
        svg = (tmp_path / "grid.svg").read_text()
        assert svg.startswith("<svg ")

    def test_pgm_format(self, capsys, tmp_path):
        base = tmp_path / "grid"
        rc, out, _ = run(
            capsys, "scan", "--p", "3", "--q", "4", "--window=-1,1,-1,1",
            "--res", "4", "--mode", "disks", "--format", "pgm",
            "--backend", "numpy", "--out", str(base),
        )
        assert rc == 0
        assert (tmp_path / "grid.pgm").read_bytes().startswith(b"P2\n4 4\n5\n")

    def test_window_syntax_error(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["scan", "--p", "3", "--q", "3", "--window=-1,1,-1",
                  "--res", "4", "--out", "x"])
        assert ei.value.code == 2
        capsys.readouterr()

    def test_bad_backend_choice(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["scan", "--p", "3", "--q", "3", "--window=-1,1,-1,1",
                  "--res", "4", "--out", "x", "--backend", "fortran"])
        assert ei.value.code == 2
        capsys.readouterr()

    def test_invalid_marking_exits_3(self, capsys, tmp_path):
        rc, _, err = run(
            capsys, "scan", "--p", "2", "--q", "2", "--window=-1,1,-1,1",
            "--res", "4", "--mode", "lambda", "--backend", "numpy",
            "--out", str(tmp_path / "x"),
        )
        assert rc == 3
        assert err.startswith("error:")


class TestOtherCommands:
    def test_cusps(self, capsys):
        rc, out, _ = run(capsys, "cusps", "--p", "3", "--q", "4")
        assert rc == 0
        doc = json.loads(out)
        assert set(doc["slopes"]) == {"0/1", "1/1", "1/2", "1/3"}
        assert len(doc["boundary_cusps"]) == 4
        for entry in doc["slopes"].values():
            assert entry["word"]
            assert len(entry["roots"]) == len(entry["residues"])
            assert all(r < 1e-9 for r in entry["residues"])

    def test_compare_lambda_csv(self, capsys):
        rc, out, _ = run(
            capsys, "compare-lambda", "--p", "3", "--q", "3",
            "--angles", "4", "--format", "csv",
        )
        assert rc == 0
        assert out.startswith("theta,t_disks,t_lambda,winner\n")
        assert len(out.strip().split("\n")) == 5

    def test_compare_lambda_json(self, capsys):
        rc, out, _ = run(
            capsys, "compare-lambda", "--p", "3", "--q", "3",
            "--angles", "4", "--format", "json",
        )
        assert rc == 0
        doc = json.loads(out)
        assert doc["p"] == 3 and len(doc["rows"]) == 4

    def test_burau_annulus(self, capsys):
        rc, out, _ = run(capsys, "burau-annulus", "--mu", "9", "--mu", "1")
        assert rc == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        far, near = (json.loads(ln) for ln in lines)
        assert far["certified_faithful"] and not far["in_proved_annulus"]
        assert far["verdict"] == "Faithful"
        assert not near["certified_faithful"]
        assert near["in_conjectured_annulus"] and near["in_proved_annulus"]

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["--version"])
        assert ei.value.code == 0
        out = capsys.readouterr().out
        assert out.strip() == f"mobcert {__version__}"

    def test_no_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main([])
        assert ei.value.code == 2
        capsys.readouterr()

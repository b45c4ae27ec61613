# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

import json

import pytest

from bandedge.cli import cli
from tests.conftest import NARROW_BAND_LAYERS, canonical_edges


def _rows(text):
    lines = text.splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


@pytest.mark.integration
class TestCli:
    def test_bands(self, runner, config_file):
        ret = runner.invoke(cli, ["bands", f"--config={config_file()}", "--omega-max=8"])
        assert 0 == ret.exit_code, ret.stderr
        header, rows = _rows(ret.stdout)
        assert header.startswith("# band,omega_lo,omega_hi,parity_lo,parity_hi")
        assert rows[0][:2] == ["1", "0"]
        assert float(rows[0][2]) == pytest.approx(canonical_edges()[0], rel=1e-10)
        assert float(rows[1][1]) == pytest.approx(canonical_edges()[1], rel=1e-10)

    def test_bands_to_files(self, runner, config_file, tmp_path):
        out, summary = tmp_path / "bands.csv", tmp_path / "bands.json"
        ret = runner.invoke(cli, ["bands", f"--config={config_file()}", f"--out={out}", f"--json={summary}"])
        assert 0 == ret.exit_code, ret.stderr
        assert ret.stdout == ""
        assert out.read_text(encoding="utf-8").startswith("# band,")
        edges = json.loads(summary.read_text(encoding="utf-8"))["edges"]
        assert [edge["parity"] for edge in edges[:2]] == [-1, -1]

    def test_edge_fit_dos(self, runner, config_file):
        ret = runner.invoke(cli, ["edge-fit", f"--config={config_file()}", "--gap=1", "--side=lower", "--target=dos"])
        assert 0 == ret.exit_code, ret.stderr
        summary = json.loads(ret.stdout)
        assert summary["fit"]["eta"] == pytest.approx(-0.5, abs=0.02)
        assert summary["fit"]["r_squared"] >= 0.999
        assert summary["edge"]["omega_c"] == pytest.approx(canonical_edges()[0], rel=1e-10)

    def test_edge_fit_universality(self, runner, config_file, tmp_path):
        out = tmp_path / "fits.csv"
        ret = runner.invoke(
            cli,
            ["edge-fit", f"--config={config_file()}", "--target=ldos", "--positions=3", "--seed=4", f"--out={out}"],
        )
        assert 0 == ret.exit_code, ret.stderr
        header, rows = _rows(out.read_text(encoding="utf-8"))
        assert header == "# x,regime,eta,amplitude,r_squared,clean"
        assert [row[1] for row in rows] == ["generic"] * 3 + ["node"]
        assert all(float(row[2]) == pytest.approx(-0.5, abs=0.05) for row in rows[:3])
        assert float(rows[3][2]) == pytest.approx(0.5, abs=0.05)

    def test_sensitivity(self, runner, config_file):
        ret = runner.invoke(
            cli, ["sensitivity", f"--config={config_file()}", "--gap=1", "--side=upper", "--shift=1e-4"]
        )
        assert 0 == ret.exit_code, ret.stderr
        report = json.loads(ret.stdout)["sensitivity"]
        assert report["max_ratio"] >= 3.0
        assert report["asymptotic_slope"] == pytest.approx(-1.0, abs=0.1)
        assert report["node_x"] == pytest.approx(5.0 / 6.0, abs=1e-9)

    def test_sensitivity_unknown_node(self, runner, config_file):
        ret = runner.invoke(cli, ["sensitivity", f"--config={config_file()}", "--side=upper", "--node=2"])
        assert 2 == ret.exit_code

    def test_nodes(self, runner, config_file):
        ret = runner.invoke(cli, ["nodes", f"--config={config_file()}", "--side=lower"])
        assert 0 == ret.exit_code, ret.stderr
        _, rows = _rows(ret.stdout)
        nodes = [float(row[1]) for row in rows if row[0] == "node"]
        assert nodes == pytest.approx([1.0 / 3.0], abs=1e-9)

    def test_dos_and_ldos(self, runner, config_file):
        args = ["dos", f"--config={config_file()}", "--omega-min=1", "--omega-max=3", "--omega-steps=5"]
        ret = runner.invoke(cli, args)
        assert 0 == ret.exit_code, ret.stderr
        header, rows = _rows(ret.stdout)
        assert header == "# omega,omega_cl,dos,in_gap"
        assert [row[3] for row in rows] == ["0", "0", "1", "1", "0"]

        ret = runner.invoke(cli, ["ldos", f"--config={config_file(x=0.3)}", "--omega-steps=3"])
        assert 0 == ret.exit_code, ret.stderr
        header, rows = _rows(ret.stdout)
        assert header == "# omega,omega_cl,x,ldos,in_gap"
        assert [row[2] for row in rows] == ["0.29999999999999999"] * 3

    def test_serate(self, runner, config_file):
        args = ["serate", f"--config={config_file()}", "--omega-steps=4", "--show-progress-bar=false"]
        ret = runner.invoke(cli, args + ["--dist=gauss:0.2:0.05"])
        assert 0 == ret.exit_code, ret.stderr
        _, rows = _rows(ret.stdout)
        assert len(rows) == 4
        assert all(float(row[2]) >= 0.0 for row in rows)

    def test_models(self, runner, tmp_path):
        summary = tmp_path / "model.json"
        ret = runner.invoke(
            cli,
            ["models", "--model=anisotropic", "--omega-c=2", "--A=0.5", "--omega-steps=11", f"--json={summary}"],
        )
        assert 0 == ret.exit_code, ret.stderr
        result = json.loads(summary.read_text(encoding="utf-8"))
        assert result["fit"]["eta"] == pytest.approx(0.5, abs=0.01)
        assert result["model"] == {"model": "anisotropic", "omega_c": 2.0, "A": 0.5}

    def test_deterministic_output(self, runner, config_file):
        args = ["edge-fit", f"--config={config_file()}", "--side=upper"]
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert 0 == first.exit_code == second.exit_code
        assert first.stdout == second.stdout

    @pytest.mark.parametrize(
        "args",
        [
            ["dos"],
            ["dos", "--omega-min=2", "--omega-max=1"],
            ["edge-fit", "--side=left"],
            ["edge-fit", "--window=1e-4:1e-6"],
            ["serate", "--dist=cauchy"],
            ["bands", "--root-rtol=0"],
        ],
    )
    def test_config_errors(self, runner, config_file, args):
        if args != ["dos"]:
            args = args + [f"--config={config_file()}"]
        ret = runner.invoke(cli, args)
        assert 2 == ret.exit_code
        assert ret.stdout == ""

    def test_malformed_document(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"layers": [{"n": 1, "d": 1},]}', encoding="utf-8")
        ret = runner.invoke(cli, ["bands", f"--config={path}"])
        assert 2 == ret.exit_code

    def test_numerical_failure(self, runner, tmp_path):
        path = tmp_path / "uniform.json"
        path.write_text(json.dumps({"layers": [{"n": 1.0, "d": 1.0}]}), encoding="utf-8")
        ret = runner.invoke(cli, ["edge-fit", f"--config={path}", "--omega-max=1", "--scan-density=2000"])
        assert 3 == ret.exit_code
        assert ret.stdout == ""


    def test_scan_too_coarse(self, runner, tmp_path):
        path = tmp_path / "narrow.json"
        path.write_text(json.dumps({"layers": [{"n": n, "d": d} for n, d in NARROW_BAND_LAYERS]}), encoding="utf-8")
        ret = runner.invoke(cli, ["bands", f"--config={path}", "--omega-max=20", "--scan-density=2"])
        assert 3 == ret.exit_code
        assert ret.stdout == ""

    def test_dos_from_zero_frequency(self, runner, config_file):
        args = ["dos", f"--config={config_file()}", "--omega-min=0", "--omega-max=1", "--omega-steps=3"]
        ret = runner.invoke(cli, args)
        assert 0 == ret.exit_code, ret.stderr
        _, rows = _rows(ret.stdout)
        assert rows[0][0] == "0"
        assert rows[0][3] == "0"
        assert float(rows[0][2]) > 0.0

import json
import math

import pytest

from coverbound import GeneratorSpec, generate
from coverbound.cli import main


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(generate(GeneratorSpec("complete", n=4)).serialize())
    return str(path)


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(generate(GeneratorSpec("cycle", n=5)).serialize())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestValidate:
    def test_ok(self, capsys, k4_file):
        code, out = run(capsys, "validate", "--graph", k4_file, "--json")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["vertices"] == 4
        assert rep["results"]["regular_weighted_degree"] == 3.0
        assert rep["passed"]

    def test_missing_file(self, capsys):
        code = main(["validate", "--graph", "/nonexistent/file.txt"])
        assert code == 2

    def test_bad_graph(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 0 1.0\n")
        assert main(["validate", "--graph", str(path)]) == 2


class TestGen:
    def test_roundtrip(self, capsys, tmp_path):
        out_file = tmp_path / "g.txt"
        code, _ = run(
            capsys,
            "gen", "--family", "random-regular", "--n", "16", "--d", "3",
            "--seed", "9", "--out", str(out_file),
        )
        assert code == 0
        code, out = run(capsys, "validate", "--graph", str(out_file), "--json")
        assert code == 0
        assert json.loads(out)["results"]["vertices"] == 16

    def test_stdout_mode(self, capsys):
        code, out = run(capsys, "gen", "--family", "cycle", "--n", "4")
        assert code == 0
        assert len([l for l in out.splitlines() if l.strip()]) == 4


class TestUnravel:
    def test_dump_format(self, capsys, c5_file):
        code, out = run(
            capsys, "unravel", "--graph", c5_file, "--vertex", "0", "--r", "2", "--dump"
        )
        assert code == 0
        rows = [l for l in out.splitlines() if len(l.split()) == 3 and not l.startswith("#")]
        # 4 tree edges: parent child weight
        assert any(r.split()[:2] == ["0", "1"] for r in rows)

    def test_oracle_agrees(self, capsys, c5_file):
        code, out = run(
            capsys, "unravel", "--graph", c5_file, "--vertex", "0", "--r", "3",
            "--oracle", "--json",
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["oracle_agrees"]

    def test_unknown_vertex(self, capsys, c5_file):
        assert main(["unravel", "--graph", c5_file, "--vertex", "zz", "--r", "1"]) == 2


class TestChain:
    def test_line_formats(self, capsys, c5_file):
        code, out = run(capsys, "chain", "--graph", c5_file, "--chain", "uniform")
        assert code == 0
        lines = out.splitlines()
        trans = [l for l in lines if len(l.split()) == 5 and not l.startswith("#")]
        pis = [l for l in lines if len(l.split()) == 3 and not l.startswith("#")]
        assert len(trans) == 10  # C5: one prolongation per directed edge
        assert len(pis) == 10
        assert all(float(l.split()[4]) == 1.0 for l in trans)
        assert all(float(l.split()[2]) == pytest.approx(0.1) for l in pis)


class TestBound:
    def test_simple_on_k4(self, capsys, k4_file):
        code, out = run(
            capsys, "bound", "--graph", k4_file, "--kind", "simple", "--r", "3", "--json"
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["value"] == pytest.approx(math.sqrt(2), rel=1e-12)
        assert rep["results"]["existence"]["per_vertex_lambda1"]
        assert rep["passed"]

    def test_weak_fails_on_low_degree(self, capsys, k4_file):
        code, out = run(capsys, "bound", "--graph", k4_file, "--kind", "weak", "--json")
        assert code == 1
        rep = json.loads(out)
        assert not rep["passed"]

    def test_g_table(self, capsys, k4_file, tmp_path):
        g = generate(GeneratorSpec("complete", n=4))
        table = tmp_path / "g.txt"
        lines = []
        for u, v, _w in g.edges:
            lines.append(f"{u} {v} 1.25")
            lines.append(f"{v} {u} 1.25")
        table.write_text("\n".join(lines))
        code, out = run(
            capsys, "bound", "--graph", k4_file, "--kind", "general", "--r", "2",
            "--g", f"table:{table}", "--json",
        )
        assert code == 0
        # constant g: same value as g = one
        rep = json.loads(out)
        assert rep["results"]["value"] == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_g_table_incomplete_rejected(self, capsys, k4_file, tmp_path):
        table = tmp_path / "g.txt"
        table.write_text("0 1 1.0\n")
        code = main(
            ["bound", "--graph", k4_file, "--kind", "general", "--g", f"table:{table}"]
        )
        assert code == 2

    def test_oracle_flag(self, capsys, k4_file):
        code, out = run(
            capsys, "bound", "--graph", k4_file, "--kind", "general", "--r", "2",
            "--oracle", "--json",
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["oracle_lambda1"] == pytest.approx(3.0, abs=1e-8)


class TestCertify:
    def test_theorem(self, capsys, c5_file):
        code, out = run(
            capsys, "certify", "--graph", c5_file, "--kind", "theorem", "--r", "3", "--json"
        )
        assert code == 0
        rep = json.loads(out)
        cert = rep["results"]["certificate"]
        assert abs(cert["slack"]) <= 1e-9

    def test_case1_includes_vector(self, capsys, tmp_path):
        from coverbound.generators import cycle_graph

        path = tmp_path / "c4w.txt"
        path.write_text(cycle_graph(4, weights=[1.5, 0.5, 1.5, 0.5]).serialize())
        code, out = run(
            capsys, "certify", "--graph", str(path), "--kind", "case1",
            "--edge", "0", "1", "--include-vector", "--json",
        )
        assert code == 0
        cert = json.loads(out)["results"]["certificate"]
        assert cert["rayleigh"] == pytest.approx(1.5, abs=1e-12)
        assert cert["vector"] is not None

    def test_lemma42(self, capsys, k4_file):
        code, out = run(
            capsys, "certify", "--graph", k4_file, "--kind", "lemma42",
            "--vertex", "0", "--r", "2", "--json",
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["lemma42"]["ball_lambda1"] == pytest.approx(3.0, abs=1e-8)

    def test_lemma42_with_oracle(self, capsys, k4_file):
        code, out = run(
            capsys, "certify", "--graph", k4_file, "--kind", "lemma42",
            "--vertex", "1", "--r", "1", "--oracle", "--json",
        )
        assert code == 0
        rep = json.loads(out)
        names = [c["name"] for c in rep["results"]["checks"]]
        assert any("oracle" in n for n in names)

    def test_ratio(self, capsys, k4_file):
        code, out = run(
            capsys, "certify", "--graph", k4_file, "--kind", "ratio", "--seed", "3", "--json"
        )
        assert code == 0

    def test_lambda2_check_failure_exit_code(self, capsys, tmp_path):
        path = tmp_path / "k41.txt"
        path.write_text(generate(GeneratorSpec("complete", n=41)).serialize())
        code = main(
            ["certify", "--graph", str(path), "--kind", "lambda2", "--r", "1"]
        )
        assert code == 1  # empty residual core: check failure, not usage error


class TestConstantsAndPlot:
    def test_constants_values(self, capsys):
        code, out = run(capsys, "constants", "--json")
        assert code == 0
        res = json.loads(out)["results"]
        assert res["mu"] == pytest.approx(0.3169873, abs=1e-7)
        assert res["t0"] == pytest.approx(0.1389, abs=5e-4)
        assert res["x0"] == pytest.approx(0.6917, abs=5e-4)
        assert res["inv_t0"] == pytest.approx(7.1980, abs=1e-3)

    def test_plot_g(self, capsys, tmp_path):
        out_file = tmp_path / "g.csv"
        code, _ = run(capsys, "plot-g", "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "y,g,ell_t0"
        assert len(lines) == 514  # header + 513 samples on [0, 1] step 1/512
        y, g, ell = (float(x) for x in lines[1].split(","))
        assert (y, g) == (0.0, 0.0)


def test_unknown_subcommand():
    assert main(["frobnicate"]) == 2


def test_unknown_flag():
    assert main(["constants", "--frobnicate"]) == 2

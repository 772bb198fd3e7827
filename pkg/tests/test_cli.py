import json
from fractions import Fraction as F

import pytest

from kazhlip import GeneratorSet, PLHomeo
from kazhlip.cli import main
from kazhlip.figures import phi_branch_table, phi_inv_branch_table, render_svg


@pytest.fixture
def translations_file(tmp_path):
    S = GeneratorSet(
        "Z",
        (
            ("t", PLHomeo.translation(1)),
            ("T", PLHomeo.translation(-1)),
        ),
        symmetric=True,
    )
    path = tmp_path / "group.json"
    path.write_text(S.to_json())
    return str(path)


@pytest.fixture
def bump_pair_file(tmp_path):
    bump = PLHomeo.from_pairs([(0, 0), (1, 2), (3, 3)])
    S = GeneratorSet("bump", (("b", bump), ("B", bump.invert())), symmetric=True)
    path = tmp_path / "bump.json"
    path.write_text(S.to_json())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPhiCommands:
    def test_phi_value(self, capsys):
        code, out, _ = run(capsys, "phi", "1.0")
        assert code == 0
        assert out.startswith("7.389056098930650")

    def test_phi_inv_value(self, capsys):
        code, out, _ = run(capsys, "phi-inv", "2")
        assert code == 0
        assert out.startswith("0.34657359")

    def test_domain_error_exit_1(self, capsys):
        code, _, err = run(capsys, "phi", "1.5")
        assert code == 1 and "error" in err

    def test_precision_flag(self, capsys):
        code, out, _ = run(capsys, "--precision", "20", "phi", "1.0")
        assert code == 0
        code2, out2, _ = run(capsys, "--precision", "40", "phi", "1.0")
        assert len(out2.strip()) > len(out.strip())

    def test_precision_floor(self, capsys):
        code, _, err = run(capsys, "--precision", "5", "phi", "1.0")
        assert code == 1


class TestPhiTable:
    def test_csv_branches(self, capsys):
        code, out, _ = run(capsys, "phi-table", "--which", "phi-branches",
                           "--grid", "0:1.2:0.1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,exp_branch,rational_branch,max"
        first = lines[1].split(",")
        assert float(first[1]) == 1.0 and float(first[2]) == 1.0

    def test_branch_values_at_point(self):
        table = phi_branch_table("1.2", "1.2", "1")
        (t, b1, b2, _), = table.rows
        assert abs(float(b1) - 11.023) < 1e-2
        assert abs(float(b2) - 12.755) < 1e-2

    def test_inv_branch_values_at_point(self):
        table = phi_inv_branch_table(4, 4, 1)
        (t, b1, b2, combined), = table.rows
        assert abs(float(b1) - 0.6931 / 2 * 2) < 1e-3
        assert abs(float(b2) - 1.0) < 1e-12
        assert combined == b1

    def test_svg(self, capsys, tmp_path):
        out_file = tmp_path / "fig.svg"
        code, _, _ = run(capsys, "phi-table", "--format", "svg",
                         "--out", str(out_file))
        assert code == 0
        svg = out_file.read_text()
        assert svg.startswith("<svg") and svg.count("<polyline") == 2
        assert "crossover" in svg

    def test_grid_domain_error(self, capsys):
        code, _, _ = run(capsys, "phi-table", "--grid", "0:1.5:0.1")
        assert code == 1

    def test_svg_render_inv(self):
        svg = render_svg(phi_inv_branch_table(1, 23, 1))
        assert "<svg" in svg


class TestGroupCommands:
    def test_lip(self, capsys, bump_pair_file):
        code, out, _ = run(capsys, "lip", bump_pair_file, "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["L"] == "2" and payload["M"] == "1"

    def test_fixed_points_empty(self, capsys, translations_file):
        code, out, _ = run(capsys, "fixed-points", translations_file)
        assert code == 0 and "verdict: empty" in out

    def test_fixed_points_nonempty(self, capsys, bump_pair_file):
        code, out, _ = run(capsys, "fixed-points", bump_pair_file)
        assert code == 0 and "verdict: nonempty" in out

    def test_bound_translations_csv(self, capsys, translations_file):
        code, out, _ = run(
            capsys, "bound", translations_file, "--p", "2",
            "--schedule", "1,4,16", "--format", "csv",
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        for row in rows:
            n = F(row[3])
            d = float(row[4])
            assert abs(d - float(n) ** -0.5) < 1e-12

    def test_bound_hypothesis_flag_exit_3(self, capsys, bump_pair_file):
        code, out, _ = run(capsys, "bound", bump_pair_file, "--schedule", "2,4")
        assert code == 3 and "VIOLATED" in out

    def test_sweep(self, capsys, translations_file):
        code, out, _ = run(capsys, "sweep", translations_file,
                           "--p", "2,4", "--schedule", "1,2")
        assert code == 0
        assert len(out.strip().splitlines()) == 5

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "lip", str(bad))
        assert code == 2

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, "lip", "/nonexistent/group.json")
        assert code == 2

    def test_schema_error_field_path(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"name": "x", "generators": [
            {"label": "a", "map": {"nodes": [["0", "0"], ["0", "1"]]}}
        ]}))
        code, _, err = run(capsys, "lip", str(bad))
        assert code == 2 and "generators[0].map" in err


class TestLimitDiag:
    def test_diag_json(self, capsys, tmp_path):
        stages = []
        for k in range(1, 6):
            n = 2**k
            g = PLHomeo.from_pairs([(0, 1 + F(1, n)), (1, 2)])
            stages.append(GeneratorSet(f"s{n}", (("g", g),)).to_obj())
        path = tmp_path / "seq.json"
        path.write_text(json.dumps({"labels": ["g"], "stages": stages}))
        code, out, _ = run(capsys, "limit-diag", str(path), "--words", "g,g g")
        assert code == 0
        payload = json.loads(out)
        assert payload["estimates"]["g"] == 1.0
        code, out, _ = run(capsys, "limit-diag", str(path), "--format", "csv")
        assert code == 0 and out.startswith("stage,word,value")


class TestVerifyAndDeterminism:
    def test_verify_group_axioms(self, capsys):
        code, out, _ = run(capsys, "verify", "group-axioms")
        assert code == 0
        assert "associativity" in out and "FAIL" not in out

    def test_byte_identical_output(self, capsys, translations_file):
        args = ("bound", translations_file, "--p", "2", "--schedule", "1,2",
                "--format", "csv")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

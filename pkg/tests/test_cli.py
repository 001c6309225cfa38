import json
import subprocess
import sys

import pytest

from octabraid.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestOrder:
    def test_order_n3(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--n", "3")
        assert code == 0
        assert out.strip() == "48"

    def test_order_twisted(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--n", "3", "--variant", "twisted")
        assert code == 0
        assert out.strip() == "48"

    def test_order_json(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--n", "4", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"n": 4, "order": 384, "variant": "standard"}

    def test_order_felsch(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--n", "3", "--strategy", "felsch")
        assert code == 0 and out.strip() == "48"


class TestStructureCommands:
    def test_kernel(self, capsys):
        code, out, _ = run_cli(capsys, "kernel", "--n", "3")
        assert code == 0
        assert out.splitlines() == ["1", "R1^4"]

    def test_center_n4(self, capsys):
        code, out, _ = run_cli(capsys, "center", "--n", "4")
        assert code == 0
        assert len(out.splitlines()) == 4

    def test_normal_form(self, capsys):
        code, out, _ = run_cli(capsys, "normal-form", "--n", "3",
                               "--word", "R2 R2 R1 R2")
        assert code == 0
        # R2^2 R1 R2 rewrites into a canonical word naming the same element
        assert out.strip()

    def test_mul(self, capsys):
        code, out, _ = run_cli(capsys, "mul", "--n", "3",
                               "--a", "R1 R1 R1", "--b", "R1")
        assert code == 0
        assert out.strip() == "R1^4"

    def test_quotient_profile(self, capsys):
        code, out, _ = run_cli(capsys, "quotient", "--n", "3")
        assert code == 0
        assert "order: 24" in out
        assert "order 2: 9" in out and "order 3: 8" in out and "order 4: 6" in out

    def test_bad_word_is_error(self, capsys):
        code, _, err = run_cli(capsys, "normal-form", "--n", "3", "--word", "R7")
        assert code == 1
        assert "error" in err


class TestModels:
    def test_verify_sl24(self, capsys):
        code, out, _ = run_cli(capsys, "models", "verify", "--which", "sl24")
        assert code == 0
        assert "R1 order: 4" in out
        assert "RESULT: PASS" in out

    def test_verify_2o_json(self, capsys):
        code, out, _ = run_cli(capsys, "models", "verify", "--which", "2o",
                               "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True

    def test_stem(self, capsys):
        code, out, _ = run_cli(capsys, "models", "stem")
        assert code == 0
        assert "sl24-not-stem: PASS" in out

    def test_extensions(self, capsys):
        code, out, _ = run_cli(capsys, "models", "extensions")
        assert code == 0
        assert "pairwise-distinct: PASS" in out


class TestPathCommands:
    def test_compile(self, capsys, tmp_path):
        csv = tmp_path / "path.csv"
        png = tmp_path / "path.png"
        code, out, _ = run_cli(capsys, "path", "compile",
                               "--planes", "2,1 3,2 1,3 2,3",
                               "--csv", str(csv), "--plot", str(png))
        assert code == 0
        assert "closed: True" in out and "local: True" in out
        assert csv.exists() and png.exists()
        assert csv.read_text().splitlines()[0].startswith("t,m11")

    def test_contract_word(self, capsys):
        code, out, _ = run_cli(capsys, "path", "contract",
                               "--planes", "2,1 3,2 1,3 2,3")
        assert code == 0
        assert "contracted" in out

    def test_contract_triangles(self, capsys, tmp_path):
        png = tmp_path / "triangles.png"
        code, out, _ = run_cli(capsys, "path", "contract", "--triangles",
                               "--plot", str(png))
        assert code == 0
        assert out.count("contracted") == 24
        assert png.exists()

    def test_stall(self, capsys, tmp_path):
        csv = tmp_path / "stall.csv"
        code, out, _ = run_cli(capsys, "path", "stall", "--trace-csv", str(csv))
        assert code == 0
        assert "stalled" in out and "contracted" in out
        assert csv.read_text().splitlines()[0] == "iter,max_d"

    def test_snap(self, capsys):
        code, out, _ = run_cli(capsys, "path", "snap", "--planes", "2,3 1,2")
        assert code == 0
        assert out.strip() == "2,3 1,2"

    def test_reduce_triangles(self, capsys):
        code, out, _ = run_cli(capsys, "path", "reduce", "--triangles")
        assert code == 0
        assert out.count("replay ok") == 24

    def test_reduce_random_words(self, capsys):
        code, out, _ = run_cli(capsys, "path", "reduce", "--random", "5",
                               "--seed", "3")
        assert code == 0
        assert out.count("replay ok") == 5

    def test_nonlocal_reduce_is_error(self, capsys):
        code, _, err = run_cli(capsys, "path", "reduce",
                               "--planes", "1,2 1,2 1,2 1,2")
        assert code == 1
        assert "half-space" in err


class TestCayleyAndPresentations:
    def test_cayley_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "cayley", "--n", "3")
        assert code == 0
        assert out.startswith("digraph cayley {")
        assert out.count("->") == 96

    def test_cayley_quotient_render(self, capsys, tmp_path):
        dot = tmp_path / "q.dot"
        png = tmp_path / "q.png"
        code, out, _ = run_cli(capsys, "cayley", "--n", "3", "--quotient",
                               "--out", str(dot), "--render", str(png))
        assert code == 0
        assert dot.read_text().count("[label=") == 24
        assert png.exists()

    def test_presentations_emit(self, capsys):
        code, out, _ = run_cli(capsys, "presentations", "emit", "--n", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "rank: 2"
        assert sum(1 for l in lines if l.startswith("relator:")) == 2


class TestDeterminismAndEntry:
    def test_byte_identical_runs(self, capsys):
        _, out1, _ = run_cli(capsys, "elements", "--n", "3")
        _, out2, _ = run_cli(capsys, "elements", "--n", "3")
        assert out1 == out2

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "octabraid", "order", "--n", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "48"

    def test_usage_error_exit_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "octabraid", "no-such-command"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2

import json
import os
import subprocess
import sys

import pytest

from antipowers.cli import main, parse_range
from antipowers.words import read_prefix_cache


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("1,4,9") == [1, 4, 9]
    assert parse_range("7") == [7]
    assert parse_range("3..2") == []


class TestGen:
    def test_fibonacci(self, capsys):
        assert run(capsys, "gen", "--morphism", "0->01;1->0", "--seed", "0", "--len", "13")[:2] == (0, "0100101001001\n")

    def test_thue_morse(self, capsys):
        assert run(capsys, "gen", "--morphism", "0->01;1->10", "--len", "16")[1] == "0110100110010110\n"

    def test_empty(self, capsys):
        assert run(capsys, "gen", "--len", "0")[:2] == (0, "")

    def test_binary_cache(self, capsys, tmp_path):
        out = tmp_path / "tm.mwpf"
        code, _, _ = run(capsys, "gen", "--morphism", "0->01;1->10", "--len", "1000", "--binary", "--out", str(out))
        assert code == 0
        assert str(read_prefix_cache(out))[:16] == "0110100110010110"
        assert os.listdir(tmp_path) == ["tm.mwpf"]

    def test_morphism_file(self, capsys, tmp_path):
        path = tmp_path / "tm.txt"
        path.write_text("# thue-morse\n0 -> 01\n1 -> 10\n")
        assert run(capsys, "gen", "--morphism", f"@{path}", "--len", "4")[1] == "0110\n"


class TestClassify:
    def test_thue_morse(self, capsys):
        code, out, _ = run(capsys, "classify", "--morphism", "0->01;1->10")
        verdict = json.loads(out)
        assert code == 0 and verdict["schema_version"] == 1
        assert verdict["uniformly_recurrent"] == "yes"
        assert verdict["periodicity"]["kind"] == "aperiodic"

    def test_periodic(self, capsys):
        verdict = json.loads(run(capsys, "classify", "--morphism",
                                 "0->01230;1->12301;2->23012;3->30123")[1])
        assert verdict["periodicity"] == {"kind": "periodic", "unit": "0123"}

    def test_fibonacci(self, capsys):
        verdict = json.loads(run(capsys, "classify", "--morphism", "0->01;1->0")[1])
        assert verdict["uniformly_recurrent"] == "unknown"


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ["fact14", "--limit", "20000"],
        ["thm6", "--kmax", "60"],
        ["prop17", "--n", "3..8", "--indices", "0..100"],
        ["prop16", "--n", "4..8"],
        ["complexity", "--n", "1..20"],
        ["thm5", "--k", "2..3", "--indices", "0..50"],
        ["lemma8", "--n", "3..5", "--len", "65536"],
    ])
    def test_suites_pass(self, capsys, argv):
        code, out, _ = run(capsys, "verify", *argv, "--no-header")
        report = json.loads(out)
        assert code == 0 and report["pass"] and report["schema_version"] == 1
        assert "header" not in report

    def test_conj18_is_informational(self, capsys):
        code, out, _ = run(capsys, "verify", "conj18", "--n", "6")
        report = json.loads(out)
        assert code == 0 and report["informational"]
        assert report["summary"]["6"] in ("PASS", "FAIL")
        assert "generated_at" in report["header"]

    def test_deterministic_output(self, capsys, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for path in (first, second):
            assert run(capsys, "verify", "thm6", "--kmax", "40", "--no-header", "--out", str(path))[0] == 0
        assert first.read_bytes() == second.read_bytes()

    def test_text_format(self, capsys):
        code, out, _ = run(capsys, "verify", "thm6", "--kmax", "20", "--format", "text")
        assert code == 0 and out.startswith("thm6: PASS")

    def test_classification_failure_exit_1(self, capsys):
        code, _, err = run(capsys, "verify", "thm5", "--morphism", "0->01230;1->12301;2->23012;3->30123",
                           "--k", "2", "--indices", "0..3")
        assert code == 1 and "aperiodic" in err


class TestGamma:
    def test_fibonacci_table(self, capsys):
        code, out, _ = run(capsys, "gamma", "--k", "2..10")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "index,k,gamma,ratio"
        assert lines[1].startswith("0,2,1,") and lines[2].startswith("0,3,2,")
        assert len(lines) == 10

    def test_empty_range_header_only(self, capsys):
        assert run(capsys, "gamma", "--k", "3..2")[1] == "index,k,gamma,ratio\n"

    def test_thue_morse(self, capsys):
        code, out, _ = run(capsys, "gamma", "--morphism", "0->01;1->10", "--k", "2..6")
        assert code == 0 and len(out.splitlines()) == 6


class TestExitCodes:
    def test_bad_dsl(self, capsys):
        code, _, err = run(capsys, "gen", "--morphism", "0 -> 02", "--len", "4")
        assert code == 2 and "undeclared" in err

    def test_cap(self, capsys):
        assert run(capsys, "gen", "--len", "5000", "--cap", "100")[0] == 3

    def test_cap_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("ANTIPOWER_CAP", "50")
        assert run(capsys, "gen", "--len", "51")[0] == 3
        assert run(capsys, "gen", "--len", "50")[0] == 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--morphism", f"@{tmp_path}/nope", "--len", "3"])
        assert exc.value.code == 2

    def test_no_command(self, capsys):
        assert run(capsys)[0] == 2

    def test_argparse_errors(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "nosuchsuite"])
        assert exc.value.code == 2


def test_bench_agrees(capsys):
    code, out, _ = run(capsys, "bench", "--k", "2,10", "--mmax", "50")
    assert code == 0 and "all strategies agree" in out


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "antipowers", "gen", "--len", "8"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "01001010\n"
    proc = subprocess.run([sys.executable, "-m", "antipowers", "--backend"], capture_output=True, text=True,
                          env={**os.environ, "ANTIPOWER_PURE": "1"})
    assert proc.stdout.strip() == "python"

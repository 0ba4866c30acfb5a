import json
import subprocess
import sys

import pytest

from kqt import complete_digraph, directed_path, to_edge_list
from kqt.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "kqt.cli", *map(str, args)], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture(scope="module")
def minimal(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "frame.txt"
    assert main(["generate", "-k", "5", "-n", "8", "--density", "0", "--seed", "0", "-o", str(path)]) == 0
    return path


def write(tmp_path, name, d):
    path = tmp_path / name
    path.write_text(to_edge_list(d))
    return path


class TestGenerate:
    def test_file_is_reproducible(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            code, stdout, _ = run("generate", "-k", 5, "-n", 11, "--seed", 42, "-o", out)
            assert code == 0 and "seed used: 42" in stdout
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().startswith("# k=5 n=11 density=0.2 outside=random seed=42\nn 11\n")

    def test_stdout(self):
        code, stdout, stderr = run("generate", "-k", 5, "-n", 8, "--density", 0, "--seed", 1)
        assert code == 0 and "n 8" in stdout and "arcs: 16" in stderr

    def test_auto_seed_is_printed(self, tmp_path):
        code, stdout, _ = run("generate", "-k", 5, "-n", 9, "-o", tmp_path / "x.txt")
        assert code == 0 and stdout.startswith("seed: ")

    def test_too_few_vertices(self):
        assert run("generate", "-k", 5, "-n", 7, "--seed", 0)[0] == 2

    def test_even_k(self):
        assert run("generate", "-k", 4, "-n", 9, "--seed", 0)[0] == 2

    def test_persistent_failure(self):
        code, stdout, _ = run("generate", "-k", 5, "-n", 9, "--density", 0, "--seed", 0)
        assert code == 1
        assert "generation failed after 20 attempts" in stdout and "strong: 20" in stdout


class TestCheck:
    def test_frame(self, minimal):
        code, stdout, _ = run("check", "-k", 5, minimal)
        assert code == 0
        assert stdout.splitlines() == [
            "vertices: 8",
            "arcs: 16",
            "strong: yes",
            "diameter: 7",
            "k-quasi-transitive: yes (k=5)",
        ]

    def test_violation(self, tmp_path):
        code, stdout, _ = run("check", "-k", 5, write(tmp_path, "p.txt", directed_path(6)))
        assert code == 1 and "violation: 0 1 2 3 4 5" in stdout and "diameter: infinity" in stdout

    def test_missing_file(self, tmp_path):
        code, _, stderr = run("check", "-k", 5, tmp_path / "nope.txt")
        assert code == 2 and "cannot read" in stderr

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("n 2\n0 0\n")
        code, _, stderr = run("check", "-k", 5, bad)
        assert code == 2 and "line 2: loop arc" in stderr


class TestClassify:
    def test_minimal(self, minimal, tmp_path):
        dot = tmp_path / "f.dot"
        code, stdout, _ = run("classify", "-k", 5, "--dot", dot, minimal)
        lines = stdout.splitlines()
        assert code == 0
        assert lines[:5] == [
            "path: 0-1-2-3-4-5-6-7",
            "frame: semicomplete-bipartite (O|E)",
            "O(P): {1,3,5,7}",
            "E(P): {0,2,4,6}",
            "outside: empty",
        ]
        assert lines[-1] == "result: PASS"
        assert "CHECK prop2:x7->x0 PASS" in lines
        assert "0 [shape=box];" in dot.read_text()

    def test_k8(self, tmp_path):
        code, stdout, _ = run("classify", "-k", 5, write(tmp_path, "k8.txt", complete_digraph(8)))
        assert code == 2 and "diameter < k+2" in stdout

    def test_doctored(self, minimal, tmp_path):
        text = minimal.read_text().replace("7 2\n", "")
        bad = tmp_path / "doctored.txt"
        bad.write_text(text)
        code, stdout, _ = run("classify", "-k", 5, bad)
        assert code == 1
        assert "CHECK prop2:x7->x2 FAIL witness=7->2" in stdout
        assert stdout.splitlines()[-1] == "result: FAIL"


class TestWitness:
    def test_path(self, minimal):
        code, stdout, _ = run("witness", "-k", 5, "-s", 7, "-t", 2, minimal)
        assert code == 0 and stdout.splitlines()[0] == "7 4 5 2 (length 3)"

    def test_same_parity(self, minimal):
        code, stdout, _ = run("witness", "-k", 5, "-s", 7, "-t", 5, minimal)
        assert code == 0 and stdout.splitlines()[0] == "7 2 3 4 5 (length 4)"

    def test_bad_indices(self, minimal):
        assert run("witness", "-k", 5, "-s", 2, "-t", 4, minimal)[0] == 2
        assert run("witness", "-k", 5, "-s", 8, "-t", 0, minimal)[0] == 2


class TestVerify:
    def test_reproducible_modulo_timing(self):
        outputs = [run("verify", "converse", "--trials", 50, "--seed", 9)[1] for _ in range(2)]
        strip = [[line for line in out.splitlines() if not line.startswith("seconds:")] for out in outputs]
        assert strip[0] == strip[1] and "status: PASS" in strip[0]

    def test_json(self):
        code, stdout, _ = run("verify", "lemma6", "--trials", 10, "--seed", 2, "--format", "json")
        head = json.loads(stdout.splitlines()[0])
        assert code == 0 and head["suite"] == "lemma6" and head["status"] == "PASS"

    def test_corpus_suite(self):
        code, stdout, _ = run("verify", "theorem3", "-k", 5, "--instances", 10, "--seed", 1)
        assert code == 0 and "status: PASS" in stdout

    def test_exhaustive_scan_n4_fails(self):
        code, stdout, _ = run("verify", "theorem2", "-n", 4)
        assert code == 1 and "status: FAIL" in stdout and "check=theorem2:class" in stdout

    def test_auto_seed(self):
        code, stdout, _ = run("verify", "converse", "--trials", 5)
        assert code == 0 and stdout.startswith("seed: ")

    def test_unknown_suite(self):
        assert run("verify", "nosuch")[0] == 2

    def test_no_command(self):
        assert run()[0] == 2

import json
import subprocess
import sys

import pytest

from palace.cli import main
from palace.generate import figure2_palace, forbidden_tree, path_palace
from palace.graph import serialize_palace


@pytest.fixture
def palace_file(tmp_path):
    def write(g_or_text, name="g.txt"):
        path = tmp_path / name
        text = g_or_text if isinstance(g_or_text, str) else serialize_palace(g_or_text)
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_check(capsys, palace_file):
    code, report = run_json(capsys, "check", palace_file(path_palace(17)))
    assert code == 0 and report["result"] == "solvable"
    code, report = run_json(capsys, "check", palace_file("0 1\n1 2\n2 0\n"))
    assert code == 1 and report["cycle"] == ["0", "1", "2"]
    code, report = run_json(capsys, "check", palace_file(forbidden_tree()))
    assert code == 1 and report["spider"]["center"] == "x"


def test_check_malformed(capsys, palace_file):
    code, _, err = run(capsys, "check", palace_file("0 1\n0 1\n"))
    assert code == 2 and "line 2" in err and "duplicate" in err
    code, _, err = run(capsys, "check", "/nonexistent/file")
    assert code == 2


def test_strategy(capsys, palace_file):
    code, report = run_json(capsys, "strategy", palace_file(path_palace(17)))
    assert code == 0 and report["days"] == 30 and len(report["probes"]) == 30
    assert report["reduced_vertices"] == 17
    code, out, _ = run(capsys, "strategy", palace_file(path_palace(3)))
    assert code == 0 and out.splitlines()[0] == "1,1"
    code, _, _ = run(capsys, "strategy", palace_file(forbidden_tree()))
    assert code == 1


def test_verify(capsys, palace_file, tmp_path):
    f = palace_file(path_palace(3))
    code, report = run_json(capsys, "verify", f, "--probes", "1,1")
    assert code == 0 and report["result"] == "caught" and report["days"] == 2
    code, report = run_json(capsys, "verify", f, "--probes", "0,0")
    assert code == 1 and report["witness"] == ["2", "1"]
    code, _, err = run(capsys, "verify", f, "--probes", "1,9")
    assert code == 2 and "9" in err
    probes = tmp_path / "probes.txt"
    probes.write_text("1\n1\n")
    assert run(capsys, "verify", f, "--probes-file", str(probes))[0] == 0


def test_solve(capsys, palace_file):
    code, report = run_json(capsys, "solve", palace_file(path_palace(17)))
    assert code == 0 and report["days"] == 30
    code, report = run_json(capsys, "solve", palace_file(forbidden_tree()), "--no-dominance")
    assert code == 1 and report["result"] == "unsolvable"
    code, _, err = run(capsys, "solve", palace_file(path_palace(23)))
    assert code == 2 and "CapExceeded" in err and "22" in err


def test_reduce_figure2(capsys, palace_file):
    code, report = run_json(capsys, "reduce", palace_file(figure2_palace()))
    assert code == 0 and report["vertices"] == 21 and report["m"] == 16
    assert len(report["removed"]) == 5


def test_enumerate(capsys, palace_file):
    code, out, _ = run(capsys, "enumerate", palace_file(path_palace(4)))
    assert code == 0
    assert "no optimal sequence probes a leaf: true" in out
    code, report = run_json(capsys, "enumerate", palace_file(path_palace(4)))
    assert report["count"] == 2 and report["single_multiset"] and report["linear_count"] == 2


def test_random_is_reproducible(capsys, tmp_path):
    a = run(capsys, "random", "--vertices", "7", "--seed", "1")[1]
    b = run(capsys, "random", "--vertices", "7", "--seed", "1")[1]
    assert a == b and "seed=1" in a
    assert len([l for l in a.splitlines() if not l.startswith("#")]) == 6
    out = tmp_path / "t.txt"
    assert run(capsys, "random", "--vertices", "9", "--seed", "3", "--out", str(out))[0] == 0
    assert out.read_text().startswith("# prufer tree")


def test_bench(capsys, tmp_path):
    for seed in range(4):
        main(["random", "--vertices", "9", "--seed", str(seed), "--out", str(tmp_path / f"{seed}.txt")])
    (tmp_path / "p17.txt").write_text(serialize_palace(path_palace(17)))
    capsys.readouterr()
    code, report = run_json(capsys, "bench", "--corpus", str(tmp_path))
    assert code == 0 and len(report["rows"]) == 5
    assert all(r["agree"] for r in report["rows"] if r["closed_form"] is not None)


def test_json_reports_are_deterministic(capsys, palace_file):
    f = palace_file(figure2_palace())
    for cmd in ("check", "strategy", "solve", "reduce"):
        _, a = run_json(capsys, cmd, f)
        _, b = run_json(capsys, cmd, f)
        a.pop("timing"), b.pop("timing")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_digest_ignores_labels(capsys, palace_file):
    _, a = run_json(capsys, "check", palace_file("0 1\n1 2\n", "a.txt"))
    _, b = run_json(capsys, "check", palace_file("q r\nr s\n", "b.txt"))
    assert a["input_digest"] == b["input_digest"]


def test_dot(capsys, palace_file):
    code, out, _ = run(capsys, "dot", palace_file(forbidden_tree()))
    assert code == 0 and out.count("--") == 9


def test_module_entry_point(palace_file):
    proc = subprocess.run([sys.executable, "-m", "palace", "check", palace_file(path_palace(5))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "solvable"

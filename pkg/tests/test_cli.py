import io
import subprocess
import sys

import pytest

from treeaug.cli import run
from treeaug.fixtures import TEXTS


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in TEXTS.items():
        p = tmp_path / f"{name}.tap"
        p.write_text(text)
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_solve_p3(files):
    assert call("solve", files["P3"]) == (0, "s tap 1\nl 1 3\n")


def test_solve_lock_trace_and_audit(files):
    code, out = call("solve", files["LOCK"], "--root", "1", "--trace", "--audit")
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["s tap 3", "l 1 7", "l 3 5", "l 6 7"]
    assert lines[4] == "k 3 2 6"
    assert "a ok 7 6" in lines
    assert all(not l.startswith("a FAIL") for l in lines)


def test_exact(files):
    assert call("exact", files["LOCK"]) == (0, "s opt 3\nl 1 7\nl 5 6\nl 6 7\n")


def test_verify(files):
    bad = files["dir"] / "bad.sol"
    bad.write_text("s tap 0\n")
    assert call("verify", files["LOCK"], str(bad)) == (0, "invalid\n")
    good = files["dir"] / "good.sol"
    good.write_text(call("solve", files["LOCK"])[1])
    assert call("verify", files["LOCK"], str(good)) == (0, "valid\n")
    alien = files["dir"] / "alien.sol"
    alien.write_text("s tap 1\nl 1 5\n")    # covers nothing it should, and is not a link
    assert call("verify", files["LOCK"], str(alien)) == (0, "invalid\n")


def test_analyze(files):
    code, out = call("analyze", files["LOCK"], "--root", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r 1"
    assert "t 5 6" in lines and "s 4 5 6" in lines and "x 5 6 7 3" in lines
    assert [l for l in lines if l.startswith("w")] == ["w 5 6", "w 6 7"]


def test_gen_writes_file(files):
    target = files["dir"] / "g.tap"
    assert call("gen", "--nodes", "7", "--extra-links", "2", "--seed", "3", "--out", str(target)) == (0, "")
    code, again = call("gen", "--nodes", "7", "--extra-links", "2", "--seed", "3")
    assert target.read_text() == again
    assert call("solve", str(target))[0] == 0


def test_bench():
    code, out = call("bench", "--trials", "100", "--max-nodes", "10", "--seed", "5")
    assert code == 0
    tag, trials, ratio, violations = out.split()
    num, den = map(int, ratio.split("/"))
    assert (tag, trials, violations) == ("bench", "100", "0")
    assert 2 * num <= 3 * den


def test_graph_input_maps_back(files):
    g = files["dir"] / "g.graph"
    # two triangles 1-2-3 and 4-5-6 joined by the bridge 3-4
    g.write_text("p graph 6 7 2\ne 1 2\ne 2 3\ne 3 1\ne 4 5\ne 5 6\ne 6 4\ne 3 4\nl 2 3\nl 1 6\n")
    code, out = call("solve", str(g))
    assert (code, out) == (0, "s tap 1\nl 1 6\n")
    sol = files["dir"] / "g.sol"
    sol.write_text(out)
    assert call("verify", str(g), str(sol)) == (0, "valid\n")
    assert call("exact", str(g)) == (0, "s opt 1\nl 1 6\n")


def test_exit_codes(files, tmp_path):
    infeasible = tmp_path / "inf.tap"
    infeasible.write_text("p tap 2 0\ne 1 2\n")
    assert call("solve", str(infeasible))[0] == 2
    broken = tmp_path / "broken.tap"
    broken.write_text("p tap 3 1\ne 1 2\ne 2 3\ne 1 3\nl 1 3\n")
    assert call("solve", str(broken))[0] == 3
    assert call("solve", str(tmp_path / "missing.tap"))[0] == 3
    assert call("frobnicate")[0] == 3
    assert call("solve", files["P3"], "--root", "9")[0] == 3
    assert call("exact", files["P3"], "--limit", "0")[0] == 0
    many = tmp_path / "many.tap"
    many.write_text(call("gen", "--nodes", "9", "--extra-links", "30")[1])
    assert call("exact", str(many), "--limit", "5")[0] == 3


def test_every_command_is_deterministic(files):
    cmds = [("solve", files["DTREE"], "--root", "1", "--trace", "--audit"),
            ("exact", files["DTREE4"]), ("analyze", files["DTREE4"]),
            ("gen", "--nodes", "11", "--extra-links", "4", "--model", "caterpillar", "--seed", "8"),
            ("bench", "--trials", "30", "--seed", "2", "--audit")]
    for argv in cmds:
        assert call(*argv) == call(*argv)


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "treeaug.cli", "solve", files["P3"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "s tap 1\nl 1 3\n"

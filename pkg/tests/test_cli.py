import subprocess
import sys

import pytest

from mpca.array import canonical_bytes, from_grid, parse, verify
from mpca.cli import main

import worked_examples as ex


@pytest.fixture
def wfile(tmp_path):
    path = tmp_path / "W.mpca"
    assert main(["construct", "--group", "5,5", "--poly", "3,1", "--logbase", "13", "--out", str(path)]) == 0
    return path


def test_construct_reference(wfile):
    assert wfile.read_bytes() == canonical_bytes(from_grid(ex.W_ROWS))


def test_construct_auto_gf4(tmp_path, capsys):
    out = tmp_path / "a.mpca"
    assert main(["construct", "--group", "2,2", "--poly", "auto", "--out", str(out)]) == 0
    arr = parse(out.read_bytes())
    assert sorted(v for v in arr.values if v is not None) == [0, 1, 2]
    assert verify(arr)
    assert "PASS" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["construct", "--group", "4,4"],
    ["construct", "--group", "5,5", "--poly", "4,0"],
    ["construct", "--group", "5,5", "--logbase", "2"],
    ["construct", "--group", "2,3"],
])
def test_construct_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_match_paper(capsys, tmp_path):
    out = tmp_path / "m.mpca"
    assert main(["construct", "--group", "5,5", "--match-paper", "--out", str(out)]) == 0
    assert "MATCH poly=3,1 logbase=13" in capsys.readouterr().out
    assert out.read_bytes() == canonical_bytes(from_grid(ex.W_ROWS))


@pytest.mark.parametrize("ops,rows", [
    (["--mul", "23"], ex.MUL23_ROWS),
    (["--add", "4"], ex.ADD4_ROWS),
    (["--linear", "2,0;0,1"], ex.ROWMUL2_ROWS),
    (["--linear", "1,0;1,1", "--linear", "1,2;0,1"], ex.SHEAR_COMPOSED_ROWS),
])
def test_apply(wfile, tmp_path, ops, rows, capsys):
    out = tmp_path / "out.mpca"
    assert main(["apply", str(wfile), *ops, "--out", str(out)]) == 0
    assert parse(out.read_bytes()) == from_grid(rows)
    assert capsys.readouterr().err.strip() == "PASS"


def test_apply_order_matters(wfile, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["apply", str(wfile), "--add", "1", "--mul", "5", "--out", str(a)])
    main(["apply", str(wfile), "--mul", "5", "--add", "1", "--out", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_apply_errors(wfile, capsys):
    assert main(["apply", str(wfile), "--mul", "2"]) == 2
    assert main(["apply", str(wfile), "--linear", "1,3;2,1"]) == 2
    assert "determinant" in capsys.readouterr().err


def test_apply_translate_and_verify(wfile, tmp_path, capsys):
    out = tmp_path / "t.mpca"
    assert main(["apply", str(wfile), "--translate", "1,2", "--out", str(out)]) == 0
    assert parse(out.read_bytes()).star == (4, 3)
    capsys.readouterr()
    assert main(["verify", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "PASS"


def test_verify_fail(tmp_path, capsys):
    bad = tmp_path / "bad.mpca"
    bad.write_text("MPCA 3 3\nMOD 8\nSTAR 0 0\nVALUES * 0 1 2 3 4 5 6 7\n")
    assert main(["verify", str(bad)]) == 1
    assert capsys.readouterr().out.strip() == "FAIL"
    bad.write_text("MPCA 3 3\nMOD 8\n")
    assert main(["verify", str(bad)]) == 2


def test_correlate(wfile, capsys):
    assert main(["correlate", str(wfile)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "PEAK 24" and out[1] == "MAX_OFF_PEAK 1"


def test_render(wfile, capsys):
    assert main(["render", str(wfile), "--2d"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1].split() == ["*", "0", "6", "18", "12"]
    assert main(["render", str(wfile)]) == 0
    assert capsys.readouterr().out.encode() == wfile.read_bytes()


def test_enumerate(tmp_path, capsys):
    out = tmp_path / "arrays"
    assert main(["enumerate", "--group", "3,3", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "COUNT 12 96"
    files = sorted(out.iterdir())
    assert len(files) == 12
    assert all(verify(parse(f.read_bytes())) for f in files)


def test_enumerate_split_tasks(capsys):
    assert main(["enumerate", "--group", "3,3", "--split-depth", "1", "--count-only", "--workers", "1"]) == 0
    assert capsys.readouterr().out.strip() == "COUNT 12 96"
    total = 0
    t = 0
    while main(["enumerate", "--group", "3,3", "--split-depth", "1", "--task", str(t), "--count-only"]) == 0:
        total += int(capsys.readouterr().out.split()[1])
        t += 1
    assert total == 12 and t > 1


def test_enumerate_needs_force(capsys):
    assert main(["enumerate", "--group", "4,4", "--count-only"]) == 2
    assert "--force" in capsys.readouterr().err


def test_enumerate_checkpoint(tmp_path, capsys):
    ck = tmp_path / "resume.txt"
    argv = ["enumerate", "--group", "2,2,2", "--count-only", "--checkpoint", str(ck), "--workers", "1"]
    assert main(argv) == 0
    assert main(argv) == 0
    assert capsys.readouterr().out.split("\n")[:2] == ["COUNT 48 336", "COUNT 48 336"]


def test_orbit(capsys, tmp_path):
    assert main(["orbit", "--group", "3,3", "--anchored"]) == 0
    out = capsys.readouterr().out
    assert "ORBIT 12" in out and "VERIFY PASS" in out
    assert main(["orbit", "--group", "2,2", "--gens", "add"]) == 0
    assert "ORBIT 3" in capsys.readouterr().out
    assert main(["orbit", "--group", "2,2", "--gens", "bogus"]) == 2


def test_orbit_from_seed_file(wfile, capsys):
    assert main(["orbit", "--seed", str(wfile), "--gens", "add,mul", "--no-verify"]) == 0
    assert "ORBIT 192" in capsys.readouterr().out


@pytest.mark.parametrize("group,n", [("3,3", 12), ("2,2,2", 48), ("2,3", 0), ("2,2", 2)])
def test_compare(group, n, capsys):
    assert main(["compare", "--group", group]) == 0
    out = capsys.readouterr().out.split()
    assert out == ["ENUMERATED", str(n), "CLOSURE", str(n), "SYMDIFF", "0", "EQUAL"]


def test_compare_needs_force(capsys):
    assert main(["compare", "--group", "5,5"]) == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "mpca", "construct", "--group", "2,2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("MPCA 2 2\nMOD 3\n")

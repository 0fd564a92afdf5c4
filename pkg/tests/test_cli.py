import subprocess
import sys

import pytest

from adamsline.assembly import reference_stems_path


def run(*args, cwd=None):
    p = subprocess.run([sys.executable, "-m", "adamsline.cli", *args], capture_output=True, cwd=cwd)
    return p.returncode, p.stdout.decode("utf-8"), p.stderr.decode("utf-8"), p.stdout


def test_resolve_sphere():
    code, out, _, raw = run("resolve", "--module", "sphere", "--smax", "10", "--tmax", "20")
    assert code == 0
    assert "0\t0\t1" in out.splitlines()
    assert b"\r\n" not in raw


def test_resolve_stunted_bottom():
    code, out, _, _ = run("resolve", "--module", "stunted:4", "--smax", "8", "--tmax", "28")
    assert code == 0
    rows = [tuple(map(int, l.split("\t"))) for l in out.splitlines()[1:]]
    assert min(t for s, t, _ in rows if s == 0) == 4


def test_resolve_files(tmp_path):
    tsv, svg = tmp_path / "c.tsv", tmp_path / "c.svg"
    code, out, _, _ = run("resolve", "--module", "stunted:2", "--smax", "4", "--tmax", "12",
                          "--out", str(tsv), "--svg", str(svg), "--threads", "2")
    assert code == 0 and out == ""
    assert tsv.read_text().startswith("s\tt\tdim\n")
    assert svg.read_bytes().startswith(b"<?xml")


def test_resolve_module_file(tmp_path):
    # mod 2 Moore spectrum: h0 on the bottom class is killed
    f = tmp_path / "moore.mod"
    f.write_text("gen a 0\ngen b 1\nsq 1 a = b\n")
    code, out, _, _ = run("resolve", "--module", f"file:{f}", "--smax", "4", "--tmax", "8")
    rows = out.splitlines()[1:]
    assert code == 0 and "0\t0\t1" in rows and not any(r.startswith("1\t1\t") for r in rows)


@pytest.mark.parametrize("args", [
    ("resolve", "--module", "bogus", "--smax", "3", "--tmax", "5"),
    ("resolve", "--module", "sphere", "--smax", "0", "--tmax", "5"),
    ("resolve", "--module", "stunted:9", "--smax", "3", "--tmax", "5"),
    ("resolve", "--module", "sphere", "--smax", "3"),
    ("resolve", "--module", "sphere", "--smax", "3", "--tmax", "5", "--threads", "0"),
    ("splitrange", "--variant", "star=7"),
    ("assemble", "--n", "5", "--g", "7"),
    ("assemble", "--n", "16", "--g", "3"),
    ("nonsense",),
])
def test_usage_errors(args):
    code, _, err, _ = run(*args)
    assert code == 2 and err


def test_vanishing_exit_codes():
    assert run("vanishing", "--module", "stunted:2", "--smax", "12", "--tmax", "26", "--exception", "2")[0] == 0
    assert run("vanishing", "--module", "y-module:1", "--smax", "12", "--tmax", "26")[0] == 0
    code, out, _, _ = run("vanishing", "--module", "sphere", "--smax", "8", "--tmax", "20")
    assert code == 1 and "2\t2\t0\t1" in out.splitlines()
    code, _, err, _ = run("vanishing", "--module", "y-module:2", "--y-model", "bockstein-only",
                          "--smax", "10", "--tmax", "24")
    assert code == 1 and "FAIL" in err


def test_splitrange_output():
    code, out, _, _ = run("splitrange", "--n-max", "15")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n\tell\tk\tbinding\ttable1\tmatch\tclosed_form"
    assert [l.split("\t")[4] for l in lines[1:]] == [str(x) for x in
                                                    (-1, 0, 1, 3, 3, 7, 7, 7, 7, 15, 19, 21, 25, 27, 29, 31)]
    code, out, _, _ = run("splitrange", "--reconcile")
    assert code == 0 and out.count("MISMATCH") > 0 and out.count("# star=") == 6


def test_assemble_output():
    code, out, _, _ = run("assemble", "--n", "17", "--g", "7", "--stems", str(reference_stems_path()))
    assert code == 0
    assert "reference: (Z/2)^7 + Z/4 + Z/3 + Z/5" in out
    assert "agreement:" in out and "extension:" in out
    code, _, _, _ = run("assemble", "--n", "17", "--g", "7", "--check")
    assert code in (0, 1)


def test_dump_module_roundtrip(tmp_path):
    code, out, _, _ = run("dump-module", "--module", "y-module:2", "--tmax", "10")
    assert code == 0 and out.startswith("# model assumption")
    f = tmp_path / "y.mod"
    f.write_text(out)
    code2, out2, _, _ = run("dump-module", "--module", str(f), "--tmax", "10")
    assert code2 == 0
    assert out2 == "".join(l + "\n" for l in out.splitlines() if not l.startswith("#"))


def test_help_documents_formats():
    code, out, _, _ = run("--help")
    assert code == 0 and "chart TSV" in out and "stem data" in out
    assert run("formats")[1].startswith("formats:")

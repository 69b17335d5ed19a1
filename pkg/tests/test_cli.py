import json
import subprocess
import sys
from pathlib import Path

import pytest

from ngorenstein.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_check_cusp(capsys):
    code, out, _ = run(capsys, "check", DATA / "cusp3.graph")
    assert code == 0
    assert "n-Gorenstein: yes, Z_K = E_c1 + E_c2 + E_c3" in out
    assert "cusp: yes" in out


def test_check_not_gorenstein(capsys):
    code, out, _ = run(capsys, "check", DATA / "single_p2_e3.graph")
    assert code == 1
    assert out.strip().endswith("n-Gorenstein: no (z = 5/3)")


def test_check_quiet(capsys):
    code, out, _ = run(capsys, "check", DATA / "single_p2_e3.graph", "--quiet")
    assert out == "n-Gorenstein: no (z = 5/3)\n"


def test_check_missing_e(capsys, tmp_path):
    code, _, err = run(capsys, "check", DATA / "two_vertex.graph")
    assert code == 2 and "e" in err


def test_check_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("v a 0\nnonsense here\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 2
    assert "line 2" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check", tmp_path / "nope.graph")
    assert code == 2


def test_check_not_definite(capsys, tmp_path):
    f = tmp_path / "tri.graph"
    f.write_text("v a 0 e=2\nv b 0 e=2\nv c 0 e=2\ne a b\ne b c\ne c a\n")
    code, out, _ = run(capsys, "check", f)
    assert code == 1 and "negative definite: no" in out


def test_check_du_val(capsys):
    code, out, _ = run(capsys, "check", DATA / "e8.graph", "--format", "structured")
    (rec,) = records(out)
    assert code == 0
    assert rec["classification"]["du_val"] == "E8"
    assert set(rec["z"].values()) == {"0"}
    assert list(rec) == ["kind", "negative_definite", "n_gorenstein", "z", "integral", "effective", "n",
                         "classification"]


def test_enumerate_two_vertex(capsys):
    code, out, _ = run(capsys, "enumerate", DATA / "two_vertex.graph")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("  n=")]
    assert len(lines) == 8
    assert "  n=(5, 4) e=(1, 2)" in lines
    assert "exhaustive" in out


def test_enumerate_dolgachev(capsys):
    code, out, _ = run(capsys, "enumerate", DATA / "dolgachev_g1_3.graph", "--max-n", "16",
                       "--format", "structured")
    fams = [r for r in records(out) if r["kind"] == "family"]
    assert len(fams) == 1
    fam = fams[0]
    assert fam["e"] == {"c": 3}  # 2g - 2 + arms
    assert fam["free"] == ["a1", "a2", "a3"]
    assert fam["minimal_elements"] == [{"a1": 2, "a2": 2, "a3": 2}]
    assert fam["z"] == {"c": 2, "a1": 1, "a2": 1, "a3": 1}
    assert list(fam)[:6] == ["kind", "n", "e", "free", "minimal_elements", "z"]
    bound = records(out)[-1]
    assert bound["kind"] == "bound" and bound["max_n"] == 16 and bound["exhaustive_up_to_bound"]


def test_enumerate_disconnected(capsys):
    code, _, err = run(capsys, "enumerate", DATA / "disconnected.graph")
    assert code == 2 and "disconnected" in err


def test_enumerate_warns_about_e(capsys):
    code, out, err = run(capsys, "enumerate", DATA / "a2.graph", "--quiet")
    assert "ignoring" in err
    assert out.strip() == "Du Val A2: e=(2, 2) z=0"
    code, out, _ = run(capsys, "enumerate", DATA / "a2.graph", "--no-du-val")
    assert code == 1


def test_structured_round_trip(capsys):
    _, out, _ = run(capsys, "enumerate", DATA / "two_vertex.graph", "--format", "structured")
    sols = [r for r in records(out) if r["kind"] == "solution"]
    assert len(sols) == 8
    for rec in sols:
        spec = ",".join(f"{v}={x}" for v, x in rec["e"].items())
        code, check_out, _ = run(capsys, "check", DATA / "two_vertex.graph", "--with-e", spec,
                                 "--format", "structured")
        assert code == 0
        (chk,) = records(check_out)
        assert chk["z"] == {v: str(z) for v, z in rec["z"].items()}


def test_enumerate_dot(capsys):
    _, out, _ = run(capsys, "enumerate", DATA / "cusp3.graph", "--format", "dot", "--max-n", "4")
    assert out.count("graph S") == 1
    assert 'label="c1\\np=0\\ne=free"' in out


def test_enumerate_jobs_identical(capsys):
    _, one, _ = run(capsys, "enumerate", DATA / "dolgachev_g1_3.graph", "--max-n", "24")
    _, two, _ = run(capsys, "enumerate", DATA / "dolgachev_g1_3.graph", "--max-n", "24", "--jobs", "2")
    assert one == two


def test_enumerate_stability_flag(capsys):
    code, _, err = run(capsys, "enumerate", DATA / "two_vertex.graph", "--max-n", "8",
                       "--check-stability", "--quiet")
    assert code == 0 and err == ""


def test_classify_e8(capsys):
    code, out, _ = run(capsys, "classify", DATA / "e8.graph")
    assert code == 0 and "Du Val: E8" in out


def test_classify_dot(capsys):
    _, out, _ = run(capsys, "classify", DATA / "two_vertex.graph", "--format", "dot")
    assert out.startswith("graph G {")
    assert '"a" -- "b" [label="1"]' in out


def test_genus(capsys):
    code, out, _ = run(capsys, "genus", DATA / "a2.graph", "--cycle", "1,1")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "genus", DATA / "two_vertex.graph", "--with-e", "a=1,b=2", "--cycle", "b=1")
    assert out.strip() == "2"
    code, _, _ = run(capsys, "genus", DATA / "a2.graph", "--cycle", "1,1,1")
    assert code == 2


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "two_vertex.graph", "--max-n", "8", "--max-e", "6")
    assert code == 0
    assert len([l for l in out.splitlines() if l.startswith("n=")]) == 8


def test_bad_usage(capsys):
    with pytest.raises(SystemExit) as info:
        main(["enumerate"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ngorenstein", "check", str(DATA / "cusp3.graph"), "--quiet"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "n-Gorenstein: yes, Z_K = E_c1 + E_c2 + E_c3"

import io
import json
import subprocess
import sys

import pytest

from xhomotopy.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "d2": write("d2.cpx", "vertices: 0 1 2\n0 1 2\n"),
        "b2": write("b2.cpx", "0 1\n1 2\n0 2\n"),
        "pt": write("pt.cpx", "vertices: 0\n"),
        "two": write("two.cpx", "vertices: 0 1\n"),
        "e": write("e.cpx", "0 1\n"),
        "k2u": write("k2u.gr", "mode: loop\nvertices: 0 1\n0 1\n"),
        "h": write("h.gr", "mode: loop\na a\nb b\n"),
        "c4": write("c4.gr", "mode: reflexive\n0 1\n1 2\n2 3\n3 0\n"),
        "const": write("const.map", "0 -> 0\n1 -> 0\n2 -> 0\n"),
        "id": write("id.map", "0 -> 0\n1 -> 1\n2 -> 2\n"),
        "i": write("i.map", "0 -> 0\n1 -> 1\n"),
        "u": write("u.map", "0 -> 0\n1 -> 0\n"),
        "surj": write("surj.map", "0 -> 0\n1 -> 0\n2 -> 1\n"),
        "bad": write("bad.cpx", "0 1\n1 [2,\n"),
    }


def test_sd2_lists_facets(files):
    code, out, _ = call("sd2", files["d2"])
    assert code == 0
    assert out.startswith("vertices: [[0]]")
    assert len(out.splitlines()) == 1 + 36


def test_sd_json(files):
    code, out, _ = call("sd", files["d2"], "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1
    assert len(d["complex"]["vertices"]) == 7 and len(d["complex"]["facets"]) == 6


def test_hom_complex_has_two_components(files):
    code, out, _ = call("hom-complex", files["k2u"], files["h"], "--format", "json")
    assert code == 0
    assert json.loads(out)["components"] == 2


def test_clique_and_skeleton(files):
    code, out, _ = call("clique", files["c4"], "--format", "json")
    assert code == 0 and len(json.loads(out)["complex"]["facets"]) == 4
    code, out, _ = call("skeleton", files["d2"])
    assert code == 0 and out.startswith("mode: reflexive")


def test_flag_verdicts(files):
    assert call("flag", files["d2"])[0] == 0
    assert call("flag", files["b2"])[0] == 1


def test_product_and_exp(files):
    code, out, _ = call("product", files["e"], files["e"], "--format", "json")
    assert code == 0 and len(json.loads(out)["complex"]["vertices"]) == 4
    code, out, _ = call("exp", files["b2"], files["e"], "--format", "json")
    assert code == 0 and len(json.loads(out)["complex"]["vertices"]) == 9


def test_pushout(files):
    code, out, _ = call("pushout", files["two"], files["e"], files["pt"], files["i"], files["u"], "--format", "json")
    assert code == 0
    assert json.loads(out)["complex"]["vertices"] == [0]


def test_core_collapses_ndr_retract(files):
    code, out, _ = call("core", files["d2"], "--format", "json")
    assert code == 0 and len(json.loads(out)["core"]["vertices"]) == 1
    assert call("collapses-to", files["d2"], files["pt"])[0] == 0
    assert call("collapses-to", files["d2"], files["b2"])[0] == 1
    assert call("ndr", files["d2"], files["b2"])[0] == 1
    assert call("retract", files["d2"], files["pt"])[0] == 0
    assert call("retract", files["b2"], files["pt"])[0] == 1


def test_homotopic(files):
    code, out, _ = call("homotopic", files["d2"], files["d2"], files["const"], files["id"], "--format", "json")
    assert code == 0 and json.loads(out)["homotopic"] is True
    assert call("homotopic", files["b2"], files["b2"], files["const"], files["id"])[0] == 1


def test_homology(files):
    code, out, _ = call("homology", files["b2"], "--format", "json")
    assert code == 0 and json.loads(out) == {"schema": 1, "betti": [1, 1], "torsion": [[], []]}
    code, out, _ = call("homology", files["d2"], "--map", files["const"], "--to", files["d2"], "--format", "json")
    assert code == 0 and json.loads(out)["homology_iso"] is True
    assert call("homology", files["b2"], "--map", files["const"], "--to", files["b2"])[0] == 1


def test_gen_cofib_and_lift(files):
    code, out, _ = call("gen-cofib", "1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["source"]["vertices"]) == 2 and len(d["target"]["vertices"]) == 5
    code, out, _ = call("gen-cofib", "2", "--horn", "0", "--format", "json")
    assert code == 0
    assert call("lift", files["d2"], files["e"], files["surj"], "--n-max", "2")[0] == 0


def test_budget_exhaustion_is_unknown(files, monkeypatch):
    code, out, _ = call("gen-cofib", "5")
    assert code == 2 and out.startswith("unknown")
    monkeypatch.setenv("XHO_BUDGET", "1")
    assert call("collapses-to", files["d2"], files["pt"])[0] == 2
    monkeypatch.setenv("XHO_BUDGET", "-4")
    assert call("core", files["d2"])[0] == 3


def test_input_errors(files):
    code, _, err = call("core", files["bad"])
    assert code == 3 and "line 2" in err
    assert call("core", "/nonexistent/file.cpx")[0] == 3
    assert call("bogus")[0] == 3
    assert call("core", files["d2"], "--budget", "0")[0] == 3
    assert call("core", files["d2"], "--unknown-flag")[0] == 3
    assert call("homotopic", files["b2"], files["b2"], files["u"], files["id"])[0] == 3


def test_verify_paper_subset():
    code, out, _ = call("verify-paper", "--only", "1", "2", "9")
    assert code == 0
    assert out.count("[PASS]") == 3


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "xhomotopy", "homology", files["b2"]], capture_output=True, text=True)
    assert proc.returncode == 0 and "betti: [1, 1]" in proc.stdout

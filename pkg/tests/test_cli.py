import json

import pytest

from arrlab.cli import main
from arrlab.families import example_B, full_monomial, tilde_A
from arrlab.report import AnalysisReport, SCHEMA_KEYS, analyze, from_json, to_json


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, A in [("exB23", example_B(2, 3)), ("fm1", full_monomial(1))]:
        p = tmp_path / f"{name}.arr"
        A.save(p)
        paths[name] = p
    paths["bad"] = tmp_path / "bad.txt"
    paths["bad"].write_text("field rational\n1 0 0\n0 1 1/0\n0 0 1\n")
    paths["pencil"] = tmp_path / "pencil.txt"
    paths["pencil"].write_text("field rational\n1 0 0\n0 1 0\n1 1 0\n")
    paths["square"] = tmp_path / "square.pts"
    paths["square"].write_text("0 0\n1 0\n0 1\n1 1\n")
    paths["tri"] = tmp_path / "tri.pts"
    paths["tri"].write_text("0 0\n1 0\n0 1\n")
    paths["col"] = tmp_path / "col.pts"
    paths["col"].write_text("0 0\n1 1\n2 2\n")
    return paths


def test_analyze_exB23(capsys, files):
    rc, out, _ = run(capsys, "analyze", files["exB23"], "--json")
    r = json.loads(out)
    assert rc == 0
    assert r["class"] == "NearlyFree(2,3)" and r["jumping_point"] == ["1", "1", "1"]
    assert r["jumping_lines"] == {"through": ["1", "1", "1"], "splitting": [1, 3]}
    assert set(SCHEMA_KEYS) <= set(r)


def test_analyze_full_monomial(capsys, files):
    rc, out, _ = run(capsys, "analyze", files["fm1"], "--json")
    r = json.loads(out)
    assert rc == 0
    assert (r["solvability"], r["class"], r["generic_splitting"], r["jumping_lines"]) == (
        "Supersolvable",
        "Free(2,3)",
        [2, 3],
        None,
    )
    assert r["euler_ok"] and r["tau_consistency_ok"]


def test_analyze_text_and_skip(capsys, files):
    rc, out, _ = run(capsys, "analyze", files["exB23"])
    assert rc == 0 and "jumping point (1:1:1)" in out
    rc, out, _ = run(capsys, "analyze", files["exB23"], "--skip-syzygy", "--json")
    r = json.loads(out)
    assert rc == 0 and r["mdr"] is None and r["tau"] == 11


def test_malformed_scalar(capsys, files):
    rc, _, err = run(capsys, "analyze", files["bad"])
    assert rc == 1 and "line 3" in err


def test_missing_file(capsys, tmp_path):
    rc, _, err = run(capsys, "analyze", tmp_path / "nope.arr")
    assert rc == 1 and err


def test_pencil_is_reported(capsys, files):
    rc, out, _ = run(capsys, "analyze", files["pencil"], "--json")
    assert rc == 0 and json.loads(out)["solvability"] == "Pencil"
    rc, out, _ = run(capsys, "classify", files["pencil"])
    assert rc == 0 and "Pencil" in out


def test_classify_and_jump(capsys, files):
    rc, out, _ = run(capsys, "classify", files["exB23"], "--json")
    assert rc == 0 and json.loads(out)["class"] == "NearlyFree(2,3)"
    rc, out, _ = run(capsys, "jump", files["exB23"], "--json")
    r = json.loads(out)
    assert rc == 0 and r["jumping_point"] == ["1", "1", "1"] and r["unique"] is True
    rc, out, _ = run(capsys, "jump", files["fm1"])
    assert rc == 0 and "no jumping point" in out


def test_family(capsys, tmp_path):
    out_path = tmp_path / "c2.arr"
    rc, _, _ = run(capsys, "family", "exC", "2", "--out", out_path)
    text = out_path.read_text()
    assert rc == 0
    assert len([l for l in text.splitlines()[1:] if l and not l.startswith("#")]) == 5
    assert "# d = 5" in text and "Free(2,2)" in text
    rc, out, _ = run(capsys, "family", "L", "5", "3")
    assert rc == 0 and "NearlyFree(2,3)" in out
    rc, _, err = run(capsys, "family", "L", "4", "5")
    assert rc == 1 and "L(4,5)" in err


def test_slopes(capsys, files, tmp_path):
    rc, out, _ = run(capsys, "slopes", files["square"], "--json", "--dual-out", tmp_path / "dual.arr")
    r = json.loads(out)
    assert rc == 0 and r["w"] == 4 and r["certified"] == "w >= n"
    assert (tmp_path / "dual.arr").read_text().count("\n") >= 9
    rc, out, _ = run(capsys, "slopes", files["tri"], "--json")
    assert rc == 0 and json.loads(out)["w"] == 3
    rc, _, err = run(capsys, "slopes", files["col"])
    assert rc == 1 and "collinear" in err


def test_batch(capsys, files):
    d = files["exB23"].parent
    rc, out, err = run(capsys, "analyze", "--batch", d, "--pattern", "*.arr", "--json")
    assert rc == 0 and out.count('"class"') == 2
    rc1, out1, _ = run(capsys, "analyze", "--batch", d, "--pattern", "*", "--jobs", "2")
    rc2, out2, _ = run(capsys, "analyze", "--batch", d, "--pattern", "*")
    assert rc1 == rc2 == 1  # bad.txt and the .pts files are input errors
    assert out1 == out2


def test_consistency_exit_code(capsys, files, monkeypatch):
    import arrlab.report as report

    monkeypatch.setattr(report, "stabilized_tau", lambda f: -1)
    rc, out, _ = run(capsys, "analyze", files["fm1"])
    assert rc == 2 and "tau_consistency_ok: NO" in out


@pytest.mark.parametrize("A", [example_B(2, 3), full_monomial(1), tilde_A(2, 3)], ids=str)
def test_json_roundtrip(A):
    r = analyze(A)
    text = to_json(r)
    back = from_json(text)
    assert back == r
    assert to_json(back) == text
    assert to_json(back, timing=False) == text


def test_from_json_rejects_incomplete():
    with pytest.raises(ValueError):
        AnalysisReport.from_dict({"d": 3})

import json

import pytest

from qale.cli import cone_line, main, render_json, render_markdown


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_group(tmp_path, gens, n, m, **extra):
    obj = {"name": "tmp", "dimension": n, "cyclotomic_order": m, "generators": gens, **extra}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(obj))
    return str(p)


def test_cohomology_diagonal_z4(capsys):
    code, out, _ = run(capsys, "cohomology", "joyce-9-3-5")
    rep = json.loads(out)
    assert code == 0
    assert rep["l2"] == {"2": 1, "4": 1}
    assert rep["model"] == "su3" and rep["mv_ok"]
    assert rep["l2_euler"] == rep["chi_l2"] == 2


def test_json_round_trip_is_byte_identical(capsys):
    _, out, _ = run(capsys, "cohomology", "s3-hilb3")
    assert render_json(json.loads(out)) == out
    _, again, _ = run(capsys, "cohomology", "s3-hilb3")
    assert again == out


def test_sp2_model_and_caveat(capsys):
    code, out, _ = run(capsys, "cohomology", "s3-hilb3")
    rep = json.loads(out)
    assert code == 0 and rep["model"] == "sp2" and rep["l2"] == {"4": 1}
    assert any("crepant" in b for b in rep["banners"])


def test_ends_model_banner(capsys):
    code, out, _ = run(capsys, "cohomology", "s3-hilb3", "--model", "ends")
    rep = json.loads(out)
    assert code == 0 and "l2" not in rep
    assert any("unproven" in b for b in rep["banners"])


def test_markdown_output(capsys):
    code, out, _ = run(capsys, "analyze", "joyce-9-3-5", "--format", "markdown")
    assert code == 0
    assert out.startswith("# analyze: joyce-9-3-5")
    assert "## classes" in out and "| age |" in out


def test_markdown_renders_banners():
    text = render_markdown({"command": "x", "name": "y", "banners": ["careful"], "v": {"1": 2}})
    assert "> careful" in text and "- **v**: 1: 2" in text


def test_ale_banner(capsys):
    code, out, _ = run(capsys, "analyze", "free-z5")
    rep = json.loads(out)
    assert code == 0 and rep["strata"] == []
    assert rep["banners"] and "ALE" in rep["banners"][0]


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "z2z2")
    assert code == 0 and json.loads(out)["ok"]


def test_hypothesis_failure_exits_2(capsys, tmp_path):
    path = write_group(tmp_path, [[["-1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]], 3, 2)
    code, _, err = run(capsys, "cohomology", path)
    assert code == 2 and "hypothesis" in err


def test_parse_error_exits_64(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"name": "x", "dimension": 1, "cyclotomic_order": 2, "generators": [[["1/0"]]]}')
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 64 and "line 1" in err and "column" in err


def test_missing_file_exits_64(capsys):
    code, _, _ = run(capsys, "analyze", "/nonexistent/group.json")
    assert code == 64


def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as e:
        main(["cone", "--k", "1"])
    assert e.value.code == 64
    code, _, _ = run(capsys, "cone", "--k", "1", "--d", "3", "--a", "x", "--b", "0")
    assert code == 64
    code, _, _ = run(capsys, "cone", "--k", "1", "--d", "3", "--a", "0", "--b", "0", "--betti", "1-1")
    assert code == 64


def test_override_provenance_logged(capsys, tmp_path):
    gens = [[["-1", "0", "0"], ["0", "z", "0"], ["0", "0", "z"]]]
    path = write_group(tmp_path, gens, 3, 4, overrides={"0": {"0": 1, "2": 1}})
    code, out, err = run(capsys, "-v", "cohomology", path)
    rep = json.loads(out)
    assert code == 0
    assert rep["provenance"][0]["source"] == "override"
    assert "override" in err and "heuristic" in err


def test_cone_lines(capsys):
    assert cone_line(2, 3, 0, 0, betti={2: 2}) == "2 = b2(V) (lex-above)"
    assert cone_line(1, 3, 0, 0, betti={1: 2}) == "0 (lex-below)"
    assert cone_line(2, 3, 0, 0, relative=True) == "0 (lex-above)"
    code, out, _ = run(capsys, "cone", "--k", "1", "--d", "3", "--a=-1/2", "--b", "0")
    assert code == 0 and out.strip() == "0 (edge-derived)"
    code, out, _ = run(capsys, "cone", "--k", "1", "--d", "3", "--a", "0", "--b", "0",
                       "--relative", "--betti", "0:1,1:3,2:1")
    assert code == 0 and out.strip() == "1 = b0(V) (lex-below)"


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert out.strip() == "ladder: 1000/1000, hardy: 200/200, cm: 12/12"


def test_selfcheck_failure_exits_70(capsys, monkeypatch):
    import qale.cli as cli
    monkeypatch.setattr(cli, "selfcheck", lambda seed: {"ladder": (9, 10)})
    code, out, _ = run(capsys, "selfcheck")
    assert code == 70 and "9/10" in out

import json

import pytest

from aitlab.cli import main


@pytest.fixture
def t6(tmp_path):
    path = tmp_path / "t6.tbl"
    assert main(["enumerate", "--L", "6", "--T", "100", "--out", str(path)]) == 0
    return path


def test_enumerate_writes_table(tmp_path, capsys):
    path = tmp_path / "t6.tbl"
    assert main(["enumerate", "--L", "6", "--T", "100", "--out", str(path)]) == 0
    assert path.read_text().splitlines()[-1] == "TOTAL 13"
    assert "outputs=2 total_mass=13/2^6" in capsys.readouterr().out


def test_enumerate_is_reproducible(t6, tmp_path):
    again = tmp_path / "again.tbl"
    main(["enumerate", "--L", "6", "--T", "100", "--out", str(again), "--workers", "2"])
    assert again.read_bytes() == t6.read_bytes()


@pytest.mark.parametrize("args", [["--L", "5"], ["--L", "6", "--T", "0"], ["--L", "6", "--workers", "0"]])
def test_enumerate_bad_params(args, tmp_path):
    assert main(["enumerate", *args, "--out", str(tmp_path / "x.tbl")]) == 2


def test_enumerate_unwritable(tmp_path):
    assert main(["enumerate", "--L", "3", "--out", str(tmp_path / "no" / "x.tbl")]) == 3


def test_unknown_flag():
    assert main(["enumerate", "--bogus"]) == 2


def test_check_ok(t6, capsys):
    assert main(["check", "--table", str(t6)]) == 0
    assert capsys.readouterr().out.strip().startswith("kraft=ok prefixfree=ok witnesses=ok")


def test_check_tampered(t6, capsys):
    t6.write_text(t6.read_text().replace("- 3 11 000", "- 3 75 000").replace("TOTAL 13", "TOTAL 77"))
    assert main(["check", "--table", str(t6)]) != 0
    out = capsys.readouterr()
    assert "kraft=FAIL" in out.out and "Kraft" in out.err


def test_malformed_table(tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text("garbage\n")
    assert main(["predict", "--table", str(bad), "--stream", "0"]) == 3
    assert main(["predict", "--table", str(tmp_path / "missing.tbl"), "--stream", "0"]) == 3


def test_predict(t6, capsys):
    assert main(["predict", "--table", str(t6), "--stream", "0"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "pos,observed,p0,p1,defect,logloss_cum,scored"
    assert lines[1].split(",")[2] == repr(2 / 13)


def _info(table, x, y, capsys, *extra):
    code = main(["info", "--table", str(table), "--x", x, "--y", y, *extra])
    return code, json.loads(capsys.readouterr().out)


def test_info_identical(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("AITLAB_CACHE_DIR", raising=False)
    t = tmp_path / "t21.tbl"
    main(["enumerate", "--L", "21", "--T", "256", "--out", str(t)])
    capsys.readouterr()
    code, doc = _info(t, "0", "0", capsys)
    assert code == 0
    assert doc["symmetry_gap"] == 0 and doc["bayes_log_gap"] == 0
    assert doc["params"] == {"L": 21, "T": 256, "cond": "", "isa": 1}
    assert doc["masses"]["m_x"]["exact"] == "164766/2^21"
    # conditional table cached beside the main one
    assert (tmp_path / "L21-T256-c0.tbl").exists()


def test_info_empty_x(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AITLAB_CACHE_DIR", str(tmp_path / "cache"))
    t = tmp_path / "t12.tbl"
    main(["enumerate", "--L", "12", "--T", "100", "--out", str(t)])
    capsys.readouterr()
    code, doc = _info(t, "-", "1", capsys)
    assert code == 0
    assert doc["i_y_to_x"] == 0 and doc["i_x_to_y"] == 0
    assert (tmp_path / "cache" / "L12-T100-c1.tbl").exists()


def test_info_insufficient(t6, capsys):
    code = main(["info", "--table", str(t6), "--x", "1", "--y", "0"])
    captured = capsys.readouterr()
    assert code == 4
    assert "khat_x" in captured.err


def test_bayes(tmp_path, capsys):
    space = tmp_path / "s.json"
    space.write_text(json.dumps({"hypotheses": ["a", "b"], "prior": [0.5, 0.5],
                                 "likelihood": {"E": [0.8, 0.4], "Z": [0, 0]}}))
    assert main(["bayes", "--space", str(space), "--evidence", "E,E"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["steps"][-1]["posterior"] == pytest.approx([0.8, 0.2], abs=1e-12)
    assert main(["bayes", "--space", str(space), "--evidence", "E,Z"]) == 4
    space.write_text('{"hypotheses": ["a"], "prior": [0.3], "likelihood": {}}')
    assert main(["bayes", "--space", str(space), "--evidence", "E"]) == 3


def test_lz(capsys, tmp_path):
    assert main(["lz", "cost", "--x", "0000000"]) == 0
    assert json.loads(capsys.readouterr().out)["cost"] == 8
    assert main(["lz", "info", "--x", "0000000", "--y", "0000000"]) == 0
    assert json.loads(capsys.readouterr().out)["info_y_to_x"] == 2
    assert main(["lz", "ncd", "--x", "-", "--y", "-"]) == 2
    (tmp_path / "a").write_text("0101\n")
    (tmp_path / "b").write_text("0111\n")
    assert main(["lz", "matrix", "--corpus", str(tmp_path)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == ",a,b"

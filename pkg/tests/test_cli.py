import json

import pytest

from entcert import cli
from entcert.cli import BUILTIN_TREE, main, parse_cut, report_markdown


def construct(tmp_path, family, *extra):
    path = tmp_path / f"{family}.json"
    assert main(["construct", family, "--out", str(path), *extra]) == 0
    return path


def test_parse_cut():
    assert parse_cut("A|BC").name == "A|BC"
    assert parse_cut("CA|B").name == "CA|B"
    assert parse_cut("CA|B").swapped().name == "B|CA"
    assert parse_cut("ab|c").name == "AB|C"
    for bad in ("ABC", "A|B", "A|BD", "AB|BC", "A|B|C"):
        with pytest.raises(cli.UsageError):
            parse_cut(bad)


def test_construct_is_byte_stable(tmp_path, capsys):
    path = construct(tmp_path, "U")
    text = path.read_text()
    assert len(json.loads(text)["states"]) == 6
    assert main(["construct", "U"]) == 0
    assert capsys.readouterr().out == text
    uhqm = construct(tmp_path, "Uhqm", "--rot", "1,2,0")
    assert len(json.loads(uhqm.read_text())["states"]) == 19


def test_construct_errors(tmp_path, capsys):
    assert main(["construct", "nope"]) == 64
    assert main(["construct", "Uhqm", "--rot", "9,9,9"]) == 64
    with pytest.raises(SystemExit) as exc:
        main(["construct"])
    assert exc.value.code == 64


def test_certify_exit_codes(tmp_path):
    u = construct(tmp_path, "U")
    omega = construct(tmp_path, "omega")
    assert main(["certify", "ubb", str(u), "--out", str(tmp_path / "r.json")]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["pass"] is True
    assert main(["certify", "ubb", str(u), "--complement", str(omega), "--out", str(tmp_path / "r2.json")]) == 0
    assert main(["certify", "strong-nonlocality", str(u), "--out", str(tmp_path / "r3.json")]) == 1
    assert main(["certify", "ges", str(omega), "--out", str(tmp_path / "r4.json")]) == 0
    assert main(["certify", "ges", str(omega), "--complement", str(u)]) == 64


def test_certify_inconclusive_exit_code(tmp_path):
    doc = {
        "dims": [2, 2, 2],
        "states": [
            {"terms": [{"index": [0, 0, 0], "re": "1"}, {"index": [1, 1, 1], "re": "1"}]},
            {"terms": [{"index": [0, 0, 1], "re": "1"}, {"index": [1, 1, 0], "re": "1"}]},
        ],
    }
    path = tmp_path / "ghz.json"
    path.write_text(json.dumps(doc))
    assert main(["certify", "ges", str(path), "--out", str(tmp_path / "r.json")]) == 2


def test_bad_input_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"dims": [2, 2], "states": [{"terms": [{"index": [0, 0], "re": "x"}]}]}')
    assert main(["certify", "ges", str(path)]) == 65
    assert "$.states[0].terms[0]" in capsys.readouterr().err
    assert main(["certify", "ges", str(tmp_path / "missing.json")]) == 64


def test_markdown_report(tmp_path):
    u = construct(tmp_path, "U")
    out = tmp_path / "r.md"
    assert main(["certify", "strong-nonlocality", str(u), "--md", "--out", str(out)]) == 1
    text = out.read_text()
    assert text.startswith("# strong nonlocality")
    assert "| grouping | side |" in text and "A\\|BC" in text
    assert report_markdown({"property": "x", "a|b": "c|d"}).splitlines()[2] == "- **a|b**: c\\|d"


def test_verify_protocol(tmp_path):
    u = construct(tmp_path, "U")
    out = tmp_path / "p.json"
    assert main(["verify-protocol", str(u), BUILTIN_TREE, "--cut", "A|BC", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "distinguished" and rep["cut"] == "A|BC"
    assert main(["verify-protocol", str(u), BUILTIN_TREE, "--cut", "AB|C"]) == 65
    bad = tmp_path / "tree.json"
    bad.write_text('{"group": [0], "outcomes": [{"kraus": [["1", "0"], ["0", "0"]]}]}')
    assert main(["verify-protocol", str(u), str(bad), "--cut", "A|BC"]) == 65


def test_distillable_with_fixture_gate(tmp_path):
    ges = construct(tmp_path, "GES", "--rot", "0,0,0")
    out = tmp_path / "d.json"
    assert main(["certify", "distillable", str(ges), "--verify-fixtures", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["violations"] == []


def test_thread_setting(monkeypatch):
    monkeypatch.setenv("ENTCERT_THREADS", "3")
    assert cli.threads() == 3
    monkeypatch.setenv("ENTCERT_THREADS", "junk")
    assert cli.threads() == 1
    monkeypatch.setenv("ENTCERT_THREADS", "2")
    assert cli.parallel_map(abs, [-1, 2, -3]) == [1, 2, 3]


def test_reproduce(tmp_path, capsys):
    assert main(["reproduce-paper", "--out", str(tmp_path / "rep")]) == 0
    summary = json.loads((tmp_path / "rep" / "summary.json").read_text())
    assert summary["all_pass"] and len(summary["rows"]) == 40
    assert "Errata" in (tmp_path / "rep" / "report.md").read_text()

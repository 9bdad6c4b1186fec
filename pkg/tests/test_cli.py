from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from garside.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_normal():
    assert call("normal", "A2", "1211") == (0, "121 . 1\n", "")
    assert call("normal", "A2", "e")[1] == "e\n"


def test_lattice_commands():
    assert call("gcd", "A2", "12", "21")[1] == "e\n"
    assert call("lcm", "A2", "1", "2")[1] == "121\n"
    assert call("divides", "A2", "1", "121")[1] == "true\n21\n"
    assert call("divides", "A2", "2", "12")[1] == "false\n"
    assert call("divides", "A2", "2", "12", "--side", "right")[1] == "true\n1\n"


def test_ribbon_commands():
    assert call("ribbon-alpha", "A2", "[2]", "21")[1] == "alpha: 2\nomega: 1\n"
    assert call("ribbon-atoms", "A2", "[1]")[1] == "[1] --21--> [2]\n"
    assert call("ribbon-atoms", "A3", "1", "--orbit")[1] == "[1]\n[2]\n[3]\n"


def test_good_count():
    code, out, _ = call("good", "H3", "--d", "10", "--count")
    data = json.loads(out)
    assert code == 0 and data["count"] == 4


def test_good_all_h4():
    code, out, _ = call("good", "H4", "--all")
    rows = json.loads(out)["rows"]
    assert len(rows) == 11
    assert {r["d"]: r["count"] for r in rows}[12] == 22


def test_good_single_and_word():
    code, out, _ = call("good", "A4", "--word", "123432", "--subset", "3", "--d", "3")
    data = json.loads(out)
    assert code == 0 and data["checks"]["maximal"] and data["I"] == [3]
    assert call("good", "A3", "--word", "12", "--d", "4")[0] == 1
    assert call("good", "H3", "--d", "7")[0] == 1


def test_empty_table():
    code, out, _ = call("good", "H3", "--d", "7", "--count")
    assert json.loads(out)["rows"] == []


def test_conj_graph_dot():
    code, out, _ = call("conj-graph", "D4", "123423", "--fixed", "phi", "--dot", "-")
    assert code == 0 and out.startswith("digraph")
    assert sum(1 for line in out.splitlines() if "->" not in line and "label" in line) == 12


def test_conj_graph_text_and_json():
    assert call("conj-graph", "A2", "12")[1] == "12\n21\n"
    data = json.loads(call("conj-graph", "A2", "12", "--json")[1])
    assert len(data["nodes"]) == 2
    code, out, _ = call("conj-graph", "A5", "21325", "--twist", "phi")
    assert len(out.splitlines()) == 22


def test_conj_graph_writes_file(tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = call("conj-graph", "A2", "12", "--dot", str(target))
    assert code == 0 and out == "" and target.read_text().startswith("digraph")


def test_endo_gens():
    code, out, _ = call("endo-gens", "D4", "123423", "--bound", "2")
    assert "24" in out.splitlines()


def test_periodic_and_slide():
    data = json.loads(call("periodic-check", "A3", "2132", "--d", "2", "--subset", "2")[1])
    assert data["periodic"] is False
    data = json.loads(call("periodic-check", "A2", "12", "--d", "3")[1])
    assert data["periodic"] and data["I"] == [] and data["good"] and data["maximal"]
    data = json.loads(call("slide", "H3", "212321", "--d", "5")[1])
    assert data["conjugator"] == "e"
    assert call("slide", "A2", "1", "--d", "2")[0] == 1


def test_restrict_and_poset():
    data = json.loads(call("restrict", "A2", "--n", "2", "--d", "6")[1])
    assert data["checks"]["maximal"] and data["factors"] == 2
    data = json.loads(call("poset-check", "A2", "121")[1])
    assert data["connected"] and data["h1_rank"] == 0 and len(data["factorizations"]) == 7
    data = json.loads(call("poset-check", "A2", "--up-to", "3")[1])
    assert data["all_ok"] and data["checked"] == 13


@pytest.mark.parametrize("argv,code", [
    (["normal", "A2", "1251"], 2),
    (["normal", "Q7", "1"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["good", "H3"], 2),
    (["good", "E7", "--d", "12", "--count"], 2),
    (["divides", "A2", "x", "1"], 2),
    (["conj-graph", "A3", "12", "--fixed", "1,1,2"], 2),
    (["slide", "A2", "1", "--d", "2"], 1),
])
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code and out == "" and err.startswith("error")


def test_parse_errors_report_position():
    _, _, err = call("normal", "A3", "12x")
    assert "position 3" in err


def test_out_flag(tmp_path):
    target = tmp_path / "out.txt"
    assert call("normal", "A2", "1211", "--out", str(target)) == (0, "", "")
    assert target.read_text() == "121 . 1\n"


def test_tolerance_flag_is_scoped():
    from garside import periodic
    before = periodic.DEFAULT_TOL
    code, out, _ = call("good", "H3", "--d", "10", "--tolerance", "1e-6")
    assert code == 0 and periodic.DEFAULT_TOL == before


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "garside", "normal", "A2", "1212"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "121 . 2\n"

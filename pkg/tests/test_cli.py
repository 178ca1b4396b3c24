import json
import subprocess
import sys

import pytest

from nestsep.cli import main
from nestsep.fileformat import parse_matroid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_rank_and_lambda(capsys):
    assert js(capsys, "rank", "--named", "F7", "--set", "1,2,12")["rank"] == 2
    assert js(capsys, "lambda", "--named", "U24", "--set", "a,b")["value"] == 2


def test_kappa_and_link(capsys):
    out = js(capsys, "kappa", "--named", "U36", "--x", "a,b", "--y", "e,f")
    assert out["value"] == 2
    link = js(capsys, "link", "--named", "U36", "--x", "a", "--y", "f")
    assert link["local_conn_after"] == link["kappa"] == 1


def test_dissect(capsys):
    out = js(capsys, "dissect", "--named", "U24", "--k", "2", "--parts", "a;b;c;d")
    assert out["length"] == 3 and out["cuts"] == [1, 2, 1] and out["linked"] is False
    best = js(capsys, "dissect", "--named", "F7", "--k", "2")
    assert best["length"] == 5


def test_classes_and_pi(capsys):
    out = js(capsys, "classes", "--named", "U24", "--side", "a,b")
    assert out["count"] == 3
    pi = js(capsys, "pi", "--named", "U24", "--side", "a,b")
    assert pi["values"] == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]


def test_schemes_realizable(capsys):
    assert js(capsys, "schemes", "--named", "U24", "--side", "a,b", "--q", "3")["count"] == 15
    out = js(capsys, "realizable", "--named", "U24", "--side", "a,b", "--q", "2")
    assert out["count"] == 10 and all(r["replayed"] for r in out["realizable"])
    parse_matroid(out["realizable"][0]["witness"])


def test_compat_represent(capsys):
    assert js(capsys, "compat", "--named", "U24", "--side", "a,b", "--q", "2") == {"compatible": False}
    assert js(capsys, "compat", "--named", "U24", "--side", "a,b", "--q", "3")["compatible"]
    rep = js(capsys, "represent", "--named", "F7", "--q", "2")
    assert rep["representable"] and parse_matroid(rep["file"]).size == 7
    assert js(capsys, "represent", "--named", "F7", "--q", "3") == {"representable": False}


def test_excluded_minor(capsys):
    assert js(capsys, "excluded-minor", "--named", "U24", "--fields", "2")["excluded_minor"]
    assert not js(capsys, "excluded-minor", "--named", "F7", "--fields", "2")["excluded_minor"]


def test_nested_count_report(capsys):
    assert js(capsys, "nested-count", "--named", "U24", "--k", "2")["count"] == 2
    rows = js(capsys, "nested-count", "--named", "F7", "--k", "3", "--report", "--fields", "3")["rows"]
    assert [r["count"] for r in rows] == [0, 2, 5] and all(r["below"] for r in rows)


def test_branchwidth(capsys):
    out = js(capsys, "branchwidth", "--named", "F7")
    assert out["branch_width"] == 3 and out["tree"].startswith("(")


def test_pg_flats(capsys):
    out = js(capsys, "pg-flats", "--k", "3", "--q", "2", "--list")
    assert out["count"] == 16 == len(out["flats"]) and out["holds"]


def test_tower_exact(capsys):
    assert js(capsys, "tower", "2", "3", "2")["value"] == "512"
    out = js(capsys, "tower", "2", "5", "4", "4")
    assert out["value"] == f"2^{5 ** 256}" and out["exact_decimal"] is False


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "classes", "--named", "U24", "--side", "a,b")
    assert code == 0 and "count" in out and "[a, b]" in out


def test_matroid_file(capsys, tmp_path):
    p = tmp_path / "u.txt"
    p.write_text("type uniform\nparams 2 4\nelements w x y z\n")
    assert js(capsys, "rank", "--matroid", str(p), "--set", "w,x,y")["rank"] == 2


@pytest.mark.parametrize("argv", [
    ["rank", "--named", "nope"],
    ["rank", "--named", "U24", "--set", "q"],
    ["rank"],
    ["rank", "--matroid", "/nonexistent/file"],
    ["schemes", "--named", "U24", "--side", "a,b", "--q", "5"],
    ["pg-flats", "--k", "2", "--q", "6"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:") and out == ""


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "2seps")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "classes2", "--max-n", "3")
    assert code == 1 and json.loads(out)["counterexample"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nestsep", "tower", "3", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["value"] == "27"

import io
import json
from importlib import resources

import jsonschema
import pytest

from qlcomb.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    text = resources.files("qlcomb").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def run_json(name, *argv):
    code, out, _ = run(*argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return code, data


def test_rootdata_table():
    code, out, _ = run("rootdata", "G", "2")
    assert code == 0
    assert "h_dual          4" in out and "lacing r        3" in out
    assert "theta_s check   (1, 2)" in out


def test_rootdata_usage_errors():
    assert run("rootdata", "A", "0")[0] == 2
    assert run("rootdata", "Q", "3")[0] == 2
    assert run("rootdata", "A", "x")[0] == 2
    assert run()[0] == 2


@pytest.mark.parametrize("label,rank", [("B", "3"), ("E", "8"), ("G", "2")])
def test_rootdata_json(label, rank):
    code, data = run_json("rootdata", "rootdata", label, rank)
    assert code == 0 and data["rank"] == int(rank)


def test_good_e8():
    code, data = run_json("good", "good", "--type", "E8", "--level", "-h+1/7")
    assert code == 0 and data["good"] is True and data["oracle"]["status"] == "good"


def test_good_not_good_and_inconclusive():
    code, data = run_json("good", "good", "--type", "G2", "--level", "-h+1/2")
    assert code == 0 and data["good"] is False
    code, _, _ = run("good", "--type", "F4", "--level", "-h-1", "--width", "6")
    assert code == 3
    assert run("good", "--type", "A2", "--level", "-h")[0] == 2


def test_dual_level():
    code, data = run_json("dual_level", "dual-level", "--type", "G2", "--level", "-h+2/5")
    assert code == 0 and data["dual_level"]["literal"] == "-h+5/6"
    code, out, _ = run("dual-level", "--type", "A1", "--level", "irr")
    assert "irr:inv" in out
    assert run("dual-level", "--type", "A1", "--level", "-h")[0] == 2


def test_intweyl():
    code, data = run_json("intweyl", "intweyl", "--type", "B2", "--level", "-h+1/2")
    assert code == 0 and data["coxeter_matrix"] == [[1, 4, 4], [4, 1, 2], [4, 2, 1]]


def test_verify_duality():
    code, data = run_json("verify_duality", "verify-duality", "--type", "B2", "--level", "-h+1/2")
    assert code == 0 and data["verdict"] == "MATCH"
    assert data["ball"]["bound"] == 8


def test_match():
    code, data = run_json("match", "match", "--type", "A1", "--level", "-h-1/3", "--bound", "8")
    assert code == 0 and data["summary"]["verdict"] == "MATCH"
    assert data["summary"]["certified"] == len(data["blocks"]) == 4


def test_match_refusals():
    code, _, err = run("match", "--type", "A1", "--level", "-h+1/3")
    assert code == 2 and "dualize first" in err
    code, _, err = run("match", "--type", "G2", "--level", "-h-1/2")
    assert code == 2 and "not good" in err


def test_match_inconclusive_when_nothing_certified():
    code, _, _ = run("match", "--type", "A2", "--level", "-h-1/3", "--bound", "2")
    assert code == 3


def test_blocks():
    code, data = run_json("blocks", "blocks", "--type", "A2", "--level", "-h-1/3", "--bound", "6")
    assert code == 0 and data["summary"] == {"blocks": 10, "certified": 8, "properties_hold": True}


def test_parahoric():
    code, data = run_json("parahoric", "parahoric", "--type", "A2", "--J", "0", "--bound", "6")
    assert code == 0 and data["equal"] and len(data["C"]) == 5
    assert run("parahoric", "--type", "A2", "--J", "5")[0] == 2


def test_cap():
    code, _, err = run("blocks", "--type", "A2", "--level", "-h-1/3", "--bound", "6", "--cap", "20")
    assert code == 3 and "cap" in err


def test_config(tmp_path):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("# defaults\nbound = 3\n")
    code, data = run_json("blocks", "blocks", "--type", "A1", "--level", "-h-1/3",
                          "--config", str(cfg))
    assert data["bound"] == 3
    cfg.write_text("colour = 3\n")
    assert run("blocks", "--type", "A1", "--level", "-h-1/3", "--config", str(cfg))[0] == 2
    assert run("blocks", "--type", "A1", "--level", "-h-1/3", "--config", "/nonexistent")[0] == 2


def test_deterministic():
    argv = ("match", "--type", "A2", "--level", "-h-2/5", "--bound", "6", "--json")
    assert run(*argv)[1] == run(*argv)[1]
    argv = ("blocks", "--type", "B2", "--level", "irr", "--bound", "5")
    assert run(*argv)[1] == run(*argv)[1]


def test_bad_level_literal():
    assert run("good", "--type", "A2", "--level", "h+1")[0] == 2

import json
import os
import shutil
import subprocess
import sys

import jsonschema
import pytest

from agrarian import __version__

from helpers import corpus_dir, manifest, schema

AGR = shutil.which("agr")


def agr(*args):
    cmd = [AGR] if AGR else [sys.executable, "-m", "agrarian.cli"]
    proc = subprocess.run(cmd + list(args), capture_output=True, text=True, timeout=60)
    return proc.returncode, proc.stdout


def corpus(name):
    return str(corpus_dir() / name)


def test_version():
    code, out = agr("--version")
    assert code == 0 and out.strip() == f"agr {__version__}"


@pytest.mark.parametrize("command", ["betti", "torsion", "polytope", "check"])
def test_commands_over_corpus_follow_schema(command):
    out_schema = schema("agr-output.schema.json")
    for entry in manifest()["entries"]:
        code, out = agr(command, corpus(entry["file"]))
        doc = json.loads(out)
        jsonschema.validate(doc, out_schema)
        if command == "betti" or (command == "check" and doc["ok"]):
            assert code == 0, (command, entry["name"])
        if entry.get("deficiency", 1) != 1 and command in ("torsion", "polytope"):
            assert code == 2 and doc["error"]["type"] == "WrongDeficiency"


def test_not_acyclic_reports_betti():
    code, out = agr("polytope", corpus("f2_padded.pres"))
    doc = json.loads(out)
    assert code == 2
    assert doc["error"]["type"] == "NotAcyclic"
    assert doc["error"]["betti"]["perDegree"] == {"0": 0, "1": 1, "2": 1}


def test_bns_over_manifest():
    for entry in manifest()["entries"]:
        for q in entry.get("bns", []):
            char = ",".join(str(a) for a in q["char"])
            code, out = agr("bns", corpus(entry["file"]), "--marking", corpus(entry["marking"]), "--char", char)
            assert code == 0
            assert json.loads(out)["member"] is q["member"], (entry["name"], char)


def test_svg_options(tmp_path):
    target = tmp_path / "trefoil.svg"
    code, out = agr("polytope", corpus("trefoil.pres"), "--svg", str(target), "--scale", "10", "--no-grid")
    assert code == 0 and json.loads(out)["svg"] == str(target)
    text = target.read_text()
    assert text.startswith("<svg") and "#bbb" not in text
    code, out = agr("polytope", corpus("f2z.pres"), "--svg", str(tmp_path / "f2z.svg"))
    assert code == 2 and not os.path.exists(tmp_path / "f2z.svg")


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: x y\nrel: x q\n")
    code, out = agr("betti", str(bad))
    doc = json.loads(out)
    assert code == 3 and doc["error"]["line"] == 2
    code, out = agr("frobnicate")
    assert code == 3 and json.loads(out)["error"]["type"] == "UsageError"
    marking = tmp_path / "m.json"
    marking.write_text("{not json")
    code, _ = agr("bns", corpus("bs12.pres"), "--marking", str(marking), "--char", "1")
    assert code == 3
    code, _ = agr("bns", corpus("bs12.pres"), "--marking", corpus("bs12.marking.json"), "--char", "1,2")
    assert code == 3


def test_check_seed_is_reproducible():
    a = agr("check", corpus("figure_eight.pres"), "--seed", "7")
    b = agr("check", corpus("figure_eight.pres"), "--seed", "7")
    assert a == b and a[0] == 0
    names = [c["name"] for c in json.loads(a[1])["checks"]]
    assert "chainCondition" in names and "torsionAgreement" in names

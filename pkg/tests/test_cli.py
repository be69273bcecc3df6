import json
import shutil
import subprocess

import pytest

from codiff import report as rp
from codiff.catalog import get
from codiff.cli import main
from codiff.graded import phi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert len(out.strip().splitlines()) == 28


def test_catalog_show_json(capsys):
    code, out, _ = run(capsys, "--json", "catalog", "show", "d24")
    assert code == 0
    assert json.loads(out)["name"] == "d24"


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--alg", "d25", "--max-degree", "3", "--json")
    degrees = json.loads(out)["degrees"]
    assert code == 0
    assert (degrees[2]["even"], degrees[2]["odd"]) == (4, 4)


def test_cohomology_from_file(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps(get(2).d.to_json()))
    code, out, _ = run(capsys, "cohomology", "--alg", str(f), "--max-degree", "2")
    assert code == 0 and "h2=" in out


def test_analyze_and_fingerprint(capsys):
    assert run(capsys, "analyze", "--alg", "d24")[0] == 0
    code, out, _ = run(capsys, "fingerprint", "--in", "d3", "--json")
    assert code == 0 and "fingerprint" in json.loads(out)


def test_extensions_case(capsys):
    code, out, _ = run(capsys, "extensions", "enumerate", "--case", "s6-mu1", "--json")
    assert code == 0
    classes = json.loads(out)["result"]["extensions"]["s6-mu1"]["classes"]
    assert [c["catalog"] for c in classes] == [8, 9]


def test_deform_reference_frame(capsys):
    code, out, _ = run(capsys, "deform", "--alg", "d24", "--order", "3", "--frame", "reference", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["parameters"] == 3 and data["higher_terms"]


def test_jumps_and_graph(capsys, tmp_path):
    code, out, _ = run(capsys, "jumps", "--alg", "d2")
    assert code == 0 and "d1" in out
    dot = tmp_path / "g.dot"
    code, _, _ = run(capsys, "jump-graph", "--dot", str(dot))
    assert code == 0
    text = dot.read_text()
    assert "d27 -> d26;" in text and "d1;" in text


def test_seed_list(capsys, tmp_path):
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("# a b\n2 3\n5 7\n11 13\n")
    code, out, _ = run(capsys, "--seed-list", str(seeds), "jumps", "--alg", "d21", "--json")
    assert code == 0
    points = [s["point"] for b in json.loads(out)["result"]["jumps"]["branches"]["d21"] for s in b["samples"]]
    assert ["0", "2"] in points


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "--a", "d3", "--b", "d4")
    assert code == 0 and "none found" in out


def test_usage_errors(capsys):
    assert run(capsys, "cohomology", "--alg", "d99")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "reproduce-all", "--only", "bogus")[0] == 2
    assert run(capsys, "deform", "--alg", "d1", "--frame", "reference")[0] == 2
    assert run(capsys, "deform", "--alg", "d2", "--order", "0")[0] == 2


def test_malformed_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert run(capsys, "fingerprint", "--in", str(f))[0] == 2


def test_unknown_discrepancy_gives_exit_one(capsys, tmp_path):
    empty = tmp_path / "errata.json"
    empty.write_text(json.dumps({"version": 1, "items": []}))
    assert run(capsys, "--errata", str(empty), "reproduce-all", "--only", "splits")[0] == 1
    assert run(capsys, "reproduce-all", "--only", "splits")[0] == 0


def test_reproduce_all_is_deterministic(capsys):
    a = run(capsys, "--json", "reproduce-all", "--only", "table1,metadata", "--only", "jumps")
    b = run(capsys, "--json", "reproduce-all", "--only", "table1,metadata", "--only", "jumps")
    assert a[0] == 0
    assert a[1] == b[1]
    data = json.loads(a[1])
    assert data["status"] == "ok"
    assert all(d["known"] for d in data["discrepancies"])


def test_corrupted_source_is_reported():
    src = {k: get(k).d for k in range(1, 29)}
    src[5] = src[5] + phi(1, 1, 2)
    r = rp.check_codifferentials(rp.Errata(), source=src)
    assert [d.key for d in r.unexpected] == ["codiff:d5", "assoc:d5"]
    assert r.exit_code == 1


@pytest.mark.skipif(shutil.which("codiff") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["codiff", "catalog", "show", "d1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("d1 = ")

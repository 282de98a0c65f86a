import json
import subprocess
import sys

import pytest

from chainspec.cli import execute, main


@pytest.mark.parametrize("argv, code", [
    (["spectrum", "0^1 1^2 0^2 1^4"], 0),
    (["seidel", "00111"], 0),
    (["quotient", "0^2 1^3"], 0),
    (["degrees", "0^1 1^2 0^2 1^4"], 0),
    (["canon", "011001111"], 0),
    (["cospectral-pair", "1", "2", "2", "4"], 0),
    (["cospectral-pair", "1", "2", "2", "5"], 2),
    (["verify", "all", "0^2 1^3"], 0),
    (["verify", "seidel-laws", "0^2 1^2 0^6 1^2 0^4 1^2"], 0),
    (["verify", "bogus", "0^2 1^3"], 2),
    (["dk", "--k", "5", "--c", "1/2"], 0),
    (["dk", "--k", "-1", "--c", "2"], 2),
    (["ms-gap", "--n", "8", "--h", "2"], 2),
    (["ms-gap", "--n", "12", "--h", "3"], 0),
    (["census", "--n-max", "6", "--jobs", "1"], 0),
    (["census", "--n-max", "1"], 2),
    (["spectrum", "10"], 2),
    (["spectrum", "0^1 2^3"], 2),
    (["spectrum"], 2),
    (["nonsense"], 2),
    (["--precision", "x", "spectrum", "01"], 2),
    (["spectrum", "random:12:3", "--seed", "4"], 0),
    (["spectrum", "random:12"], 2),
])
def test_exit_codes(argv, code):
    assert execute(argv)[0] == code


def test_text_outputs():
    _, out = execute(["cospectral-pair", "1", "2", "2", "4", "--precision", "2"])
    assert "G = 0^1 1^2 0^2 1^4" in out and "H = 0^2 1^1 0^4 1^2" in out
    assert "{3.57, 1.12, [0]^5, -1.12, -3.57}" in out
    assert "(1, 1, 3, 3, 3, 3, 4, 4, 6)" in out
    assert execute(["canon", "0^1 1^3"])[1] == "0^3 1^1\n"
    assert "D_2(3) = 8" in execute(["dk", "--k", "2", "--c", "3"])[1]


@pytest.mark.parametrize("argv", [
    ["spectrum", "0^1 1^2 0^2 1^4"],
    ["seidel", "0^1 1^2 0^2 1^2 0^2 1^1"],
    ["quotient", "0^1 1^2 0^2 1^2 0^2 1^1"],
    ["degrees", "0^3 1^1 0^2 1^5"],
    ["canon", "0^1 1^3"],
    ["cospectral-pair", "1", "2", "2", "4"],
    ["verify", "all", "0^1 1^1 0^1 1^1"],
    ["dk", "--k", "7", "--c", "-2"],
    ["ms-gap", "--n", "12", "--h", "3"],
    ["census", "--n-max", "7", "--jobs", "1"],
])
def test_json_roundtrip(argv):
    code, out = execute(argv + ["--json"])
    assert code == 0
    doc = json.loads(out)
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == out


def test_json_content():
    doc = json.loads(execute(["seidel", "0^2 1^3", "--json"])[1])
    # (x - 4)(x + 1)^4
    assert doc["char_poly"] == ["-4", "-15", "-20", "-10", "0", "1"]
    assert doc["inertia"] == [1, 0, 4]
    assert [e["value"] for e in doc["spectrum"]["entries"]] == ["4", "-1"]
    doc = json.loads(execute(["dk", "--k", "4", "--c", "2", "--json"])[1])
    assert doc == {"k": 4, "c": "2", "recurrence": "5", "closed_form": "5", "agree": True}


def test_census_out_file(tmp_path):
    out = tmp_path / "log.jsonl"
    assert execute(["census", "--n-max", "6", "--jobs", "1", "--out", str(out)])[0] == 0
    first = out.read_text().splitlines()[0]
    assert json.loads(first) == {"schema": 1}


def test_main_and_module_entry(capsys):
    assert main(["canon", "011"]) == 0
    assert capsys.readouterr().out == "0^2 1^1\n"
    r = subprocess.run([sys.executable, "-m", "chainspec", "verify", "f-matrix", "0^1 1^2 0^2 1^4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "f-matrix" in r.stdout and "holds" in r.stdout

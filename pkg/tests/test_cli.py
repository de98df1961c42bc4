import csv
import io
import json

import pytest

from eaqmds import __version__
from eaqmds.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, out = call(*argv)
    return code, json.loads(out)


def test_cosets():
    code, data = call_json("cosets", "--n", "17", "--q", "13")
    assert code == 0
    assert data["cosets"][0] == [0]
    assert [1, 16] in data["cosets"] and len(data["cosets"]) == 9


def test_decompose_example():
    code, data = call_json("decompose", "--n", "17", "--q", "13", "--k", "4")
    assert code == 0 and data["tssSize"] == 4
    assert sorted(data["tss"]) == [[6, 11], [7, 10]]
    pairs = [w for w in data["witnesses"] if w["kind"] == "asymmetric_pair"]
    assert {(w["rep"], w["partner"]) for w in pairs} == {(6, 7)}


def test_code_example():
    code, data = call_json("code", "--family", "1", "--l", "3", "--m", "1", "--d", "7")
    assert code == 0
    (rec,) = data["records"]
    assert (rec["n"], rec["k"], rec["d"], rec["c"], rec["q"]) == (17, 9, 7, 4, 13)
    assert rec["saturation"] == "saturated" and rec["mdsVerified"] is True
    assert len(data["checkMatrix"]) == 6 and data["dimension"] == 11


def test_json_schema_top_level():
    _, data = call_json("verify", "--family", "1", "--l", "3", "--m", "1")
    for key in ("version", "command", "params", "records", "reports"):
        assert key in data
    assert data["version"] == __version__ and data["command"] == "verify"
    for rec in data["records"]:
        assert {"q", "n", "k", "d", "c", "saturation", "mdsVerified"} <= set(rec)
    for rep in data["reports"]:
        assert {"kind", "paper", "computed", "witness"} <= set(rep)
    # endpoints only without --all-d
    assert [r["d"] for r in data["records"]] == [7, 11]


def test_verify_all_d():
    _, data = call_json("verify", "--family", "1", "--l", "3", "--m", "1", "--all-d")
    assert [r["d"] for r in data["records"]] == [7, 9, 11]


def test_tables_2_reports():
    code, data = call_json("tables", "--which", "2", "--full-max-q", "0")
    assert code == 0 and len(data["rows"]) == 9
    fields = {r["witness"].get("field") for r in data["reports"] if r["kind"] == "tableTypo"}
    assert {"header", "dimension constant"} <= fields


def test_strict_exit_codes():
    assert call("tables", "--which", "2", "--full-max-q", "0", "--strict")[0] == 1
    assert call("cosets", "--n", "17", "--q", "13", "--strict")[0] == 0
    assert call("code", "--family", "1", "--l", "3", "--m", "1", "--d", "7", "--strict")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["cosets", "--n", "17"],
        ["cosets", "--n", "26", "--q", "13"],
        ["decompose", "--n", "17", "--q", "13", "--k", "9"],
        ["code", "--family", "1", "--l", "3", "--m", "1", "--d", "8"],
        ["verify", "--family", "1", "--l", "3", "--m", "3"],
        ["sweep", "--family", "1", "--l-range", "5..3", "--m-range", "1..1"],
        ["tables", "--which", "4"],
        ["cosets", "--n", "17", "--q", "13", "--cap", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == 2


def test_csv_output():
    code, out = call("verify", "--family", "2", "--l", "7", "--m", "1", "--format", "csv", "--cap", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["d"] for r in rows] == ["9", "13"]
    assert {r["mdsVerified"] for r in rows} == {"skipped"}
    assert all(r["saturation"] == "saturated" for r in rows)


def test_text_output():
    code, out = call("verify", "--family", "1", "--l", "3", "--m", "1", "--format", "text")
    assert code == 0 and "[[17,9,7;4]]_13" in out and "DISAGREES" in out


def test_sweep_grid_with_skip():
    code, data = call_json("sweep", "--family", "1", "--l-range", "3..3", "--m-range", "1..3")
    assert code == 0
    grid = data["grid"]
    assert [g["m"] for g in grid] == [1, 2, 3]
    assert "skipped" in grid[2] and grid[0]["q"] == 13


def test_sweep_parallel_matches_serial():
    argv = ["sweep", "--family", "2", "--l-range", "7..13", "--m-range", "1..2"]
    assert call(*argv, "--jobs", "2")[1] == call(*argv)[1]


def test_selfcheck():
    code, data = call_json("selfcheck")
    assert code == 0 and all(c["pass"] for c in data["checks"])


def test_deterministic_tables():
    a = call("tables", "--which", "1", "--full-max-q", "13")[1]
    b = call("tables", "--which", "1", "--full-max-q", "13")[1]
    assert a == b

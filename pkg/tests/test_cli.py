"""End-to-end runs of the command-line interface.

Everything goes through cli.main(argv) in-process; files live in
tmp_path and stdout/stderr are captured, so these tests pin the exact
external formats: JSON documents, CSV layout, exit codes.
"""

import json
from fractions import Fraction

import pytest

from eqcube.cli import main, parse_rational, render_value, InputError
from eqcube.quotient import validate_quotient
from eqcube.recursion import TRIANGLE, build_table

PAIR_MATRIX = {"n": 3, "S": [[0, 3], [1, 2]]}
PAIR_PARTITION = {"n": 3, "m": 2, "cells": [[0, 7], [1, 2, 3, 4, 5, 6]]}
ALL1_MATRIX = {"n": 2, "S": [[1, 1], [1, 1]]}
PS_PLAIN = {"n": 2, "m": 2, "values": [[2, 0], [0, 2], [2, 0], [0, 2]]}
PS_MIXED = {"n": 2, "m": 2, "values": [[2, 0], [1, 1], [1, 1], [0, 2]]}


@pytest.fixture
def write_doc(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)
    return _write


# -- value rendering ---------------------------------------------------------

def test_render_and_parse_rational_round_trip():
    for v in (0, 7, -3, Fraction(5, 3), Fraction(-120), Fraction(24, 5)):
        assert parse_rational(render_value(v)) == Fraction(v)
    assert render_value(Fraction(24, 5)) == "24/5"
    assert render_value(-120) == "-120"


def test_parse_rational_rejects_floats():
    with pytest.raises(InputError):
        parse_rational(0.5)
    with pytest.raises(InputError):
        parse_rational(True)
    with pytest.raises(InputError):
        parse_rational("not a number")


# -- table -------------------------------------------------------------------

def test_table_json_document(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "triangle"
    assert doc["n"] == 3 and doc["m"] == 2
    assert doc["index_order"] == "i-major,k-minor"
    assert doc["entries"]["0,0,1"] == ["0", "6", "0", "0", "0", "0", "6", "12"]
    # all 20 triples of level at most 3 are present
    assert len(doc["entries"]) == 20


def test_table_max_level_zero(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path, "--max-level", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert list(doc["entries"]) == ["0,0,0"]


def test_table_interweight_kind(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path, "--kind", "interweight"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "interweight"
    # anchored normalization: one unit per cell on the diagonal
    assert doc["entries"]["0,0,0"] == ["1", "0", "0", "0", "0", "0", "0", "1"]


def test_table_csv_layout(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path, "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r1,r2,r3,i,j,k,value"
    assert len(lines) == 1 + 20 * 8
    assert lines[1] == "0,0,0,1,1,1,2"
    assert "0,0,1,1,1,2,6" in lines


def test_table_cross_check_accepts_consistent_table(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path, "--cross-check"]) == 0


def test_table_output_is_deterministic(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    main(["table", "--input", path])
    first = capsys.readouterr().out
    main(["table", "--input", path])
    assert capsys.readouterr().out == first


def test_table_json_round_trips_to_exact_values(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    main(["table", "--input", path])
    doc = json.loads(capsys.readouterr().out)
    Q = validate_quotient(PAIR_MATRIX["S"], 3)
    table = build_table(Q, TRIANGLE)
    for key, values in doc["entries"].items():
        triple = tuple(int(p) for p in key.split(","))
        assert [parse_rational(v) for v in values] == \
            list(table.entries[triple].entries)


def test_table_writes_to_file(write_doc, tmp_path, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    out = tmp_path / "table.json"
    assert main(["table", "--input", path, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["entries"]["0,0,1"][1] == "6"


def test_table_rejects_excessive_level(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["table", "--input", path, "--max-level", "9"]) == 1


# -- poly --------------------------------------------------------------------

def test_poly_prints_canonical_form(capsys):
    assert main(["poly", "--r1", "1", "--r2", "1", "--r3", "1"]) == 0
    assert capsys.readouterr().out.strip() == \
        "x*y*z - x^2 - y^2 - z^2 + 2*n"


def test_poly_single_methods_agree(capsys):
    for method in ("recursion", "direct", "genfun"):
        assert main(["poly", "--r1", "0", "--r2", "1", "--r3", "2",
                     "--method", method]) == 0
        assert capsys.readouterr().out.strip() == \
            "(y*z^2 - 2*x*z + (2-n)*y)/2"


def test_poly_specializes_dimension(capsys):
    assert main(["poly", "--r1", "0", "--r2", "0", "--r3", "2",
                 "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "(z^2 - 3)/2"


def test_poly_rejects_negative_index(capsys):
    assert main(["poly", "--r1", "-1", "--r2", "0", "--r3", "0"]) == 64


# -- screen ------------------------------------------------------------------

def test_screen_candidate_exit_zero(write_doc, capsys):
    path = write_doc("pair.json", PAIR_MATRIX)
    assert main(["screen", "--input", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "candidate"
    assert doc["first_violation"] is None
    assert doc["feasibility"]["sizes"] == ["2", "6"]


def test_screen_nonexistent_exit_two(write_doc, capsys):
    path = write_doc("bad.json", {"n": 5, "S": [[0, 5], [3, 2]]})
    assert main(["screen", "--input", path]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "nonexistent"
    assert doc["feasibility"]["ci_bound_ok"] is False
    assert doc["first_violation"] == {
        "triple": [0, 2, 2], "index": [2, 1, 1],
        "value": "-120", "reason": "negative"}
    assert doc["violations_found"] == 48


def test_screen_structural_failure(write_doc, capsys):
    path = write_doc("bad.json", {"n": 3, "S": [[1, 2], [1, 1]]})
    assert main(["screen", "--input", path]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["validation_error"]
    assert doc["levels_scanned"] == -1


# -- input failures ----------------------------------------------------------

def test_bad_json_is_usage_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["table", "--input", str(path)]) == 64


def test_missing_field_is_usage_error(write_doc, capsys):
    path = write_doc("incomplete.json", {"n": 3})
    assert main(["table", "--input", path]) == 64


def test_missing_file_is_usage_error(capsys):
    assert main(["table", "--input", "/nonexistent/file.json"]) == 64


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 64


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


# -- sweep -------------------------------------------------------------------

def test_sweep_records_and_summary(write_doc, capsys):
    assert main(["sweep", "--n-max", "5"]) == 0
    captured = capsys.readouterr()
    records = [json.loads(line) for line in captured.out.splitlines()]
    assert records == [{"n": 5, "a": 0, "b": 5, "c": 3, "d": 2,
                        "witness": [2, 3], "witness_value": "-60"}]
    assert "1 candidates, 1 with witness, 0 without" in captured.err


def test_sweep_empty_range(capsys):
    assert main(["sweep", "--n-max", "2"]) == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "0 candidates" in captured.err


def test_sweep_to_file_moves_summary_to_stdout(tmp_path, capsys):
    out = tmp_path / "sweep.jsonl"
    assert main(["sweep", "--n-max", "5", "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert "1 with witness" in captured.out
    assert json.loads(out.read_text(encoding="utf-8").splitlines()[0])[
        "witness"] == [2, 3]


# -- oracle ------------------------------------------------------------------

def test_oracle_verify_equitable(write_doc, capsys):
    path = write_doc("pair-partition.json", PAIR_PARTITION)
    assert main(["oracle", "verify", "--partition", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"equitable": True, "n": 3, "S": [[0, 3], [1, 2]]}


def test_oracle_verify_rejects_uneven_partition(write_doc, capsys):
    path = write_doc("uneven.json",
                     {"n": 2, "m": 2, "cells": [[0], [1, 2, 3]]})
    assert main(["oracle", "verify", "--partition", path]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["equitable"] is False
    assert "vertex" in doc


def test_oracle_triangle_matches_recursion_byte_for_byte(write_doc, capsys):
    mpath = write_doc("pair.json", PAIR_MATRIX)
    ppath = write_doc("pair-partition.json", PAIR_PARTITION)
    main(["table", "--input", mpath])
    recursed = capsys.readouterr().out
    main(["oracle", "triangle", "--partition", ppath])
    assert capsys.readouterr().out == recursed


def test_oracle_interweight_anchored_at_zero(write_doc, capsys):
    ppath = write_doc("pair-partition.json", PAIR_PARTITION)
    assert main(["oracle", "interweight", "--partition", ppath,
                 "--vertex", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "interweight"
    assert doc["entries"]["0,0,1"] == ["0", "3", "0", "0", "0", "0", "0", "0"]


def test_oracle_invariance_holds(write_doc, capsys):
    ppath = write_doc("pair-partition.json", PAIR_PARTITION)
    assert main(["oracle", "invariance", "--partition", ppath]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "holds"


def test_oracle_search_lists_partitions(write_doc, capsys):
    mpath = write_doc("pair.json", PAIR_MATRIX)
    assert main(["oracle", "search", "--input", mpath,
                 "--limit", "10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["complete"] is True
    assert doc["count"] == 4
    assert doc["partitions"][0][0] == [0, 7]


def test_oracle_search_with_pin(write_doc, capsys):
    mpath = write_doc("pair.json", PAIR_MATRIX)
    assert main(["oracle", "search", "--input", mpath, "--limit", "10",
                 "--pin", "0:2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 3  # vertex 0 excluded from the small cell


def test_oracle_search_rejects_malformed_pin(write_doc, capsys):
    mpath = write_doc("pair.json", PAIR_MATRIX)
    assert main(["oracle", "search", "--input", mpath,
                 "--pin", "zero=one"]) == 64


def test_oracle_ps_verify(write_doc, capsys):
    spath = write_doc("plain.json", PS_PLAIN)
    mpath = write_doc("all1.json", ALL1_MATRIX)
    assert main(["oracle", "ps-verify", "--structure", spath,
                 "--input", mpath]) == 0
    assert json.loads(capsys.readouterr().out) == {"ok": True, "vertex": None}
    bad = write_doc("bad-matrix.json", {"n": 2, "S": [[2, 0], [0, 2]]})
    assert main(["oracle", "ps-verify", "--structure", spath,
                 "--input", bad]) == 1
    assert json.loads(capsys.readouterr().out)["ok"] is False


def test_oracle_ps_table_level_zero_values(write_doc, capsys):
    spath = write_doc("mixed.json", PS_MIXED)
    mpath = write_doc("all1.json", ALL1_MATRIX)
    assert main(["oracle", "ps-table", "--structure", spath,
                 "--input", mpath, "--max-level", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["entries"]["0,0,0"] == ["10", "2", "2", "2", "2", "2", "2",
                                       "10"]


def test_oracle_ps_table_accepts_rational_strings(write_doc, capsys):
    halves = {"n": 2, "m": 2,
              "values": [["1/2", 0], [0, "1/2"], ["1/2", 0], [0, "1/2"]]}
    spath = write_doc("halves.json", halves)
    mpath = write_doc("all1.json", ALL1_MATRIX)
    assert main(["oracle", "ps-table", "--structure", spath,
                 "--input", mpath, "--max-level", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["entries"]["0,0,0"] == ["1/4", "0", "0", "0", "0", "0", "0",
                                       "1/4"]


def test_oracle_ps_table_rejects_float_values(write_doc, capsys):
    floats = {"n": 2, "m": 2,
              "values": [[0.5, 0], [0, 0.5], [0.5, 0], [0, 0.5]]}
    spath = write_doc("floats.json", floats)
    mpath = write_doc("all1.json", ALL1_MATRIX)
    assert main(["oracle", "ps-table", "--structure", spath,
                 "--input", mpath]) == 64

"""CLI subcommands: goldens, exit codes, schema validation, determinism."""

import io
import json
from contextlib import redirect_stdout

import jsonschema
import pytest

from exporamsey import schemas
from exporamsey.cli import main

from oracles import parse_dimacs


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run_cli(*argv)
    return code, json.loads(out)


def test_triples_enum_golden():
    code, data = run_json("triples", "enum", "--max", "16")
    assert code == 0
    assert len(data) == 5
    jsonschema.validate(data, schemas.TRIPLE_LIST)
    assert data[0] == {"a": "2", "b": "2", "c": "4"}
    assert data[3:] == [
        {"a": "2", "b": "4", "c": "16"},
        {"a": "4", "b": "2", "c": "16"},
    ]


def test_triples_enum_empty_and_csv():
    code, data = run_json("triples", "enum", "--max", "3")
    assert code == 0 and data == []
    code, out = run_cli("--format", "csv", "triples", "enum", "--max", "16")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a,b,c"
    assert len(lines) == 6


def test_structures_commands():
    code, data = run_json("structures", "fe1", "--seeds", "2,3,4", "--depth", "2")
    assert code == 0
    jsonschema.validate(data, schemas.LEVEL_RECORD)
    assert len(data["elements"]) == 7
    code, data = run_json("structures", "fs", "--seeds", "1,2,4")
    assert code == 0
    jsonschema.validate(data, schemas.LEVEL_RECORD)
    assert data["elements"] == [str(v) for v in range(1, 8)]
    code, data = run_json("structures", "fe2", "--seeds", "2,3,4", "--depth", "2")
    assert [e["value"] for e in data["elements"]] == [
        "2", "3", "4", "9", "16", "64", "262144",
    ]


def test_closure_command():
    code, data = run_json("closure", "--seeds", "2", "--depth", "2")
    assert code == 0
    jsonschema.validate(data, schemas.HYPERGRAPH_RECORD)
    assert [v["value"] for v in data["vertices"]] == ["2", "4", "16", "256"]
    assert data["edges"] == [[0, 0, 1], [0, 1, 2], [1, 0, 2], [1, 1, 3], [2, 0, 3]]


def test_color_solve_and_check(tmp_path):
    code, data = run_json("color", "solve", "--seeds", "2", "--depth", "2", "--k", "2")
    assert code == 0
    jsonschema.validate(data, schemas.SOLVE_RESULT)
    assert data["status"] == "SAT"
    coloring_file = tmp_path / "col.json"
    coloring_file.write_text(json.dumps(data["coloring"]))
    code, checked = run_json(
        "color", "check", "--seeds", "2", "--depth", "2",
        "--coloring", str(coloring_file),
    )
    assert code == 0
    jsonschema.validate(checked, schemas.CHECK_RESULT)
    assert checked["count"] == 0


def test_color_check_detects_monochromatic(tmp_path):
    bad = {"k": 2, "colors": {"2": 0, "4": 0, "16": 1, "256": 1}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    code, checked = run_json(
        "color", "check", "--seeds", "2", "--depth", "2", "--coloring", str(f)
    )
    assert code == 0
    assert checked["count"] == 1
    assert checked["monochromatic_edges"] == [[0, 0, 1]]


def test_color_export_cnf_golden():
    code, out = run_cli("color", "export-cnf", "--seeds", "2", "--depth", "1", "--k", "2")
    assert code == 0
    nv, clauses, varmap = parse_dimacs(out)
    assert nv == 2
    assert clauses == [[1, 2], [-1, -2]]
    assert varmap == {0: 1, 1: 2}
    assert out.endswith("\n")
    assert "\r" not in out


def test_color_rule_count_json_and_csv():
    code, data = run_json(
        "color", "rule-count", "--rule", "n % 2", "--k", "2", "--max", "30,100"
    )
    assert code == 0
    jsonschema.validate(data, schemas.COUNTS_RESULT)
    assert data["counts"][0]["total"] == 4
    code, out = run_cli(
        "--format", "csv", "color", "rule-count", "--rule", "0", "--k", "1",
        "--max", "16",
    )
    assert code == 0
    assert out.splitlines()[0] == "N,cell,count"
    assert "16,total,5" in out.splitlines()


def test_hypergraph_file_input(tmp_path):
    code, rec = run_json("closure", "--seeds", "2,3", "--depth", "1")
    f = tmp_path / "h.json"
    f.write_text(json.dumps(rec))
    code, data = run_json("color", "solve", "--hypergraph", str(f), "--k", "2")
    assert code == 0
    assert data["status"] == "SAT"


def test_ip_transform():
    code, data = run_json(
        "ip", "transform", "--op", "log", "--n", "2",
        "--lo", "1", "--hi", "16", "--members", "4,8,9",
    )
    assert code == 0
    jsonschema.validate(data, schemas.TRANSFORM_RESULT)
    assert data["result"]["members"] == ["2", "3"]


def test_ip_find_seed_and_spec_materialization():
    code, data = run_json(
        "ip", "find-seed", "--kind", "additive", "--m", "3",
        "--lo", "1", "--hi", "7", "--spec", "all",
    )
    assert code == 0
    jsonschema.validate(data, schemas.SEED_RESULT)
    assert data["witness"] == ["1", "2", "3"]
    code, data = run_json(
        "ip", "find-seed", "--kind", "multiplicative", "--m", "2",
        "--lo", "1", "--hi", "3", "--members", "1,3",
    )
    jsonschema.validate(data, schemas.SEED_RESULT)
    assert data["status"] == "found"  # fp({1,3}) = {1,3} works with 1 allowed


def test_ip_star_verdicts_and_exit_codes():
    code, data = run_json(
        "ip", "ip-star", "--kind", "additive", "--m", "2",
        "--lo", "1", "--hi", "100", "--spec", "residue:2:0",
    )
    assert code == 0
    jsonschema.validate(data, schemas.IPSTAR_RESULT)
    assert data["verdict"] == "holds"
    code, data = run_json(
        "ip", "ip-star", "--kind", "multiplicative", "--m", "2",
        "--lo", "1", "--hi", "50", "--spec", "residue:2:1",
    )
    assert code == 0
    assert data["verdict"] == "fails"
    assert data["witness"] == ["2", "4"]
    code, data = run_json(
        "--search-budget", "2", "ip", "ip-star", "--kind", "additive",
        "--m", "3", "--lo", "1", "--hi", "200", "--spec", "explicit:",
    )
    assert code == 2  # inconclusive maps to the capacity exit code
    assert data["verdict"] == "inconclusive"


def test_ip_progressions():
    code, data = run_json(
        "ip", "gp", "--length", "4", "--lo", "3", "--hi", "24",
        "--members", "3,6,12,24",
    )
    assert code == 0
    jsonschema.validate(data, schemas.GP_RESULT)
    assert data["progressions"] == [["3", "2"]]
    code, data = run_json(
        "ip", "powerprog", "--length", "3", "--lo", "2", "--hi", "27",
        "--members", "2,3,4,9,27",
    )
    assert code == 0
    jsonschema.validate(data, schemas.POWERPROG_RESULT)
    assert data["bases"] == ["3"]


def test_greedy_cli():
    code, data = run_json(
        "greedy", "fe1", "--spec", "all", "--depth", "2", "--lo", "2", "--hi", "100"
    )
    assert code == 0
    jsonschema.validate(data, schemas.GREEDY_RESULT)
    assert data["X"] == ["2", "3", "4"]
    code, data = run_json(
        "greedy", "fe1", "--spec", "residue:2:0", "--depth", "2",
        "--lo", "2", "--hi", "10000",
    )
    assert code == 0
    jsonschema.validate(data, schemas.GREEDY_RESULT)
    assert data == {"status": "failure", "step": 2, "reason": "empty intersection"}
    code, data = run_json(
        "greedy", "fegen1", "--spec", "all", "--y", "1,2,4,8",
        "--f", "constant:2", "--steps", "2",
    )
    assert code == 0
    jsonschema.validate(data, schemas.SEARCH_RESULT)
    assert data["state"]["x"] == ["1", "2"]
    code, data = run_json(
        "greedy", "verify", "--spec", "residue:2:1", "--x", "3,5", "--y", "3,5",
        "--depth", "1",
    )
    assert code == 0
    jsonschema.validate(data, schemas.FECOR_RESULT)
    verdicts = {c["name"]: c["verdict"] for c in data["checks"]}
    assert verdicts == {
        "FS(X)": "fails", "FE1(X)": "holds", "FP(Y)": "holds", "FE2(Y)": "holds",
    }


def test_exit_codes():
    code, _ = run_cli("structures", "fe1", "--seeds", "3,2", "--depth", "1")
    assert code == 1  # domain error: seeds not increasing
    huge = f"{1 << 3000},{(1 << 3000) + 1}"  # product overflows the value cap
    code, _ = run_cli("structures", "fp", "--seeds", huge)
    assert code == 2  # capacity error
    code, _ = run_cli("closure", "--seeds", "2", "--depth", "99")
    assert code == 2
    code, _ = run_cli("nonsense")
    assert code == 3
    code, _ = run_cli("triples", "enum")
    assert code == 3  # missing --max
    code, _ = run_cli("color", "rule-count", "--rule", "n %", "--k", "2", "--max", "10")
    assert code == 1  # rule syntax error is a domain error


def test_deterministic_byte_identical():
    args = ("--deterministic", "closure", "--seeds", "2,3", "--depth", "2")
    _, first = run_cli(*args)
    _, second = run_cli(*args)
    assert first == second
    args2 = ("--deterministic", "color", "solve", "--seeds", "2,3", "--depth", "2")
    _, a = run_cli(*args2)
    _, b = run_cli(*args2)
    assert a == b


def test_config_file_merge(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"search_budget": 2}))
    code, data = run_json(
        "--config", str(cfg), "ip", "find-seed", "--kind", "additive", "--m", "3",
        "--lo", "1", "--hi", "100", "--spec", "all",
    )
    assert code == 2
    assert data["status"] == "inconclusive"
    # explicit flag wins over the config file
    code, data = run_json(
        "--config", str(cfg), "--search-budget", "100000",
        "ip", "find-seed", "--kind", "additive", "--m", "3",
        "--lo", "1", "--hi", "100", "--spec", "all",
    )
    assert code == 0
    assert data["status"] == "found"


def test_threads_env_var(monkeypatch):
    monkeypatch.setenv("EXPORAMSEY_THREADS", "4")
    code, data = run_json("triples", "enum", "--max", "4")
    assert code == 0 and len(data) == 1
    monkeypatch.setenv("EXPORAMSEY_THREADS", "zero")
    code, _ = run_cli("triples", "enum", "--max", "4")
    assert code == 1

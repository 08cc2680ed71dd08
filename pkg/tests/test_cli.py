"""End-to-end tests of the command line interface."""

import json

import pytest

from coxvar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_det_text_A2(capsys):
    code, out, _ = run(capsys, "det", "A2", "--assign", "per-hyperplane")
    assert code == 0
    assert out.strip() == \
        "(1-a1^2)^2 (1-a2^2)^2 (1-a3^2)^2 (1-a1^2a2^2a3^2)^1"


def test_det_text_zagier_examples(capsys):
    code, out, _ = run(capsys, "det", "A3", "--assign", "q")
    assert code == 0 and out.strip() == "(1-q^2)^36 (1-q^6)^8 (1-q^12)^2"
    code, out, _ = run(capsys, "det", "A1", "--assign", "q")
    assert code == 0 and out.strip() == "(1-q^2)^1"


def test_det_json_schema_and_determinism(capsys):
    code, out1, err = run(capsys, "det", "B2", "--format", "json")
    assert code == 0 and err == ""
    doc = json.loads(out1)
    assert set(doc) == {"group", "weight_mode", "variables", "factors"}
    assert doc["group"] == "B2"
    assert doc["weight_mode"] == "per_hyperplane"
    assert len(doc["variables"]) == 4
    for v in doc["variables"]:
        assert set(v) == {"id", "name", "orbit"}
    for f in doc["factors"]:
        assert set(f) == {"monomial", "multiplicity", "edge"}
        assert set(f["edge"]) == {"class", "size", "coset"}
        assert len(f["monomial"]) <= f["edge"]["size"]
    # the factor list covers all 5 edges of B2
    assert len(doc["factors"]) == 5
    code, out2, _ = run(capsys, "det", "B2", "--format", "json")
    assert out2 == out1  # byte identical


def test_matrix_text_A1(capsys):
    code, out, _ = run(capsys, "matrix", "A1")
    assert code == 0
    lines = [ln.split() for ln in out.strip().splitlines()]
    assert lines == [["e", "1", "a1"], ["s1", "a1", "1"]]


def test_matrix_cap_exit_code(capsys):
    code, out, err = run(capsys, "matrix", "A5")
    assert code == 3 and out == "" and "exceeds" in err


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "det", "Q7")
    assert code == 2 and out == "" and "error" in err


def test_limit_exit_code(capsys):
    code, _, err = run(capsys, "det", "E8")
    assert code == 3 and "order" in err


def test_verify_pass_and_json(capsys):
    code, out, _ = run(capsys, "verify", "A2", "--trials", "2",
                       "--primes", "2", "--seed", "42",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "PASS"
    assert len(doc["determinant"]["records"]) == 4
    for rec in doc["determinant"]["records"]:
        assert rec["verdict"] == "PASS"
        assert set(rec) >= {"check", "group", "mode", "prime", "seed",
                            "lhs", "rhs", "verdict"}
    names = [c["check"] for c in doc["concordance"]]
    assert "zagier_single_q" in names


def test_verify_reducible_cross_check(capsys):
    code, out, _ = run(capsys, "verify", "A1xA1", "--trials", "1",
                       "--primes", "1")
    assert code == 0
    assert "reducible_product PASS" in out
    assert out.strip().endswith("PASS")


def test_multiplicity_text(capsys):
    code, out, _ = run(capsys, "multiplicity", "A2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and all("ok" in ln for ln in lines)


def test_multiplicity_json_round_trip(capsys):
    code, out, _ = run(capsys, "multiplicity", "B3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "PASS"
    assert json.loads(json.dumps(doc)) == doc
    assert all(r["l_formula"] == r["l_oracle"] for r in doc["reports"])


def test_tables_text_H3(capsys):
    code, out, _ = run(capsys, "tables", "H3")
    assert code == 0
    assert "l = 32" in out and "l = 12" in out


def test_tables_literature_display(capsys):
    code, out, _ = run(capsys, "tables", "E7")
    assert code == 0
    assert "paper value, unverified" in out
    assert "E7" in out
    code, out, _ = run(capsys, "tables", "E8", "--format", "json")
    doc = json.loads(out)
    assert doc["source"] == "paper value, unverified"
    assert len(doc["rows"]) == 14


def test_explicit_weight_file(tmp_path, capsys):
    wf = tmp_path / "weights.txt"
    wf.write_text("0 x\n1 y\n2 x\n# comment\n")
    code, out, _ = run(capsys, "det", "A2", "--assign", f"explicit:{wf}")
    assert code == 0
    assert "(1-x^2)^" in out and "y" in out


def test_explicit_weight_file_errors(tmp_path, capsys):
    wf = tmp_path / "weights.txt"
    wf.write_text("0 x\n1 y\n")  # misses reflection 2
    code, _, err = run(capsys, "det", "A2", "--assign", f"explicit:{wf}")
    assert code == 2
    wf.write_text("0 x\nnope\n")
    code, _, err = run(capsys, "det", "A2", "--assign", f"explicit:{wf}")
    assert code == 2 and "expected" in err
    code, _, err = run(capsys, "det", "A2",
                       "--assign", f"explicit:{tmp_path}/missing.txt")
    assert code == 2


def test_unknown_flag_is_parse_error(capsys):
    assert main(["det", "A2", "--bogus"]) == 2
    assert main([]) == 2

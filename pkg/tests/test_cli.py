import csv
import io
import json
import subprocess
import sys

import pytest

from nilclean.cli import TSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def tsv(text):
    return list(csv.DictReader(io.StringIO(text), delimiter="\t"))


def jsonl(text):
    return [json.loads(line) for line in text.splitlines()]


class TestClassify:
    def test_z6_factorization(self, capsys):
        code, out, _ = run(capsys, "classify", "Z6")
        assert code == 0
        (row,) = tsv(out)
        assert row["classification"] == "weakly_nil_clean_only"
        assert (row["e_nil"], row["e_z3"]) == ("3", "4")
        assert list(row) == list(TSV_COLUMNS)

    def test_z8_nil_clean(self, capsys):
        code, out, _ = run(capsys, "classify", "Z8", "--format", "json")
        assert code == 0
        (rec,) = jsonl(out)
        assert rec["class"] == "nil_clean" and rec["factorization"] is None

    def test_z5_witness(self, capsys):
        code, out, _ = run(capsys, "classify", "Z5", "--format", "json")
        (rec,) = jsonl(out)
        assert code == 0
        assert rec["class"] == "not_weakly_nil_clean" and rec["witness"] == 2
        assert set(rec) >= {"spec", "order", "class", "witness", "factorization", "millis"}

    @pytest.mark.parametrize("argv", [
        ["classify", "Z0"], ["classify", "Z3 y"], ["classify", "M3(Z3)", "--max-order", "100"],
        ["classify"], ["bogus"], ["decompose", "Z3", "3"], ["census", "--max-n", "1"],
    ])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            sys.exit(main(argv))
        assert exc.value.code == 2

    def test_timing_flag(self, capsys):
        _, out, _ = run(capsys, "classify", "M2(Z3)", "--timing", "--format", "json")
        assert jsonl(out)[0]["millis"] >= 0


class TestCensus:
    def test_max_12(self, capsys):
        code, out, _ = run(capsys, "census", "--family", "Zn", "--max-n", "12")
        rows = tsv(out)
        assert code == 0
        assert [r["spec"] for r in rows] == [f"Z{n}" for n in range(2, 13)]
        assert {int(r["order"]) for r in rows if r["nil_clean"] == "true"} == {2, 4, 8}
        assert {int(r["order"]) for r in rows if r["weakly_nil_clean"] == "true"} == \
            {2, 3, 4, 6, 8, 9, 12}

    def test_max_2(self, capsys):
        _, out, _ = run(capsys, "census", "--max-n", "2")
        (row,) = tsv(out)
        assert row["spec"] == "Z2" and row["nil_clean"] == "true"

    def test_tsv_and_json_carry_same_data(self, capsys):
        _, t, _ = run(capsys, "census", "--max-n", "20")
        _, j, _ = run(capsys, "census", "--max-n", "20", "--format", "json")
        for row, rec in zip(tsv(t), jsonl(j), strict=True):
            fact = rec["factorization"] or {}
            assert row["spec"] == rec["spec"]
            assert int(row["order"]) == rec["order"]
            assert row["classification"] == rec["class"]
            assert row["nil_clean"] == str(rec["nil_clean"]).lower()
            assert row["weakly_nil_clean"] == str(rec["weakly_nil_clean"]).lower()
            assert row["witness"] == ("" if rec["witness"] is None else str(rec["witness"]))
            assert int(row["millis"]) == rec["millis"]
            assert row["e_nil"] == str(fact.get("e_nil", ""))
            assert row["e_z3"] == str(fact.get("e_z3", ""))

    def test_reproducible_and_parallel(self, capsys, tmp_path):
        a, b, c = tmp_path / "a.tsv", tmp_path / "b.tsv", tmp_path / "c.tsv"
        assert run(capsys, "census", "--max-n", "30", "--out", str(a))[0] == 0
        assert run(capsys, "census", "--max-n", "30", "--out", str(b))[0] == 0
        assert run(capsys, "census", "--max-n", "30", "--out", str(c), "--jobs", "3")[0] == 0
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run(capsys, "census", "--max-n", "3",
                           "--out", str(tmp_path / "missing" / "x.tsv"))
        assert code == 2 and "cannot write" in err


class TestVerify:
    def test_prop1_m2z2(self, capsys):
        code, out, _ = run(capsys, "verify", "prop1", "M2(Z2)")
        assert code == 0
        rows = tsv(out)
        assert {r["check"] for r in rows} == {"involution_decompositions", "proof_chain"}
        assert all(r["violations"] == "0" for r in rows)

    def test_theorem_m2z3(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem", "M2(Z3)", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "ok"
        assert doc["class"] == "not_weakly_nil_clean" and not doc["oracle_weakly_nil_clean"]

    def test_lemma2_skipped(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma2", "Z4", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "skipped" and "2 is not a unit" in doc["reason"]

    def test_lemma2_z27(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma2", "Z27", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["quotient_order"] == 3 and len(doc["checks"]) == 4

    def test_remark(self, capsys):
        code, out, _ = run(capsys, "verify", "remark", "Z12", "--scalar-bound", "1")
        assert code == 0
        assert all(r["status"] == "ok" for r in tsv(out))

    def test_prop1_seed_changes_nothing_on_small_rings(self, capsys):
        _, a, _ = run(capsys, "verify", "prop1", "Z12", "--seed", "1")
        _, b, _ = run(capsys, "verify", "prop1", "Z12", "--seed", "2")
        assert a == b


class TestRadicalDecompose:
    def test_radical(self, capsys):
        code, out, _ = run(capsys, "radical", "Z12")
        (row,) = tsv(out)
        assert code == 0 and row["members"] == "0,6" and row["quotient_order"] == "6"

    def test_radical_json(self, capsys):
        _, out, _ = run(capsys, "radical", "Z9", "--format", "json")
        assert json.loads(out)["members"] == [0, 3, 6]

    def test_decompose_plus(self, capsys):
        code, out, _ = run(capsys, "decompose", "Z12", "7", "--signs", "plus")
        assert code == 0 and tsv(out) == [{"a": "7", "e": "1", "q": "6", "sign": "+"}]

    def test_decompose_both(self, capsys):
        _, out, _ = run(capsys, "decompose", "Z3", "2", "--signs", "both", "--format", "json")
        assert jsonl(out) == [{"a": 2, "e": 1, "q": 0, "sign": "-"}]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nilclean", "classify", "Z4 x Z3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "weakly_nil_clean_only" in proc.stdout
    bad = subprocess.run([sys.executable, "-m", "nilclean", "classify", "Z3 x"],
                         capture_output=True, text=True)
    assert bad.returncode == 2


def test_mismatch_exits_one(capsys, monkeypatch):
    import nilclean.cli as cli

    real = cli.verify_theorem

    def broken(R):
        rep = real(R)
        rep.oracle_weakly = not rep.oracle_weakly
        return rep

    monkeypatch.setattr(cli, "verify_theorem", broken)
    assert run(capsys, "classify", "Z6")[0] == 1
    assert run(capsys, "verify", "theorem", "Z6")[0] == 1

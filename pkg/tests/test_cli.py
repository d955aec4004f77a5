import json
from pathlib import Path

import pytest

from fermatdeg.cache import TraceCache
from fermatdeg.cli import main
from fermatdeg.report import EXIT_CODES

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FERMAT_CACHE_DIR", str(tmp_path / "cache"))


def test_cm(capsys):
    code, out, _ = run(capsys, "cm", "--m", "15")
    d = json.loads(out)
    assert code == 0
    assert [f["label"] for f in d["factors"]] == ["X", "J5", "J3"]
    assert d["factors"][0]["cmType"] == [1, 2, 4, 7]
    assert d["factors"][0]["reflexType"] == sorted(d["factors"][0]["reflexType"])


def test_cm_table(capsys):
    code, out, _ = run(capsys, "cm", "--m", "9", "--table")
    assert code == 0 and "Q(zeta_9)" in out
    assert all(line == line.rstrip() for line in out.splitlines())


def test_mt(capsys):
    code, out, _ = run(capsys, "mt", "--m", "21", "--matrix")
    d = json.loads(out)
    verdicts = {"+".join(v["target"]): v["verdict"] for v in d["verdicts"]}
    assert verdicts["X"] == "NEITHER" and verdicts["X+J3"] == "ISOMORPHISM"
    assert d["mtRank"] == 7 and len(d["matrix"]) == 12
    code, out, _ = run(capsys, "mt", "--m", "15", "--target", "X", "--method", "kernel")
    assert json.loads(out)["verdicts"][0]["verdict"] == "ISOGENY(2)"


def test_mt_unknown_label_exit_code(capsys):
    code, _, err = run(capsys, "mt", "--m", "15", "--target", "Y")
    assert code == EXIT_CODES["mt"] and "LEDGER_MISMATCH" in err


def test_invalid_modulus_exit_code(capsys):
    code, _, err = run(capsys, "cm", "--m", "12")
    assert code == EXIT_CODES["cm"]


def test_hodge(capsys):
    code, out, _ = run(capsys, "hodge", "--m", "9", "--codim", "2", "--embedding")
    d = json.loads(out)
    assert d["codim"]["exceptional"] == ["(1,4|2,3)", "(2,3|1,4)"]
    assert d["codim"]["quotientDim"] == 2
    assert d["torus"]["freeRank"] == 3
    code, _, err = run(capsys, "hodge", "--m", "9", "--codim", "7")
    assert code == EXIT_CODES["hodge"]


def test_st_moments(capsys):
    code, out, _ = run(capsys, "st-moments", "--m", "9", "--max-n", "6", "--with-gamma")
    d = json.loads(out)
    assert [d["tables"][0]["moments"][k] for k in ("2", "4", "6")] == [8, 216, 8000]
    assert [d["tables"][1]["moments"][k] for k in ("2", "4", "6")] == [2, 38, 1340]


def test_sweep_writes_default_cache(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--m", "9", "--bound", "200")
    assert code == 0 and json.loads(out)["traces"]["19"] == -8
    c = TraceCache.load(tmp_path / "cache" / "traces-m9.txt", 9)
    assert c.get(19) == -8 and c.get(7) == 4


def test_num_moments(capsys):
    code, out, _ = run(capsys, "num-moments", "--m", "9", "--bound", "5000", "--max-n", "4", "--no-cache")
    d = json.loads(out)
    assert code == 0 and d["selector"] == "ALL" and d["moments"]["0"] == 1.0


def test_split_density(capsys):
    code, out, _ = run(capsys, "split-density", "--m", "15", "--bound", "3000")
    d = json.loads(out)
    assert code == 0 and d["splitPrimes"] >= d["torsionFree"] > 0


def test_cache_merge(capsys, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("#fermat-trace-cache v1 m=9\n5 0\n")
    b.write_text("#fermat-trace-cache v1 m=9\n7 4\n")
    code, out, _ = run(capsys, "cache-merge", str(a), str(b))
    assert code == 0 and out == "#fermat-trace-cache v1 m=9\n5 0\n7 4\n"
    b.write_text("#fermat-trace-cache v1 m=9\n5 2\n")
    code, _, err = run(capsys, "cache-merge", str(a), str(b))
    assert code == EXIT_CODES["cache"] and "p=5" in err


def test_json_and_table_exclusive():
    with pytest.raises(SystemExit):
        main(["cm", "--m", "9", "--json", "--table"])


@pytest.mark.parametrize("m", [9, 15])
def test_analyze_golden(capsys, m):
    code, out, _ = run(capsys, "analyze", "--m", str(m), "--max-moment", "8")
    assert code == 0
    golden = GOLDEN / f"analyze_m{m}.json"
    assert json.loads(out) == json.loads(golden.read_text())
    # the byte stream is stable too
    assert out == golden.read_text()


def test_analyze_output_file(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    code, out, _ = run(capsys, "analyze", "--m", "9", "--max-moment", "4", "--table", "--output", str(dest))
    assert code == 0 and out == ""
    assert "ISOMORPHISM" in dest.read_text()

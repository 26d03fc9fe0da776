import csv
import io
import json
import subprocess
import sys
from decimal import Decimal

import pytest

from scoreseq import egz
from scoreseq.cache import checksum, load
from scoreseq.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_egz_single():
    assert run("egz", "--n", "6") == (0, "76\n")


def test_egz_table_csv():
    code, text = run("egz", "--upto", "3", "--format", "csv")
    assert code == 0
    assert rows(text) == [["n", "N_n"], ["1", "1"], ["2", "1"], ["3", "4"]]


@pytest.mark.parametrize("argv", [
    ("egz", "--n", "0"),
    ("egz",),
    ("egz", "--n", "3", "--upto", "4"),
    ("lambda", "--terms", "5"),
    ("verify", "--max-oracle", "20"),
    ("sample", "--n", "41"),
    ("converge", "--grid", "a,b"),
    ("egz", "--n", "3", "--format", "xml"),
    ("nonsense",),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 1


def test_scores_upto_zero():
    assert rows(run("scores", "--upto", "0")[1]) == [["n", "S_n"], ["0", "1"]]


def test_scores_upto_twelve_matches_enumeration():
    from scoreseq.oracle import enumerate_scores
    table = rows(run("scores", "--upto", "12")[1])[1:]
    for n in range(1, 13):
        assert int(table[n][1]) == len(enumerate_scores(n))


def test_decomp_six():
    code, text = run("decomp", "--n", "6")
    assert code == 0
    table = rows(text)
    assert table[0] == ["m", "S_nm", "prob"]
    assert [(r[0], r[1]) for r in table[1:]] == [
        ("1", "7"), ("2", "7"), ("3", "3"), ("4", "4"), ("5", "0"), ("6", "1")]
    assert table[1][2] == "0.318181818182"


def test_decomp_truncated_tail_row():
    table = rows(run("decomp", "--n", "10", "--m-max", "3")[1])
    assert table[-1][0] == ">3"
    from scoreseq.scores import count_scores
    assert sum(int(r[1]) for r in table[1:]) == count_scores(10)[10]


def test_lambda_command():
    code, text = run("lambda", "--terms", "100")
    assert code == 0
    record = dict(zip(*rows(text)))
    assert Decimal("0.330235") <= Decimal(record["lo"])
    assert Decimal(record["hi"]) <= Decimal("0.33024")
    assert record["partial_sum"].startswith("0.3300510246")


def test_constants_command():
    code, text = run("constants", "--terms", "100", "--format", "json")
    assert code == 0
    data = {r["name"]: r for r in json.loads(text)}
    assert set(data) == {"e_lambda", "takacs", "inv_e_lambda", "strong_frac",
                         "strong_takacs", "nb_mean", "nb_variance"}
    assert Decimal(data["takacs"]["lo"]).quantize(Decimal("0.001")) == Decimal("0.392")
    assert all(isinstance(v, str) for r in data.values() for v in r.values())


def test_converge_small_grid():
    code, text = run("converge", "--grid", "50,100,200")
    assert code == 0
    table = rows(text)
    gaps = [Decimal(r[2]) for r in table[1:]]
    assert gaps[0] > gaps[1] > gaps[2]


def test_dist_limit():
    code, text = run("dist", "--n", "6", "--limit")
    assert code == 0
    table = rows(text)
    assert table[0] == ["m", "S_nm", "prob", "nb_lo", "nb_hi"]
    assert len(table) == 7
    assert Decimal(table[1][3]) <= Decimal("0.5167") and Decimal(table[1][4]) >= Decimal("0.5166")


def test_sample():
    assert run("sample", "--n", "2", "--count", "3", "--seed", "7") == (0, "0 1\n0 1\n0 1\n")


def test_sample_deterministic():
    first = run("sample", "--n", "20", "--count", "50", "--seed", "99")
    assert first == run("sample", "--n", "20", "--count", "50", "--seed", "99")


def test_output_determinism():
    for argv in (("converge", "--grid", "10,20"), ("dist", "--n", "30", "--limit"),
                 ("export", "--kind", "tournament", "--upto", "20")):
        assert run(*argv) == run(*argv)


def test_json_big_integers_are_strings():
    code, text = run("scores", "--upto", "100", "--format", "json")
    data = json.loads(text)
    assert all(isinstance(r["S_n"], str) for r in data)
    assert int(data[100]["S_n"]) > 2**53


def test_export_json_document():
    code, text = run("export", "--kind", "egz", "--upto", "6", "--format", "json")
    doc = json.loads(text)
    assert doc["values"] == ["1", "1", "4", "9", "26", "76"]
    assert doc["checksum"] == checksum(doc["values"])
    assert doc["kind"] == "egz" and doc["n_max"] == 6 and doc["version"] == 1


def test_cache_round_trip(tmp_path):
    first = run("scores", "--upto", "40", "--cache-dir", str(tmp_path))
    assert load("scores", tmp_path) is not None
    stamp = (tmp_path / "scores.json").stat().st_mtime_ns
    assert run("scores", "--upto", "40", "--cache-dir", str(tmp_path)) == first
    assert (tmp_path / "scores.json").stat().st_mtime_ns == stamp
    # shorter prefixes come from the same file
    assert run("scores", "--upto", "10", "--cache-dir", str(tmp_path))[1] == \
        run("scores", "--upto", "10")[1]


def test_corrupt_cache_is_recomputed(tmp_path):
    expected = run("scores", "--upto", "30")
    run("scores", "--upto", "30", "--cache-dir", str(tmp_path))
    path = tmp_path / "scores.json"
    doc = json.loads(path.read_text())
    doc["values"][30] = "12345"  # tamper without fixing the checksum
    path.write_text(json.dumps(doc))
    assert load("scores", tmp_path) is None
    assert run("scores", "--upto", "30", "--cache-dir", str(tmp_path)) == expected
    assert load("scores", tmp_path) is not None


def test_garbage_cache_file(tmp_path):
    (tmp_path / "egz.json").write_text("not json")
    assert run("egz", "--n", "6", "--cache-dir", str(tmp_path)) == (0, "76\n")


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SCORESEQ_CACHE_DIR", str(tmp_path / "env"))
    run("egz", "--upto", "12")
    assert (tmp_path / "env" / "egz.json").exists()
    run("egz", "--upto", "12", "--cache-dir", str(tmp_path / "flag"))
    assert (tmp_path / "flag" / "egz.json").exists()


def test_verify_passes():
    code, text = run("verify", "--upto", "60")
    assert code == 0
    assert all(line.startswith("PASS ") for line in text.splitlines())
    assert len(text.splitlines()) == 11


def test_verify_detects_sign_flip(monkeypatch):
    original = egz._signed_term
    monkeypatch.setattr(egz, "_signed_term",
                        lambda n, d: -original(n, d) if d == n else original(n, d))
    code, text = run("verify", "--upto", "30")
    assert code == 2
    assert "FAIL egz-divisibility" in text


def test_console_entry_point():
    result = subprocess.run([sys.executable, "-m", "scoreseq", "egz", "--n", "6"],
                            capture_output=True, text=True, check=False)
    assert result.returncode == 0 and result.stdout == "76\n"

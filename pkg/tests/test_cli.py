import json
import subprocess
import sys

import pytest

from youngcrystal.cli import main, run, UsageError


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_crystal_dot(capsys):
    code, out, _ = call(capsys, "crystal", "--n", "2", "--r", "4", "--format", "dot")
    assert code == 0
    assert out.count("label=") == 10
    assert out.count("->") == 8


def test_crystal_json(capsys):
    code, out, _ = call(capsys, "crystal", "--n", "3", "--r", "6", "--format", "json")
    nodes = json.loads(out)["nodes"]
    assert code == 0 and len(nodes) == 35
    assert len({v["component"] for v in nodes}) == 5


def test_no_builtin_seed(capsys):
    code, _, err = call(capsys, "crystal", "--n", "5", "--r", "7")
    assert code == 2
    assert "no builtin seed" in err


def test_usage_errors(capsys):
    assert call(capsys, "crystal", "--n", "2")[0] == 2
    assert call(capsys, "crystal", "--n", "2", "--r", "4", "--format", "csv")[0] == 2
    assert call(capsys, "character", "--n", "3", "--r-min", "9", "--r-max", "5")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    with pytest.raises(UsageError):
        run(["verify", "recursions", "--n", "7", "--r-max", "9"])


def test_character(capsys):
    code, out, _ = call(capsys, "character", "--n", "3", "--r", "6")
    assert (code, out) == (0, "[13] + [9] + [7] + [5] + [1]\n")


def test_character_parallel_is_identical(capsys, monkeypatch):
    monkeypatch.setenv("YOUNGCRYSTAL_JOBS", "1")
    one = call(capsys, "character", "--n", "4", "--r-max", "14")[1]
    many = call(capsys, "character", "--n", "4", "--r-max", "14", "--jobs", "3")[1]
    assert one == many
    assert one.startswith("r=4: [5]\n")


def test_coeff(capsys):
    code, out, _ = call(capsys, "coeff", "--n", "2", "--r", "4")
    assert out == "n,r,k,coefficient\n2,4,2,1\n2,4,6,1\n"
    code, out, _ = call(capsys, "coeff", "--n", "2", "--r", "4", "--k", "3", "--format", "text")
    assert out == "0\n"


def test_constituents_flags_warnings(capsys):
    code, out, _ = call(capsys, "constituents", "--n", "3", "--r-min", "6", "--r-max", "6")
    assert code == 0
    assert out.splitlines()[1] == "3,6,5,5,6,warn"


def test_scd(capsys, tmp_path):
    target = tmp_path / "chains.json"
    code, out, _ = call(capsys, "scd", "--n", "2", "--m", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert [len(c) for c in data["chains"]] == [7, 3]


def test_verify_targets(capsys):
    assert call(capsys, "verify", "axioms", "--n", "3", "--r-max", "10")[0] == 0
    assert call(capsys, "verify", "seed", "--n", "4", "--r-max", "12")[0] == 0
    code, out, _ = call(capsys, "verify", "recursions", "--n", "4", "--r-max", "100")
    assert code == 0 and out.startswith("PASS")


def test_verify_printed_claims_target(capsys):
    code, out, _ = call(capsys, "verify", "paper-claims", "--n", "3", "--r-max", "20")
    assert code == 0
    assert "(2 warnings)" in out.splitlines()[0]
    assert out.count("  warning:") == 2


def test_verify_failure_exit_code(capsys, tmp_path):
    seed = tmp_path / "s5.seed"
    seed.write_text("seed n = 5\ninitial: e5 == 0\nclass a: e1 ≡ 0 mod 1 -> offset (0, 1, 2, 3, 4)\n")
    code, out, _ = call(capsys, "verify", "seed", "--n", "5", "--r-max", "7", "--seed-file", str(seed))
    assert code == 1 and out.startswith("FAIL")


def test_bad_seed_file_is_usage_error(capsys, tmp_path):
    seed = tmp_path / "bad.seed"
    seed.write_text("seed n = 2\ninitial: e2 == 0\n")
    code, _, err = call(capsys, "crystal", "--n", "2", "--r", "4", "--seed-file", str(seed))
    assert code == 2 and "line 3" in err


def test_bench_small(capsys):
    code, out, _ = call(capsys, "bench", "--n", "3", "--r", "20", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["axioms"] == "pass" and data["character"] == "match"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "youngcrystal", "character", "--n", "2", "--r", "4"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout == "[7] + [3]\n"

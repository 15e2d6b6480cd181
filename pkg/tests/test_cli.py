import csv
import io
import json
import math
import subprocess
import sys

import pytest

from lobbying.cli import main
from lobbying.io import instance_to_dict, serialize_instance
from lobbying.model import example1


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_eval_builtin(capsys):
    code, out = run(capsys, "eval", "example1", "--criterion", "am")
    assert code == 0 and json.loads(out)["outcome"] == "100"


def test_solve_builtin(capsys):
    code, out = run(capsys, "solve", "example1", "--method", "mb", "--criterion", "sm")
    doc = json.loads(out)
    assert code == 0 and doc["min_cost"] == 245 and doc["feasible"]


def test_solve_short_budget_exits_one(capsys):
    code, out = run(capsys, "solve", "example1", "--method", "mb", "--criterion", "sm", "--budget", "100")
    assert code == 1 and json.loads(out)["min_cost"] == 245


def test_overrides_reach_solver(capsys):
    code, out = run(capsys, "solve", "example1", "--method", "vb", "--criterion", "am",
                    "--threshold", "3/5", "--comparison", "weak")
    assert json.loads(out)["min_cost"] == 210


def test_unwinnable_exits_one(capsys):
    code, out = run(capsys, "solve", "example1", "--method", "ib", "--criterion", "am", "--threshold", "1")
    assert code == 1 and json.loads(out)["unwinnable_issue"] is not None


def test_validate_file(tmp_path, capsys):
    path = tmp_path / "ex.json"
    path.write_text(serialize_instance(example1()))
    assert run(capsys, "validate", str(path))[0] == 0


def test_validate_nonmonotone_file(tmp_path, capsys):
    doc = instance_to_dict(example1())
    doc["costs"][0][1][5] = 5
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", str(path))
    assert code == 2 and json.loads(out)["error"] == "NonMonotoneCost"


def test_missing_file_exits_two(capsys):
    assert run(capsys, "validate", "/nonexistent/x.json")[0] == 2


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "example1", "--method", "xb", "--criterion", "sm"])
    assert info.value.code == 2


def test_exact_requires_micro(capsys):
    code, _ = run(capsys, "solve", "example1", "--method", "vb", "--criterion", "sm", "--exact")
    assert code == 2


def test_greedy(capsys):
    code, out = run(capsys, "greedy", "example1", "--criterion", "am", "--threshold", "3/5", "--comparison", "weak")
    doc = json.loads(out)
    assert code == 0 and doc["total_cost"] == 240 and doc["cover_number"] == 5


def test_oracle_weighted_and_exact(tmp_path, capsys):
    code, out = run(capsys, "gen", "--reduction", "knapsack", "--weights", "2,3", "--profits", "3,4",
                    "--capacity", "5", "--goal", "7")
    path = tmp_path / "k.json"
    path.write_text(out)
    assert run(capsys, "oracle", str(path), "--method", "mb", "--criterion", "sm", "--weighted")[0] == 0
    assert run(capsys, "solve", str(path), "--method", "ib", "--criterion", "sm", "--weighted")[0] == 0

    code, out = run(capsys, "gen", "--reduction", "subsetsum", "--values", "4,6", "--target", "5")
    path.write_text(out)
    assert run(capsys, "oracle", str(path), "--method", "mb", "--criterion", "sm", "--exact")[0] == 1
    assert run(capsys, "solve", str(path), "--method", "mb", "--criterion", "sm", "--exact")[0] == 1


def test_gen_random_is_deterministic(capsys):
    a = run(capsys, "gen", "--seed", "7", "--m", "2", "--n", "3", "--k", "2")[1]
    b = run(capsys, "gen", "--seed", "7", "--m", "2", "--n", "3", "--k", "2")[1]
    assert a == b and len(json.loads(a)["probabilities"]) == 2


def test_gen_ol_and_missing_args(capsys):
    code, out = run(capsys, "gen", "--reduction", "ol", "--matrix", "00,01,10", "--b", "1")
    assert code == 0 and json.loads(out)["budget"] == 2
    assert run(capsys, "gen", "--reduction", "subsetsum", "--values", "1,2")[0] == 2


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_bench_csv(capsys, jobs):
    code, out = run(capsys, "bench", "--seed", "3", "--count", "12", "--criterion", "sm", "--jobs", jobs)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["index"]) for r in rows] == list(range(12))
    for r in rows:
        if r["status"] != "ok":
            continue
        assert r["within_bound"] == "True"
        assert float(r["ratio"]) <= float(r["bound"]) + 1e-6
        assert math.isclose(float(r["bound"]), math.log(max(int(r["cover_number"]), 1)) + 1, rel_tol=1e-6)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lobbying", "eval", "example1", "--criterion", "sm"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["outcome"] == "000"

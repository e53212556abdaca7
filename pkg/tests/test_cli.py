import csv
import io
import json
import subprocess
import sys

import pytest

from hailstone import REGISTRY, family_term, predicted_steps, stopping_count, trajectory
from hailstone.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_steps_golden():
    assert run("steps", "27") == (0, "111\n", "")


def test_steps_json_and_csv():
    code, out, _ = run("steps", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"n": 1, "steps": 3, "convention": "paper"}
    code, out, _ = run("steps", "1", "--convention", "standard", "--format", "csv")
    assert list(csv.DictReader(io.StringIO(out))) == [{"n": "1", "steps": "0", "convention": "standard"}]


@pytest.mark.parametrize("n", [1, 6, 27, 97, 871])
def test_traj_matches_library(n):
    code, out, _ = run("traj", str(n), "--format", "json")
    t = trajectory(n)
    assert code == 0
    assert json.loads(out) == {"n": n, "steps": t.steps, "values": list(t.values), "peak": t.peak, "converged": True}


def test_traj_text():
    assert run("traj", "6")[1] == "6 3 10 5 16 8 4 2 1\n"


def test_traj_budget_is_domain_error():
    code, out, err = run("traj", "27", "--budget", "10")
    assert code == 1 and "did not reach 1" in err


def test_family_b():
    code, out, _ = run("family", "b", "--count", "5", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert [r["term"] for r in payload["terms"]] == [3, 13, 53, 213, 853]
    assert all(r["predicted"] == r["oracle"] for r in payload["terms"])


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_family_matches_library(name):
    spec = REGISTRY[name]
    _, out, _ = run("family", name, "--count", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["index", "term", "predicted", "oracle"]
    for n, row in enumerate(rows):
        term = family_term(spec, n)
        assert int(row["term"]) == term
        assert int(row["predicted"]) == predicted_steps(spec, n)
        assert int(row["oracle"]) == stopping_count(term)


def test_family_count_and_index_exclusive():
    code, _, err = run("family", "a", "--count", "3", "--index", "2")
    assert code == 2 and "not allowed" in err


def test_family_index():
    _, out, _ = run("family", "g", "--index", "3", "--format", "json")
    assert json.loads(out)["terms"] == [{"index": 3, "term": 1237, "predicted": 26, "oracle": 26}]


def test_usage_errors():
    assert run("bogus")[0] == 2
    assert run("steps")[0] == 2
    assert run("steps", "0")[0] == 2
    assert run("steps", "5", "--nope")[0] == 2
    assert run("verify", "--start", "9", "--end", "3")[0] == 2
    assert run("family", "q")[0] == 2


def test_domain_errors():
    assert run("decompose", "10")[0] == 1
    assert run("steps", str((1 << 120) - 1))[0] == 1
    assert run("steps", "27", "--budget", "5")[0] == 1
    assert run("general", "4")[0] == 1
    assert run("seedsearch", "a", "--depth", "1")[0] == 1


def test_decompose():
    code, out, _ = run("decompose", "7", "--format", "json")
    assert json.loads(out) == {"n": 7, "pairs": [[1, 11], [1, 17], [2, 13], [3, 5], [4, 1]], "k": 5, "steps": 16}
    _, out, _ = run("decompose", "3", "--format", "csv")
    assert out.splitlines() == ["i,s,b", "1,1,5", "2,4,1"]


def test_parametric_and_general():
    _, out, _ = run("parametric", "D", "--k", "2", "--count", "2", "--format", "json")
    assert [r["term"] for r in json.loads(out)["terms"]] == [3, 13]
    _, out, _ = run("general", "1", "--count", "6", "--format", "json")
    assert [r["term"] for r in json.loads(out)["terms"]] == [1, 5, 21, 85, 341, 1365]


def test_big_numbers_not_truncated():
    _, out, _ = run("general", "7", "--count", "60", "--format", "json")
    last = json.loads(out)["terms"][-1]["term"]
    assert last == ((3 * 7 + 1) * 4**59 - 1) // 3


def test_seedsearch():
    _, out, _ = run("seedsearch", "e", "--exclude", "9", "--format", "json")
    assert json.loads(out) == {"family": "e", "beta": 58, "next_seed": 19, "source_term": 29, "exponent": 1}


def test_roots():
    _, out, _ = run("roots", "85", "469", "9", "--format", "csv")
    assert out.splitlines() == ["value,root,index", "85,1,3", "469,7,3", "9,9,0"]


def test_verify_json():
    code, out, _ = run("verify", "--start", "1", "--end", "11", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["range"] == [1, 11] and d["max_steps"] == [9, 19] and d["all_converged"]
    assert d["convention"] == "paper" and "duration_ms" in d and d["identity_failures"] == []


def test_identities_and_partition():
    assert run("identities", "--max-k", "1000")[0] == 0
    code, out, _ = run("partition", "--max-odd", "85", "--format", "json")
    assert code == 0 and json.loads(out)["identity_failures"] == []
    assert run("decomposition", "--max-odd", "999")[0] == 0


def test_identities_failure_exit_code():
    code, out, _ = run("identities", "--max-k", "10", "--convention", "standard", "--format", "json")
    assert code == 1
    assert json.loads(out)["identity_failures"]


def test_memo_build_and_use(tmp_path):
    path = str(tmp_path / "t.czmt")
    assert run("memo-build", "--limit", "1000", "--cache", path)[0] == 0
    assert run("steps", "27", "--cache", path) == (0, "111\n", "")
    code, _, err = run("steps", "27", "--cache", path, "--convention", "standard")
    assert code == 1 and "convention" in err
    assert run("memo-build", "--limit", "10")[0] == 1
    assert run("steps", "3", "--cache", str(tmp_path / "missing"))[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hailstone", "steps", "437"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "115\n"

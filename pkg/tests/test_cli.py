"""End-to-end checks of the command line interface."""

from __future__ import annotations

import io
import json
from contextlib import redirect_stderr, redirect_stdout


from excursionkit.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestBasics:
    def test_count_example(self):
        code, out, _ = run_cli("count", "--levels", "1,2,1")
        assert code == 0
        assert json.loads(out) == {"count": "2"}

    def test_count_csv(self):
        code, out, _ = run_cli("--format", "csv", "count", "--levels", "1,2,1")
        assert code == 0
        assert out.splitlines() == ["levels,count", "1|2|1,2"]

    def test_height_example(self):
        code, out, _ = run_cli("height", "--law", "homog:0.5", "--s", "4", "--kind", "tail")
        assert code == 0
        assert json.loads(out) == {"value": "1/4"}

    def test_height_unique(self):
        code, out, _ = run_cli("height", "--law", "homog:0.5", "--s", "3", "--kind", "unique")
        assert json.loads(out) == {"value": "1/18"}

    def test_validate_rejects_interior_zero(self):
        code, out, err = run_cli("validate", "--jumps", "1,-1,1,-1")
        assert code == 1
        assert out == ""
        error = json.loads(err)["error"]
        assert error["type"] == "NotAnExcursion"
        assert error["reason"] == "interior-zero"

    def test_validate_accepts(self):
        code, out, _ = run_cli("validate", "--jumps", "1,1,-1,-1")
        data = json.loads(out)
        assert data["valid"] and data["values"] == "0 1 2 1 0"
        assert data["height"] == 2 and data["sign"] == "positive"

    def test_individuals_and_levels(self):
        code, out, _ = run_cli("individuals", "--jumps", "1,1,-1,1,-1,-1")
        rows = json.loads(out)
        assert [(r["birth"], r["level"], r["death"]) for r in rows] == [
            (0, 0, 6), (1, 1, 3), (3, 1, 5),
        ]
        code, out, _ = run_cli("levels", "--jumps", "1,1,-1,1,-1,-1")
        assert json.loads(out) == {"counts": [1, 2], "total": 3, "height": 2}

    def test_tree(self):
        code, out, _ = run_cli("tree", "--jumps", "1,1,-1,1,1,-1,-1,-1")
        assert json.loads(out) == [[], [[]]]

    def test_enumerate(self):
        code, out, _ = run_cli("enumerate", "--levels", "1,2,1")
        rows = json.loads(out)
        assert {r["values"] for r in rows} == {
            "0 1 2 3 2 1 2 1 0", "0 1 2 1 2 3 2 1 0",
        }

    def test_usage_error_exits_2(self):
        code, _, err = run_cli("prob", "--law", "homog:0.5")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "ValueError"


class TestTransforms:
    def test_reverse(self):
        code, out, _ = run_cli("transform", "--jumps", "1,1,1,-1,-1,1,-1,-1", "--op", "reverse")
        assert json.loads(out)["values"] == "0 1 2 1 2 3 2 1 0"

    def test_shift_with_permutation(self):
        code, out, _ = run_cli(
            "transform", "--jumps", "1,1,1,-1,-1,1,-1,-1", "--shift", "1,5,7,1"
        )
        data = json.loads(out)
        assert data["values"] == "0 1 2 1 2 3 2 1 0"
        assert sorted(data["permutation"]) == [0, 1, 2, 3]

    def test_shift_out_of_domain_exits_1(self):
        code, _, err = run_cli(
            "transform", "--jumps", "1,1,-1,-1", "--shift", "0,4,4,1"
        )
        assert code == 1
        assert json.loads(err)["error"]["type"] == "OutOfDomain"

    def test_shift_seq(self):
        code, out, _ = run_cli(
            "shift-seq",
            "--jumps", "1,1,1,-1,-1,1,-1,-1",
            "--target", "1,1,-1,1,1,-1,-1,-1",
        )
        data = json.loads(out)
        assert data["length"] == len(data["ops"]) >= 1

    def test_shift_seq_mismatch(self):
        code, _, err = run_cli(
            "shift-seq", "--jumps", "1,-1", "--target", "1,1,-1,-1"
        )
        assert code == 1
        assert json.loads(err)["error"]["type"] == "LevelNumbersMismatch"


class TestProbability:
    def test_excursion_prob(self):
        code, out, _ = run_cli("prob", "--law", "homog:0.6", "--jumps", "1,-1")
        assert json.loads(out) == {"value": "3/5"}

    def test_class_prob(self):
        code, out, _ = run_cli("prob", "--law", "homog:0.5", "--levels", "1,2,1")
        assert json.loads(out) == {"value": "1/64"}

    def test_conditional(self):
        code, out, _ = run_cli(
            "prob", "--law", "homog:0.3", "--jumps", "1,-1", "--conditional"
        )
        assert json.loads(out) == {"value": "7/20"}

    def test_inline_law_json(self):
        law = json.dumps(
            {"K": 0, "p": {"0": "1/2"}, "p_plus": "1/2", "p_minus": "1/2"}
        )
        code, out, _ = run_cli("prob", "--law", law, "--jumps", "1,-1")
        assert json.loads(out) == {"value": "1/2"}

    def test_law_file(self, tmp_path):
        path = tmp_path / "law.json"
        path.write_text(json.dumps(
            {"K": 0, "p": {"0": "3/5"}, "p_plus": "3/5", "p_minus": "3/5"}
        ))
        code, out, _ = run_cli("height", "--law", str(path), "--s", "1")
        assert json.loads(out) == {"value": "2/3"}  # beta_1 = q/p

    def test_doob(self):
        code, out, _ = run_cli("doob", "--law", "homog:0.3")
        law = json.loads(out)
        assert law["p"]["0"] == "1/2"
        assert law["p_minus"] == "7/10"


class TestSample:
    def test_deterministic_output(self):
        args = ("sample", "--law", "homog:0.3", "--n", "4000", "--event", "H>=2",
                "--seed", "99")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first == second
        report = json.loads(first[1])
        assert abs(report["z"]) <= 4
        assert report["exact"] == 0.3

    def test_worker_count_invariant(self):
        base = run_cli("sample", "--law", "homog:0.3", "--n", "3001",
                       "--event", "positive", "--seed", "5")
        multi = run_cli("sample", "--law", "homog:0.3", "--n", "3001",
                        "--event", "positive", "--seed", "5", "--workers", "4")
        assert json.loads(base[1])["estimate"] == json.loads(multi[1])["estimate"]

    def test_env_seed_fallback(self, monkeypatch):
        monkeypatch.setenv("EXK_SEED", "1234")
        a = run_cli("sample", "--law", "homog:0.3", "--n", "500", "--event", "true")
        monkeypatch.setenv("EXK_SEED", "4321")
        b = run_cli("sample", "--law", "homog:0.3", "--n", "500", "--event", "positive")
        assert json.loads(a[1])["estimate"] == 1.0
        assert 0 < json.loads(b[1])["estimate"] < 1

    def test_unknown_event_is_usage_error(self):
        code, _, err = run_cli("sample", "--law", "homog:0.3", "--n", "10",
                               "--event", "H=>3")
        assert code == 2


class TestVerify:
    def test_verify_subset_passes(self):
        code, out, _ = run_cli("verify", "--only", "2,9")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert all(line.startswith("PASS") for line in lines)

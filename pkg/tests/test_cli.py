import json

import pytest

from tugx.cli import main
from tugx.games import Game
from tugx.io import render_game_text


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_outputs_json(capsys, fixture_dir):
    code, out, err = run(capsys, "solve", str(fixture_dir / "duo.json"), "-s", "shapley")
    assert code == 0 and not err
    payload = json.loads(out)
    assert payload["solution"] == "shapley"
    assert payload["payoffs"] == {"1": 4.0, "2": 2.0}
    assert payload["total"] == 6.0


def test_solve_structured_solutions(capsys, fixture_dir):
    trio = str(fixture_dir / "trio.json")
    code, out, _ = run(capsys, "solve", trio, "-s", "myerson")
    assert code == 0
    assert json.loads(out)["payoffs"] == {"1": 0.5, "2": 0.5, "3": 0.0}
    code, out, _ = run(capsys, "solve", trio, "-s", "ee-ad")
    assert code == 0
    assert json.loads(out)["total"] == 3.0


def test_solve_wrapped_and_anchored(capsys, tmp_path, fixture_dir):
    duo = str(fixture_dir / "duo.json")
    code, out, _ = run(capsys, "solve", duo, "-s", "weighted:0.5[standalone]")
    assert code == 0
    assert json.loads(out)["payoffs"] == {"1": 5.0, "2": 1.0}
    anchor = tmp_path / "anchor.json"
    anchor.write_text(
        render_game_text(
            Game.from_table([1, 2], {(1,): 1.0, (2,): 3.0, (1, 2): 0.0})
        )
    )
    code, out, _ = run(
        capsys, "solve", duo, "-s", "anchored-ess[standalone]", "--anchor", str(anchor)
    )
    assert code == 0
    assert json.loads(out)["payoffs"] == {"1": 3.0, "2": 3.0}
    # anchored spellings without --anchor are a usage error
    code, _, err = run(capsys, "solve", duo, "-s", "anchored-ess[standalone]")
    assert code == 2 and "anchor" in err


def test_solve_with_operator_shows_surplus(capsys, fixture_dir):
    duo = str(fixture_dir / "duo.json")
    code, out, _ = run(capsys, "solve", duo, "--operator", "ess", "-f", "standalone")
    assert code == 0
    payload = json.loads(out)
    assert payload["benchmark_payoffs"] == {"1": 2.0, "2": 0.0}
    assert payload["surplus"] == 4.0
    assert payload["payoffs"] == {"1": 4.0, "2": 2.0}
    # a graph benchmark routes to the graph operator
    trio = str(fixture_dir / "trio.json")
    code, out, _ = run(capsys, "solve", trio, "--operator", "ess", "-f", "myerson")
    assert code == 0
    payload = json.loads(out)
    assert payload["surplus"] == 2.0
    assert payload["payoffs"]["3"] == pytest.approx(2 / 3, abs=1e-9)
    code, out, _ = run(capsys, "solve", trio, "--operator", "ess", "-f", "aumann-dreze")
    assert code == 0
    assert json.loads(out)["total"] == 3.0
    # usage and name errors
    code, _, err = run(capsys, "solve", duo, "--operator", "ess")
    assert code == 2 and "--benchmark" in err
    code, _, err = run(capsys, "solve", duo, "-s", "shapley", "-f", "myerson")
    assert code == 2 and "--operator" in err
    code, _, err = run(capsys, "solve", trio, "--operator", "ps", "-f", "myerson")
    assert code == 2 and "no graph operator" in err


def test_solve_error_statuses(capsys, fixture_dir, tmp_path):
    duo = str(fixture_dir / "duo.json")
    code, _, err = run(capsys, "solve", duo, "-s", "nope")
    assert code == 2 and "no solution named" in err
    code, _, err = run(capsys, "solve", duo, "-s", "myerson")
    assert code == 2 and "graph" in err
    trio = str(fixture_dir / "trio.json")
    code, _, err = run(capsys, "solve", trio, "-s", "ps")
    assert code == 2 and "positive singleton total" in err
    missing = str(tmp_path / "absent.json")
    code, _, err = run(capsys, "solve", missing, "-s", "shapley")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    code, _, err = run(capsys, "solve", str(bad), "-s", "shapley")
    assert code == 2 and "bad.json" in err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_gen_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        code, _, _ = run(
            capsys,
            "gen",
            str(out),
            "--sizes",
            "2-3",
            "--count",
            "2",
            "--seed",
            "9",
            "--attach",
            "both",
        )
        assert code == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert names == [
        "game-n2-s9-000.json",
        "game-n2-s9-001.json",
        "game-n3-s9-000.json",
        "game-n3-s9-001.json",
    ]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_check_suite_and_exit_codes(capsys, tmp_path):
    code, out, _ = run(
        capsys, "check", "gen:n=2-3,count=3,seed=11", "--suite", "network-extension"
    )
    assert code == 0
    assert "[PASS] link-fairness :: ee-myerson" in out
    assert out.strip().endswith("0 failed")
    # a failing axiom drives exit status 1 and prints a witness
    code, out, _ = run(
        capsys,
        "check",
        "gen:n=3,count=3,seed=2",
        "--axiom",
        "split-off-balance",
        "--target",
        "ee-aumann-dreze",
    )
    assert code == 1
    assert "[FAIL] split-off-balance" in out
    assert '"partition"' in out
    # malformed corpus arguments
    code, _, err = run(capsys, "check", "gen:bogus=1", "--suite", "surplus-values")
    assert code == 2
    code, _, err = run(capsys, "check", str(tmp_path / "void"), "--axiom", "efficiency")
    assert code == 2


def test_check_json_output(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "gen:n=2,count=3,seed=4",
        "--axiom",
        "efficiency",
        "--target",
        "ess",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["failed"] == 0
    (report,) = payload["reports"]
    assert report["axiom"] == "efficiency"
    assert report["verdict"] == "pass"
    assert report["cases"] > 0
    code, out, _ = run(
        capsys,
        "check",
        "gen:n=3,count=3,seed=2",
        "--axiom",
        "split-off-balance",
        "--target",
        "ee-aumann-dreze",
        "--json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["failed"] == 1
    assert payload["reports"][0]["witness"] is not None


def test_check_directory_corpus(capsys, tmp_path, fixture_dir):
    code, _, _ = run(capsys, "gen", str(tmp_path), "--sizes", "3", "--count", "4",
                     "--seed", "5", "--attach", "both")
    assert code == 0
    code, out, _ = run(
        capsys, "check", str(tmp_path), "--axiom", "efficiency", "--target", "ess"
    )
    assert code == 0 and "[PASS] efficiency :: ess (cases=4)" in out


def test_check_operator_kind(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "gen:n=3,count=2,seed=3",
        "--axiom",
        "operator-equal-surplus",
        "--target",
        "ess",
        "--kind",
        "operator",
        "--pool",
        "standalone,ed,shapley",
    )
    assert code == 0 and "[PASS] operator-equal-surplus :: ess" in out


def test_oracle_matches(capsys, tmp_path, fixture_dir):
    code, _, _ = run(capsys, "gen", str(tmp_path), "--sizes", "3", "--count", "1",
                     "--seed", "7", "--attach", "both")
    assert code == 0
    game = str(tmp_path / "game-n3-s7-000.json")
    for oracle in ("shapley-perm", "partition-brute", "fairness-induction",
                   "cycle-induction"):
        code, out, _ = run(capsys, "oracle", game, "--name", oracle)
        assert code == 0, oracle
        assert json.loads(out)["match"] is True
    code, _, err = run(capsys, "oracle", str(fixture_dir / "duo.json"),
                       "--name", "fairness-induction")
    assert code == 2 and "graph" in err

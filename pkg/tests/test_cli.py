"""Command-line interface, run in-process."""

import csv
import json

import pytest

from robustdense.cli import main


@pytest.fixture
def path_file(tmp_path):
    path = tmp_path / "path.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    return path


@pytest.fixture
def interval_file(tmp_path):
    path = tmp_path / "interval.txt"
    path.write_text("3 3\n0 1 0.5 1.0 0.9\n0 2 0.5 1.0 0.8\n1 2 0.5 1.0 0.7\n")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def read_csv(out):
    rows = list(csv.reader(out.splitlines()))
    return dict(zip(rows[0], rows[1]))


class TestSolveCommands:
    def test_solve(self, capsys, path_file):
        code, out = run(capsys, "solve", path_file)
        assert code == 0
        record = read_csv(out)
        assert float(record["density"]) == pytest.approx(2.0 / 3.0)
        assert record["vertices"] == "0 1 2"

    def test_solve_json_lines(self, capsys, path_file):
        code, out = run(capsys, "solve", path_file, "--format", "json-lines")
        assert code == 0
        record = json.loads(out)
        assert record["size"] == 3

    def test_peel(self, capsys, path_file):
        code, out = run(capsys, "peel", path_file)
        assert code == 0
        assert float(read_csv(out)["density"]) == pytest.approx(2.0 / 3.0)

    def test_preprocess(self, capsys, tmp_path):
        clique_plus = tmp_path / "g.txt"
        edges = [(i, j) for i in range(5) for j in range(i + 1, 5)] + [(4, 5)]
        clique_plus.write_text(
            f"6 {len(edges)}\n" + "\n".join(f"{a} {b}" for a, b in edges) + "\n")
        code, out = run(capsys, "preprocess", clique_plus)
        assert code == 0
        record = read_csv(out)
        assert record["n_after"] == "5"
        assert record["kept_vertices"] == "0 1 2 3 4"

    def test_output_file(self, capsys, path_file, tmp_path):
        target = tmp_path / "result.csv"
        code, _ = run(capsys, "solve", path_file, "--out", target)
        assert code == 0
        assert "density" in target.read_text()


class TestRobustCommands:
    def test_alg1(self, capsys, interval_file):
        code, out = run(capsys, "alg1", interval_file)
        assert code == 0
        record = read_csv(out)
        assert record["size"] == "3"
        assert float(record["guaranteed_ratio"]) == pytest.approx(0.5)

    def test_alg2(self, capsys, interval_file):
        code, out = run(capsys, "alg2", interval_file,
                        "--gamma", "0.2", "--epsilon", "0.5", "--seed", "1")
        assert code == 0
        record = read_csv(out)
        assert record["true_in_out_space"] in ("True", "False")
        assert int(record["total_calls"]) > 0

    def test_alg2_needs_true_weights(self, capsys, tmp_path):
        path = tmp_path / "no_truth.txt"
        path.write_text("2 1\n0 1 0.5 1.0\n")
        code, _ = run(capsys, "alg2", path, "--gamma", "0.2", "--epsilon", "0.5")
        assert code == 3

    def test_alg2_budget_exit_code(self, capsys, interval_file):
        code, _ = run(capsys, "alg2", interval_file, "--gamma", "0.2",
                      "--epsilon", "0.5", "--sample-cap", "1")
        assert code == 4

    def test_baseline_deterministic(self, capsys, interval_file):
        code1, out1 = run(capsys, "baseline", interval_file, "--seed", "9")
        code2, out2 = run(capsys, "baseline", interval_file, "--seed", "9")
        assert code1 == code2 == 0
        r1, r2 = read_csv(out1), read_csv(out2)
        r1.pop("runtime_s")
        r2.pop("runtime_s")
        assert r1 == r2

    def test_eval_ratio(self, capsys, path_file):
        code, out = run(capsys, "eval-ratio", path_file, "--vertices", "0,1")
        assert code == 0
        assert float(read_csv(out)["ratio"]) == pytest.approx(0.75)


class TestGenerators:
    def test_gen_planted_round_trip(self, capsys, tmp_path):
        target = tmp_path / "inst.txt"
        code, _ = run(capsys, "gen-planted", "--n", "20", "--p", "0.3",
                      "--n-prime", "6", "--alpha", "0.4", "--seed", "2",
                      "--out", target)
        assert code == 0
        code, out = run(capsys, "alg1", target)
        assert code == 0

    def test_gen_knockout(self, capsys, path_file, tmp_path):
        target = tmp_path / "ko.txt"
        code, _ = run(capsys, "gen-knockout", path_file, "--seed", "3",
                      "--out", target)
        assert code == 0
        text = target.read_text()
        assert "knocked_out_set=" in text
        code, out = run(capsys, "alg2", target, "--gamma", "0.5",
                        "--epsilon", "0.9", "--seed", "0")
        assert code == 0


class TestExperimentCommands:
    def test_exp_synthetic_tiny(self, capsys, tmp_path):
        target = tmp_path / "results.csv"
        code, out = run(capsys, "exp-synthetic",
                        "--n", "25", "--p", "0.2", "--n-prime", "6",
                        "--alpha", "0.0", "--alpha", "0.5",
                        "--trials", "1", "--repeats", "1",
                        "--gamma", "0.2", "--epsilon", "0.6",
                        "--seed", "4", "--out", target)
        assert code == 0
        assert target.exists()
        assert (tmp_path / "results.summary.txt").exists()
        header = target.read_text().splitlines()[0]
        assert header.startswith("model,n,p,n_prime")

    def test_exp_real_karate(self, capsys, tmp_path):
        import robustdense.datasets as datasets
        from importlib import resources

        source = resources.files("robustdense") / "data" / "karate.txt"
        target = tmp_path / "real.csv"
        code, _ = run(capsys, "exp-real", str(source), "--gamma", "0.9",
                      "--epsilon", "0.9", "--repeats", "2", "--seed", "1",
                      "--out", target)
        assert code == 0
        assert "knockout" in target.read_text()

    def test_exp_requires_out(self, capsys):
        code, _ = run(capsys, "exp-synthetic", "--trials", "1")
        assert code == 3


class TestErrorPaths:
    def test_parse_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 1\n0 1 0.9 0.1\n")
        code, _ = run(capsys, "solve", bad)
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _ = run(capsys, "solve", tmp_path / "nope.txt")
        assert code == 3

    def test_solve_on_intervals_only(self, capsys, tmp_path):
        path = tmp_path / "iv.txt"
        path.write_text("2 1\n0 1 0.2 0.8\n")
        code, _ = run(capsys, "solve", path)
        assert code == 3

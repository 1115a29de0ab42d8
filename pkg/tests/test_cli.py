import json

from sglab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_example_2_1_json_to_stdout(capsys):
    code, out, err = run_cli(capsys, "example-2-1", "--output", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["kind"] == "example-2-1"
    assert report["passed"] is True
    law = [r for r in report["rows"] if r["claim"] == "law-failure-of-weak-limit"]
    assert law and law[0]["passed"] is True
    assert "rows pass" in err


def test_json_round_trips_byte_identically(capsys):
    code, out, _ = run_cli(capsys, "example-2-3")
    assert code == 0
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_reports_identical_across_runs(capsys):
    _, out1, _ = run_cli(capsys, "remark", "--seed", "7")
    _, out2, _ = run_cli(capsys, "remark", "--seed", "7")
    assert out1 == out2


def test_tk_matrix_pattern_and_exit_code(capsys):
    code, out, err = run_cli(capsys, "tk-matrix")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert report["matrix"]["d=>c"] == "consistent"
    assert report["matrix"]["c=>b"] == "consistent"
    assert report["matrix"]["a=>b"] == "consistent"
    for imp, inst in (
        ("a=>d", "block-swap-rescaled[weak]"),
        ("b=>d", "block-swap-rescaled[weak]"),
        ("c=>d", "cayley-contraction[weak]"),
    ):
        assert report["matrix"][imp] == "counterexample-found"
        assert inst in report["counterexample_instances"][imp]
    assert "implication matrix" in err


def test_converge_csv_columns_and_verdict(capsys):
    code, out, _ = run_cli(
        capsys, "converge", "--family", "block-swap", "--n", "2:16",
        "--topology", "strong", "--output", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,grid_param,topology,delta,verdict"
    assert len(lines) == 1 + 15  # n = 2..16
    for line in lines[1:]:
        n, grid_param, topology, delta, verdict = line.split(",")
        assert topology == "strong"
        assert float(delta) == 1.0
        assert verdict == "no-convergence"


def test_converge_json(capsys):
    # The Cayley generators themselves diverge (norms grow like 2n - 1);
    # only their resolvents converge, which is the whole point.
    code, out, _ = run_cli(
        capsys, "converge", "--family", "cayley", "--n", "2,4,8",
        "--topology", "weak",
    )
    assert code == 0
    report = json.loads(out)
    assert report["kind"] == "converge"
    assert report["report"]["verdict"]["kind"] == "no-convergence"


def test_converge_rescaled_swap_exact_beyond(capsys):
    code, out, _ = run_cli(
        capsys, "converge", "--family", "rescaled-swap", "--n", "2,4,8",
        "--topology", "weak",
    )
    assert code == 0
    report = json.loads(out)
    assert report["report"]["verdict"] == {"kind": "exact-beyond", "n0": 8}


def test_unknown_subcommand_is_config_error(capsys):
    assert main(["no-such-command"]) == 2


def test_invalid_flag_value(capsys):
    code, _, err = run_cli(capsys, "example-2-1", "--p", "0.5")
    assert code == 2
    assert "p" in err


def test_csv_rejected_for_experiments(capsys):
    code, _, err = run_cli(capsys, "example-2-1", "--output", "csv")
    assert code == 2
    assert "converge" in err


def test_config_file_roundtrip(tmp_path, capsys):
    cfg = {"n_grid": [2, 4, 8], "t_grid": [0.0, 0.5, 1.0], "seed": 3}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run_cli(capsys, "example-2-1", "--config", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["config"]["n_grid"] == [2, 4, 8]
    assert report["config"]["seed"] == 3
    assert report["config"]["D"] == 16


def test_undersized_grid_fails_honestly(capsys):
    # With max(n) = 4 below the support bound 8, the exact-beyond claims
    # cannot trigger; the run reports the failing rows and exits 1.
    code, out, err = run_cli(capsys, "example-2-1", "--n-grid", "2,4")
    assert code == 1
    report = json.loads(out)
    assert not report["passed"]
    assert "FAILED" in err


def test_config_file_unknown_field(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"bogus_field": 1}))
    code, _, err = run_cli(capsys, "example-2-1", "--config", str(path))
    assert code == 2
    assert "bogus_field" in err


def test_dest_writes_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "example-2-3", "--dest", str(dest))
    assert code == 0
    assert out == ""
    report = json.loads(dest.read_text())
    assert report["kind"] == "example-2-3"


def test_unwritable_dest(capsys):
    code, _, err = run_cli(
        capsys, "example-2-1", "--dest", "/no/such/dir/out.json"
    )
    assert code == 2
    assert "dest" in err


def test_n_grid_flag_rederives_dimension(capsys):
    code, out, _ = run_cli(capsys, "example-2-1", "--n-grid", "2,4,8")
    assert code == 0
    assert json.loads(out)["config"]["D"] == 16


def test_time_grid_flags(capsys):
    code, out, _ = run_cli(
        capsys, "example-2-3", "--t-max", "2", "--t-points", "41"
    )
    assert code == 0
    grid = json.loads(out)["config"]["t_grid"]
    assert len(grid) == 41 and grid[0] == 0.0 and grid[-1] == 2.0


def test_complex_lambda_grid_flag(capsys):
    code, out, _ = run_cli(
        capsys, "example-2-3", "--lambda-grid", "1,1.5+0.5j,2"
    )
    assert code == 0
    report = json.loads(out)
    assert report["config"]["lambda_grid"] == [1.0, [1.5, 0.5], 2.0]
    row = [r for r in report["rows"]
           if r["claim"] == "lambda-grid-non-uniformity"][0]
    assert "(1.5+0.5j)" in row["measured"]


def test_zero_point_time_grid_rejected(capsys):
    code, _, err = run_cli(capsys, "example-2-1", "--t-points", "0")
    assert code == 2
    assert "t_grid" in err

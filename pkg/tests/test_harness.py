"""Trial orchestration, serialization, CLI behavior, and exit codes."""

import json

import pytest

from optbench import RunConfig, emit_report, run_trials
from optbench.cli import main as cli_main
from optbench.harness import TrialRecord, TrialTable, UsageError, verify_suite


def small_run(**overrides):
    kwargs = dict(
        problem="f9",
        solver="al+nm",
        trials=2,
        seed=7,
        eps_f=1e-3,
        eps_x=1e-2,
        solver_params={"max_evaluations": 6000},
    )
    kwargs.update(overrides)
    return RunConfig(**kwargs)


def fabricated_table(n=10):
    records = tuple(
        TrialRecord(
            problem="f9", solver="al+nm", seed=i, best_point=[0.0], best_value=1.0 + i,
            objective_gap=0.1, location_gap=0.0, feasible=True, evals=100 + i,
            wall_ms=1.25, noise_policy="per_evaluation", success=i % 2 == 0,
        )
        for i in range(n)
    )
    return TrialTable(records=records, eps_f=1e-3, eps_x=1e-2, set_valued=False)


def test_unknown_problem_is_a_usage_error_listing_the_catalog():
    with pytest.raises(UsageError) as err:
        run_trials(small_run(problem="f99"))
    assert "f99" in str(err.value) and "f10" in str(err.value)


def test_unknown_solver_is_a_usage_error():
    with pytest.raises(UsageError) as err:
        run_trials(small_run(solver="cma"))
    assert "al+nm" in str(err.value)


def test_run_config_validation():
    with pytest.raises(ValueError):
        small_run(trials=0)
    with pytest.raises(ValueError):
        small_run(eps_f=0.0)
    with pytest.raises(ValueError):
        small_run(format="xml")


def test_empty_table_serializes_to_header_only_csv():
    table = TrialTable(records=(), eps_f=1e-3, eps_x=1e-2, set_valued=False)
    lines = emit_report(table, "csv").decode().splitlines()
    assert lines == [
        "problem,solver,seed,best_value,objective_gap,location_gap,feasible,evals,wall_ms,noise_policy"
    ]
    payload = json.loads(emit_report(table, "json"))
    assert payload["records"] == [] and payload["aggregates"]["trials"] == 0


def test_ten_records_make_eleven_csv_lines():
    table = fabricated_table(10)
    assert len(emit_report(table, "csv").decode().splitlines()) == 11


def test_json_round_trips_records():
    table = fabricated_table(1)
    payload = json.loads(emit_report(table, "json"))
    (record,) = payload["records"]
    assert record == {
        "problem": "f9", "solver": "al+nm", "seed": 0, "best_point": [0.0],
        "best_value": 1.0, "objective_gap": 0.1, "location_gap": 0.0, "feasible": True,
        "evals": 100, "wall_ms": 1.25, "noise_policy": "per_evaluation", "success": True,
    }
    assert payload["aggregates"]["success_rate"] == 1.0
    assert json.loads(emit_report(fabricated_table(10), "json"))["aggregates"]["success_rate"] == 0.5


def test_unknown_format_is_a_usage_error():
    with pytest.raises(UsageError):
        emit_report(fabricated_table(1), "yaml")


def strip_wall_ms(csv_bytes):
    lines = csv_bytes.decode().splitlines()
    out = []
    for line in lines:
        cells = line.split(",")
        cells[8] = "-"
        out.append(",".join(cells))
    return "\n".join(out)


def test_run_trials_is_reproducible_modulo_wall_time():
    cfg = small_run()
    a = emit_report(run_trials(cfg), "csv")
    b = emit_report(run_trials(cfg), "csv")
    assert strip_wall_ms(a) == strip_wall_ms(b)


def test_trial_seeds_and_success_rule():
    # ten path trials at eps_f = 1e-3 must succeed at least nine times
    table = run_trials(small_run(trials=10))
    assert [r.seed for r in table.records] == list(range(7, 17))
    agg = table.aggregates()
    assert agg["trials"] == 10
    assert agg["success_rate"] >= 0.9
    assert agg["median_evals_to_success"] is not None


def test_noisy_trial_battery_success_rate():
    # ten DE trials on the noisy well: averaged best value within 1e-2 of -1
    cfg = RunConfig(
        problem="f1", solver="de", trials=10, seed=0, eps_f=1e-2, eps_x=1.0,
        solver_params={"max_evaluations": 10_000},
    )
    table = run_trials(cfg)
    assert table.aggregates()["success_rate"] >= 0.8
    assert all(r.noise_policy == "per_evaluation" for r in table.records)


def test_fixed_per_run_policy_is_recorded():
    from optbench import NoisePolicy

    cfg = RunConfig(
        problem="noisy_sphere", solver="de", trials=1, seed=3, eps_f=1e-2, eps_x=1.0,
        noise_policy=NoisePolicy.FIXED_PER_RUN,
        solver_params={"max_evaluations": 2000},
    )
    (record,) = run_trials(cfg).records
    assert record.noise_policy == "fixed_per_run"


def test_no_location_average_statistics_are_emitted():
    cfg = small_run(problem="f6", solver="sa", trials=2,
                    solver_params={"max_evaluations": 2000})
    table = run_trials(cfg)
    assert table.set_valued
    for key in table.aggregates():
        assert "location" not in key and "distance" not in key and "mean" not in key


def test_run_writes_report_file(tmp_path):
    out = tmp_path / "report.csv"
    run_trials(small_run(out=str(out)))
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and lines[0].startswith("problem,")


def test_run_with_unwritable_output_raises_io_error():
    with pytest.raises(IOError):
        run_trials(small_run(out="/nonexistent-dir/report.csv"))


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_list_and_describe(capsys):
    assert cli_main(["list"]) == 0
    assert "f10" in capsys.readouterr().out
    assert cli_main(["describe", "f5"]) == 0
    out = capsys.readouterr().out
    assert "Manifold" in out and "dimension:   3" in out


def test_cli_eval(capsys):
    assert cli_main(["eval", "f2", "--x", "0,0"]) == 0
    out = capsys.readouterr().out
    assert "value:" in out and "feasible: true" in out


def test_cli_eval_with_noise_key_is_deterministic(capsys):
    args = ["eval", "f1", "--x", "0.3,0,0,0,0", "--seed", "7", "--eval-index", "12"]
    assert cli_main(args) == 0
    first = capsys.readouterr().out
    assert cli_main(args) == 0
    assert capsys.readouterr().out == first
    assert cli_main(["eval", "f1", "--x", "0.3,0,0,0,0", "--seed", "8"]) == 0
    assert capsys.readouterr().out != first


def test_cli_usage_errors(capsys):
    assert cli_main(["describe", "f99"]) == 2
    assert cli_main(["eval", "f2", "--x", "1,2,3"]) == 2       # dimension mismatch
    assert cli_main(["eval", "f2", "--x", "one,two"]) == 2
    assert cli_main(["run", "--problem", "f99", "--solver", "de"]) == 2
    assert cli_main(["run", "--problem", "f9", "--solver", "cma"]) == 2
    capsys.readouterr()


def test_cli_run_and_config_precedence(tmp_path, capsys):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({
        "trials": 5, "seed": 1, "max_evaluations": 4000, "eps_x": 1e-2,
    }))
    out_file = tmp_path / "r.csv"
    # --trials on the command line must win over the config file
    code = cli_main([
        "run", "--problem", "f9", "--solver", "al+nm",
        "--trials", "2", "--config", str(config), "--out", str(out_file),
    ])
    assert code == 0
    assert len(out_file.read_text().splitlines()) == 3  # CLI trials=2, not 5
    stdout = capsys.readouterr().out
    assert "success_rate" in stdout
    assert stdout.splitlines()[1].split(",")[2] == "1"  # seed from the file


def test_cli_unwritable_output_exits_one(capsys):
    code = cli_main([
        "run", "--problem", "f9", "--solver", "al+nm", "--trials", "1",
        "--out", "/nonexistent-dir/report.csv",
    ])
    assert code == 1
    capsys.readouterr()


def test_cli_verify_exit_matches_report(capsys):
    code = cli_main(["verify"])
    report = verify_suite()
    assert code == (0 if report.all_passed else 1)
    out = capsys.readouterr().out
    assert "rk4-vs-analytic" in out

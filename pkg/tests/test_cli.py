"""CLI surface: file formats, subcommands, exit codes, bench and render."""

import csv
import json
import math

import pytest

from rectcover import GenConfig, Placement, Solution, generate
from rectcover.bnb import SolverStats
from rectcover.cli import (
    BenchReport,
    CliError,
    dump_instance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_solution,
    main,
    render_svg,
    run_bench,
    solution_from_dict,
    solution_to_dict,
)

from conftest import micro_line, small_1d, small_2d, square_instance


# ------------------------------------------------------------- file formats

def test_instance_round_trip_2d():
    inst = small_2d(seed=7, n=9, m=2, p=3)
    blob = json.loads(json.dumps(instance_to_dict(inst)))
    assert instance_from_dict(blob) == inst


def test_instance_round_trip_1d():
    inst = small_1d(seed=7, n=6, p=3)
    blob = json.loads(json.dumps(instance_to_dict(inst)))
    assert instance_from_dict(blob) == inst


def test_instance_json_field_names():
    data = instance_to_dict(square_instance())
    assert set(data) == {"dimension", "base_sz", "p", "eta", "qos", "dzs"}
    assert set(data["base_sz"]) == {"w", "l"}
    assert data["qos"] == {"shared": [1.0, 2.0]}
    assert set(data["dzs"][0]) == {"x", "y", "w", "l", "v"}
    per_zone = instance_to_dict(micro_line())
    assert per_zone["qos"] == {"per_sz": [[1.0], [2.0]]}


def test_solution_round_trip():
    sol = Solution((Placement(0.0, 0.0, 1.0), Placement(2.5, -1.0, 2.0)), 12.25)
    stats = SolverStats(nodes_explored=42, wall_time=0.5, optimal_found_time=0.25, optimal=True)
    data = solution_to_dict(sol, stats)
    assert set(data) == {"reward", "optimal", "placements", "stats"}
    assert set(data["stats"]) == {"nodes", "time_s", "t1_s"}
    back, optimal = solution_from_dict(json.loads(json.dumps(data)))
    assert back == sol
    assert optimal is True


def test_missing_field_diagnostics():
    data = instance_to_dict(square_instance())
    del data["dzs"][0]["v"]
    with pytest.raises(CliError, match=r"instance\.dzs\[0\]: missing field 'v'"):
        instance_from_dict(data)


def test_wrong_type_diagnostics():
    data = instance_to_dict(square_instance())
    data["p"] = "two"
    with pytest.raises(CliError, match=r"instance\.p: expected an integer"):
        instance_from_dict(data)


def test_qos_needs_a_recognised_key():
    data = instance_to_dict(square_instance())
    data["qos"] = {"menu": [1, 2]}
    with pytest.raises(CliError, match="'shared' or 'per_sz'"):
        instance_from_dict(data)


def test_model_validation_is_wrapped():
    data = instance_to_dict(square_instance())
    data["dimension"] = "1d"  # planar base on a line instance
    with pytest.raises(CliError, match="instance:"):
        instance_from_dict(data)


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dimension": "2d",')
    with pytest.raises(CliError, match=r"not valid JSON \(line 1, column"):
        load_instance(path)


def test_unreadable_file(tmp_path):
    with pytest.raises(CliError, match="cannot read"):
        load_instance(tmp_path / "nope.json")


# ------------------------------------------------------------------ solve

@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    dump_instance(square_instance(), path)
    return path


def test_solve_exact_on_square(square_file, tmp_path, capsys):
    out = tmp_path / "sol.json"
    code = main(["solve", "--instance", str(square_file), "--out", str(out)])
    assert code == 0
    sol, optimal = load_solution(out)
    assert optimal
    assert math.isclose(sol.reward, 10.0, abs_tol=1e-9)
    assert "reward=10" in capsys.readouterr().out


def test_solve_greedy_on_square(square_file, tmp_path):
    out = tmp_path / "sol.json"
    code = main(["solve", "--instance", str(square_file), "--algo", "greedy", "--out", str(out)])
    assert code == 0
    sol, optimal = load_solution(out)
    assert not optimal
    assert math.isclose(sol.reward, 8.0, abs_tol=1e-9)


def test_solve_oracle_on_square(square_file, tmp_path):
    out = tmp_path / "sol.json"
    code = main(["solve", "--instance", str(square_file), "--algo", "oracle", "--out", str(out)])
    assert code == 0
    sol, optimal = load_solution(out)
    assert optimal
    assert math.isclose(sol.reward, 10.0, abs_tol=1e-9)


def test_solve_timeout_exits_two(tmp_path):
    inst_path = tmp_path / "inst.json"
    dump_instance(small_2d(seed=0, n=8, m=2), inst_path)
    out = tmp_path / "sol.json"
    code = main(["solve", "--instance", str(inst_path), "--out", str(out),
                 "--time-limit", "0"])
    assert code == 2
    sol, optimal = load_solution(out)
    assert not optimal
    assert sol.reward > 0


def test_solve_oracle_refuses_oversized(tmp_path, capsys, monkeypatch):
    # shrink the guard so the refusal path triggers without a huge instance
    import rectcover.cli as cli_mod

    def tiny_guard(instance, eps):
        from rectcover.oracle import brute_force_2d

        return brute_force_2d(instance, eps, max_evaluations=10)

    monkeypatch.setattr(cli_mod, "brute_force_2d", tiny_guard)
    inst_path = tmp_path / "inst.json"
    dump_instance(small_2d(seed=1, n=5, m=2), inst_path)
    code = main(["solve", "--instance", str(inst_path), "--algo", "oracle",
                 "--out", str(tmp_path / "sol.json")])
    assert code == 1
    assert "oracle refused" in capsys.readouterr().err


def test_bad_flags_exit_one(square_file, tmp_path, capsys):
    code = main(["solve", "--instance", str(square_file), "--algo", "magic",
                 "--out", str(tmp_path / "x.json")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


# ---------------------------------------------------------------- generate

def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["generate", "--seed", "7", "--n", "10", "--p", "2", "--m", "2"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    inst = load_instance(a)
    assert len(inst.dzs) == 10 and inst.p == 2
    assert inst.scale_values() == (1.0, 2.0)


def test_generate_one_d_scales(tmp_path):
    out = tmp_path / "line.json"
    code = main(["generate", "--one-d", "--p", "3", "--n", "6", "--out", str(out)])
    assert code == 0
    inst = load_instance(out)
    assert inst.one_d
    assert [q.factors for q in inst.qos] == [(1.0,), (2.0,), (3.0,)]


def test_generate_bad_base_dims(tmp_path, capsys):
    code = main(["generate", "--base-dims", "5", "--out", str(tmp_path / "x.json")])
    assert code == 1
    assert "base-dims" in capsys.readouterr().err


# ------------------------------------------------------------------- bench

def test_run_bench_rows_and_columns(tmp_path):
    report = run_bench(
        ps=[2], ms=[1], ns=[3, 4], seeds=2, one_d=True,
        gen_overrides=dict(region=100.0, r=27.0, dim_range=(1.0, 10.0),
                           base_dims=(10.0, 8.0)),
    )
    assert len(report.rows) == 4  # 2 sizes x 2 seeds
    assert all(r.error is None and r.optimal for r in report.rows)
    for r in report.rows:
        assert 0.0 < r.alpha <= 1.0
        assert r.t1 <= r.t + 1e-9
    csv_path = tmp_path / "bench.csv"
    report.write_csv(csv_path)
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == BenchReport.COLUMNS
    assert len(rows) == 1 + 4
    table = report.human_table()
    assert "group means" in table


def test_run_bench_oracle_cross_check():
    report = run_bench(
        ps=[2], ms=[1], ns=[3], seeds=2, one_d=True,
        gen_overrides=dict(region=100.0, r=27.0, dim_range=(1.0, 10.0),
                           base_dims=(10.0, 8.0)),
        oracle_budget=10**7,
    )
    assert all(r.error is None for r in report.rows)


def test_bench_failure_becomes_marked_row(tmp_path, capsys, monkeypatch):
    import rectcover.cli as cli_mod

    def boom(instance, config):
        raise RuntimeError("injected failure")

    monkeypatch.setattr(cli_mod, "solve_1d", boom)
    out = tmp_path / "bench.csv"
    code = main(["bench", "--one-d", "--p", "2", "--n", "3", "--seeds", "1",
                 "--out", str(out)])
    assert code == 1
    assert "injected failure" in capsys.readouterr().err
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["nodes"] == "-"
    assert rows[0]["alpha"] == "-"


def test_bench_cli_end_to_end(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code = main(["bench", "--one-d", "--p", "2", "--n", "4", "--seeds", "1",
                 "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "group means" in capsys.readouterr().out


# ------------------------------------------------------------------ render

def test_render_square_with_solution(square_file, tmp_path):
    sol_path = tmp_path / "sol.json"
    main(["solve", "--instance", str(square_file), "--out", str(sol_path)])
    out = tmp_path / "scene.svg"
    code = main(["render", "--instance", str(square_file),
                 "--solution", str(sol_path), "--out", str(out)])
    assert code == 0
    svg = out.read_text()
    assert svg.count('class="dz"') == 1
    assert svg.count('class="sz"') == 2
    assert "reward=" in svg


def test_render_instance_only(square_file, tmp_path):
    out = tmp_path / "scene.svg"
    assert main(["render", "--instance", str(square_file), "--out", str(out)]) == 0
    svg = out.read_text()
    assert svg.count('class="dz"') == 1
    assert svg.count('class="sz"') == 0
    assert "demand=1" in svg


def test_render_one_d_band(tmp_path):
    inst_path = tmp_path / "line.json"
    dump_instance(micro_line(), inst_path)
    sol_path = tmp_path / "sol.json"
    main(["solve", "--instance", str(inst_path), "--out", str(sol_path)])
    out = tmp_path / "line.svg"
    assert main(["render", "--instance", str(inst_path),
                 "--solution", str(sol_path), "--out", str(out)]) == 0
    svg = out.read_text()
    assert svg.count('class="dz"') == 1
    assert svg.count('class="sz"') == 2


def test_render_is_deterministic():
    inst = small_2d(seed=3, n=5, m=2)
    assert render_svg(inst) == render_svg(inst)


def test_render_rejects_placement_count_mismatch():
    inst = square_instance()
    with pytest.raises(CliError, match="placements for p=2"):
        render_svg(inst, Solution((Placement(0.0, 0.0, 1.0),), 4.0))


def test_render_rejects_mismatched_pair(square_file, tmp_path, capsys):
    # a stored reward that the placements cannot reproduce is refused
    bogus = tmp_path / "bogus.json"
    bogus.write_text(json.dumps({
        "reward": 99.0,
        "optimal": True,
        "placements": [{"x": 0.0, "y": 0.0, "z": 1.0}, {"x": 0.0, "y": 0.0, "z": 2.0}],
        "stats": {"nodes": 1, "time_s": 0.0, "t1_s": 0.0},
    }))
    code = main(["render", "--instance", str(square_file),
                 "--solution", str(bogus), "--out", str(tmp_path / "x.svg")])
    assert code == 1
    assert "does not match" in capsys.readouterr().err

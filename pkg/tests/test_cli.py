import json
from pathlib import Path

import pytest

from laapprox.cli import main
from laapprox.instances import parse_dimacs_graph


def read_csv(path: Path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


def test_gen_then_solve_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.col"
    assert main(["gen", "--problem", "maxcut", "--n", "10", "--delta", "0.6",
                 "--seed", "1", "-o", str(out)]) == 0
    graph = parse_dimacs_graph(out.read_text())
    assert graph.n == 10
    assert main(["solve", "--problem", "maxcut", "--input", str(out),
                 "--epsilon", "0.2", "--flip-rate", "0", "--sample-size", "64"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["final_value"] <= payload["oracle_value"]
    assert payload["prediction_error"] == 0
    assert payload["report"]["status"] == "ok"


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.col", tmp_path / "b.col"
    for out in (a, b):
        main(["gen", "--problem", "maxcut", "--n", "12", "--delta", "0.5",
              "--seed", "3", "-o", str(out)])
    assert a.read_text() == b.read_text()


def test_oracle_command(tmp_path, capsys):
    out = tmp_path / "g.col"
    main(["gen", "--problem", "maxcut", "--n", "8", "--delta", "0.7", "--seed", "2",
          "-o", str(out)])
    assert main(["oracle", "--problem", "maxcut", "--input", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] > 0
    assert len(payload["solution"]) == 8


def test_solve_ksat(tmp_path, capsys):
    out = tmp_path / "f.cnf"
    main(["gen", "--problem", "maxksat", "--n", "6", "--delta", "0.1", "--k", "2",
          "--seed", "4", "-o", str(out)])
    assert main(["solve", "--problem", "maxksat", "--input", str(out),
                 "--epsilon", "0.3", "--flip-rate", "0.2", "--seed", "5",
                 "--sample-size", "32", "--error-grid", "geometric"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["final_value"] <= payload["oracle_value"]


def test_experiment_runs_and_is_deterministic(tmp_path):
    config = {
        "problem": "maxcut",
        "generator": {"n": 10, "delta": 0.6, "seed": 1},
        "epsilon": [0.2, 0.3],
        "flip_rate": [0.0, 0.5],
        "seeds": [1, 2],
        "sample_size": 48,
        "fallback": True,
        "error_grid": "geometric",
        "output_dir": str(tmp_path / "out1"),
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config))
    assert main(["experiment", "--config", str(cfg_path)]) == 0
    header, rows = read_csv(tmp_path / "out1" / "runs.csv")
    assert len(rows) == 2 * 2 * 2
    assert header[0] == "schema"
    assert all(row["schema"] == "laa-runs-1" for row in rows)

    config["output_dir"] = str(tmp_path / "out2")
    cfg_path.write_text(json.dumps(config))
    assert main(["experiment", "--config", str(cfg_path)]) == 0
    _, rows2 = read_csv(tmp_path / "out2" / "runs.csv")
    for r1, r2 in zip(rows, rows2):
        for key in header:
            if key != "wall_time_ms":
                assert r1[key] == r2[key]


def test_experiment_ratio_column(tmp_path):
    config = {
        "problem": "maxcut",
        "generator": {"n": 8, "delta": 0.7, "seed": 2},
        "epsilon": [0.2],
        "flip_rate": [0.0],
        "seeds": [3],
        "sample_size": 32,
        "output_dir": str(tmp_path / "out"),
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config))
    assert main(["experiment", "--config", str(cfg_path)]) == 0
    _, rows = read_csv(tmp_path / "out" / "runs.csv")
    row = rows[0]
    assert float(row["ratio"]) == pytest.approx(
        float(row["final_value"]) / float(row["oracle_value"]), abs=1e-9
    )
    reports = json.loads((tmp_path / "out" / "reports.json").read_text())
    assert len(reports) == 1


def test_experiment_config_errors(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"problem": "maxcut"}))
    assert main(["experiment", "--config", str(cfg_path)]) == 2
    assert "epsilon" in capsys.readouterr().err

    cfg_path.write_text(json.dumps({
        "problem": "tsp",
        "generator": {"n": 5, "delta": 0.5},
        "epsilon": [0.1], "flip_rate": [0.0], "seeds": [1],
        "output_dir": str(tmp_path),
    }))
    assert main(["experiment", "--config", str(cfg_path)]) == 2
    assert "problem" in capsys.readouterr().err


def test_solve_infeasible_without_fallback(tmp_path, capsys):
    # a hypergraph of singleton edges has an identically-zero objective, so
    # every positive target is infeasible and only the fallback could answer
    instance = {"kind": "hypergraph", "n": 4, "d": 2, "edges": [[0], [1], [2], [3]]}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(instance))
    code = main(["solve", "--problem", "hypercut", "--input", str(path),
                 "--epsilon", "0.3", "--sample-size", "16", "--no-fallback"])
    assert code == 3
    assert "infeasible" in capsys.readouterr().err


def test_check_command():
    assert main(["check"]) == 0


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 5\n")
    assert main(["solve", "--problem", "maxcut", "--input", str(bad)]) == 2
    assert "error" in capsys.readouterr().err

"""Command line interface: solve single instances, run experiment sweeps,
query the exact oracle, generate instances, and self-test invariants.

Everything non-timing is deterministic given the config and seeds; CSV rows
are sorted before writing so reruns are byte-identical apart from the
wall-time column.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import instances as inst
from . import oracle as oracle_mod
from . import pipelines, reductions
from .instances import CnfFormula, Graph
from .pipelines import PipSpec
from .prediction import draw_sample, noisy_predictor, prediction_error, sample_size_maxcut

CSV_SCHEMA = "laa-runs-1"
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

PROBLEMS = ("maxcut", "dicut", "hypercut", "densest", "maxksat")


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# shared problem plumbing


def load_instance(problem: str, path: Path):
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return inst.instance_from_json(text)
    if problem == "maxksat":
        return inst.parse_dimacs_cnf(text)
    return inst.parse_dimacs_graph(text, directed=problem == "dicut")


def generate_instance(problem: str, spec: dict):
    """Instance (and known optimum vector for planted generators) from config."""
    n = int(spec["n"])
    seed = int(spec.get("seed", 0))
    if problem in ("maxcut", "densest"):
        delta = float(spec["delta"])
        if spec.get("planted"):
            graph, truth = inst.generate_planted_maxcut(n, delta, seed)
            return graph, truth
        return inst.generate_dense_graph(n, delta, seed), None
    if problem == "dicut":
        return inst.generate_dense_graph(n, float(spec["delta"]), seed, directed=True), None
    if problem == "hypercut":
        return inst.generate_dense_hypergraph(n, int(spec.get("d", 3)), float(spec["delta"]), seed), None
    if problem == "maxksat":
        return inst.generate_dense_cnf(n, int(spec.get("k", 3)), float(spec["delta"]), seed), None
    raise ConfigError(f"unknown problem {problem!r}")


def fallback_vector(problem: str, instance, k: int | None) -> tuple[int, ...]:
    if problem == "maxcut":
        return pipelines.greedy_local_search_cut(instance)
    if problem == "densest":
        return pipelines.greedy_peel_densest(instance, k)
    if problem == "maxksat":
        return pipelines.best_random_assignment(reductions.maxksat_polynomial(instance))
    if problem == "dicut":
        return pipelines.local_search_polynomial(reductions.maxdicut_polynomial(instance))
    if problem == "hypercut":
        return pipelines.local_search_polynomial(reductions.hypercut_polynomial(instance))
    raise ConfigError(f"unknown problem {problem!r}")


def native_value(problem: str, instance, x) -> float:
    if problem == "maxcut":
        return float(reductions.cut_value(instance, x))
    if problem == "dicut":
        return float(reductions.dicut_value(instance, x))
    if problem == "hypercut":
        return float(reductions.hypercut_value(instance, x))
    if problem == "maxksat":
        return float(reductions.satisfied_clauses(instance, x))
    if problem == "densest":
        return float(reductions.induced_edges(instance, x))
    raise ConfigError(f"unknown problem {problem!r}")


def build_pip(problem: str, instance, k: int | None) -> PipSpec:
    if problem == "dicut":
        return PipSpec(objective=reductions.maxdicut_polynomial(instance))
    if problem == "hypercut":
        return PipSpec(objective=reductions.hypercut_polynomial(instance))
    if problem == "maxksat":
        return PipSpec(objective=reductions.maxksat_polynomial(instance))
    if problem == "densest":
        return reductions.densest_subgraph_pip(instance, k)
    raise ConfigError(f"pip build not defined for {problem!r}")


def effective_epsilon(problem: str, instance, epsilon: float, k: int | None) -> float:
    """Convert the target ratio slack into the additive epsilon the general
    scheme needs, through the cited density lower bounds."""
    n = instance.n
    if problem == "dicut":
        delta = inst.density(instance).delta
        bound = reductions.dense_lower_bound("dicut", delta=delta, n=n)
        return epsilon * bound / float(n) ** 2
    if problem == "densest":
        delta = inst.density(instance).delta
        bound = reductions.dense_lower_bound("densest", delta=delta, n=n, k=k)
        return epsilon * bound / float(n) ** 2
    if problem == "maxksat":
        bound = reductions.dense_lower_bound("maxksat", k=instance.k, m=instance.m)
        return epsilon * bound / float(n) ** instance.k
    if problem == "hypercut":
        sizes = [len(e) for e in instance.edges]
        bound = reductions.dense_lower_bound("hypercut", edge_sizes=sizes)
        return epsilon * bound / float(n) ** instance.d
    return epsilon


def run_single(
    problem: str,
    instance,
    truth,
    epsilon: float,
    flip_rate: float,
    seed: int,
    sample_size: int,
    use_fallback: bool,
    error_grid: str,
    k: int | None = None,
) -> dict:
    """One (instance, epsilon, flip_rate, seed) trial; returns a result row."""
    n = instance.n
    sample = draw_sample(n, sample_size, seed)
    bundle = noisy_predictor(truth, sample, flip_rate, seed)
    error = prediction_error(bundle)
    start = time.perf_counter()
    if problem == "maxcut":
        report = pipelines.la_ptas_cut(instance, bundle, epsilon, seed=seed, error_grid=error_grid)
        pipeline_value = report.value if report.status == "ok" else float("nan")
    else:
        pip = build_pip(problem, instance, k)
        eps_add = effective_epsilon(problem, instance, epsilon, k)
        report = pipelines.la_ptas(pip, bundle, eps_add, seed=seed, error_grid=error_grid)
        pipeline_value = (
            native_value(problem, instance, report.solution)
            if report.status == "ok"
            else float("nan")
        )
    fb = fallback_vector(problem, instance, k)
    fallback_value = native_value(problem, instance, fb)
    if report.status == "ok" and (not use_fallback or pipeline_value >= fallback_value):
        final_value, solution, used_fallback = pipeline_value, report.solution, False
    elif use_fallback:
        final_value, solution, used_fallback = fallback_value, fb, True
    else:
        final_value, solution, used_fallback = float("nan"), report.solution, False
    elapsed = time.perf_counter() - start
    return {
        "report": report,
        "solution": solution,
        "prediction_error": error,
        "pipeline_value": pipeline_value,
        "fallback_value": fallback_value,
        "final_value": final_value,
        "fallback_used": used_fallback,
        "wall_time_ms": elapsed * 1000.0,
        "status": report.status,
    }


# ---------------------------------------------------------------------------
# experiment runner


REQUIRED_CONFIG = ("problem", "epsilon", "flip_rate", "seeds", "output_dir")


def validate_config(config: dict) -> dict:
    for key in REQUIRED_CONFIG:
        if key not in config:
            raise ConfigError(f"missing config field {key!r}")
    problem = config["problem"]
    if problem not in PROBLEMS:
        raise ConfigError(f"config field 'problem' must be one of {PROBLEMS}, got {problem!r}")
    if ("generator" in config) == ("input" in config):
        raise ConfigError("config needs exactly one of 'generator' or 'input'")
    for key in ("epsilon", "flip_rate", "seeds"):
        if not isinstance(config[key], list) or not config[key]:
            raise ConfigError(f"config field {key!r} must be a nonempty list")
    if problem == "densest" and "k" not in config:
        raise ConfigError("config field 'k' is required for densest")
    grid = config.get("error_grid", "full")
    if grid not in ("full", "geometric"):
        raise ConfigError(f"config field 'error_grid' must be full|geometric, got {grid!r}")
    return config


def _trial_args(config, instance, truth, k):
    for epsilon in config["epsilon"]:
        for flip_rate in config["flip_rate"]:
            for seed in config["seeds"]:
                yield (
                    config["problem"],
                    instance,
                    truth,
                    float(epsilon),
                    float(flip_rate),
                    int(seed),
                    _sample_size_for(config, instance, float(epsilon)),
                    bool(config.get("fallback", True)),
                    config.get("error_grid", "full"),
                    k,
                )


def _sample_size_for(config, instance, epsilon: float) -> int:
    if "sample_size" in config:
        return int(config["sample_size"])
    delta = inst.density(instance).delta
    c0 = float(config.get("sample_constant", 1.0))
    return sample_size_maxcut(instance.n, epsilon, max(delta, 1e-9), c0)


def _run_trial(args) -> dict:
    row = run_single(*args)
    _, _, _, epsilon, flip_rate, seed, sample_size, _, _, _ = args
    row.update(epsilon=epsilon, flip_rate=flip_rate, seed=seed, sample_size=sample_size)
    return row


def run_experiment(config: dict) -> tuple[Path, Path]:
    """Run the sweep; writes runs.csv and reports.json into output_dir."""
    config = validate_config(config)
    problem = config["problem"]
    k = int(config["k"]) if "k" in config else None
    if "generator" in config:
        instance, truth = generate_instance(problem, config["generator"])
    else:
        instance, truth = load_instance(problem, Path(config["input"])), None

    oracle_value: float | None = None
    if truth is not None:
        oracle_value = native_value(problem, instance, truth)
    elif instance.n <= oracle_mod.MAX_EXHAUSTIVE_N:
        exact = oracle_mod.solve_instance_exactly(instance, problem, k=k)
        truth, oracle_value = exact.solution, exact.value
    else:
        raise ConfigError(
            f"n={instance.n} > {oracle_mod.MAX_EXHAUSTIVE_N} needs a planted generator "
            "(simulated predictions require a known optimum)"
        )

    tasks = list(_trial_args(config, instance, truth, k))
    workers = int(os.environ.get("LAAPPROX_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_trial, tasks))
    else:
        rows = [_run_trial(task) for task in tasks]
    rows.sort(key=lambda r: (r["epsilon"], r["flip_rate"], r["seed"]))

    delta = inst.density(instance).delta
    out_dir = Path(config["output_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "runs.csv"
    json_path = out_dir / "reports.json"

    columns = [
        "schema",
        "n",
        "delta",
        "epsilon",
        "sample_size",
        "flip_rate",
        "prediction_error",
        "pipeline_value",
        "fallback_value",
        "final_value",
        "oracle_value",
        "ratio",
        "slack_claimed",
        "fallback_used",
        "wall_time_ms",
        "seed",
    ]
    lines = [",".join(columns)]
    for row in rows:
        ratio = ""
        if oracle_value and oracle_value > 0 and not math.isnan(row["final_value"]):
            ratio = _fmt(row["final_value"] / oracle_value)
        lines.append(
            ",".join(
                [
                    CSV_SCHEMA,
                    str(instance.n),
                    _fmt(delta),
                    _fmt(row["epsilon"]),
                    str(row["sample_size"]),
                    _fmt(row["flip_rate"]),
                    str(row["prediction_error"]),
                    _fmt(row["pipeline_value"]),
                    _fmt(row["fallback_value"]),
                    _fmt(row["final_value"]),
                    _fmt(oracle_value),
                    ratio,
                    _fmt(row["report"].slack_claimed),
                    str(int(row["fallback_used"])),
                    str(int(row["wall_time_ms"])),
                    str(row["seed"]),
                ]
            )
        )
    csv_path.write_text("\n".join(lines) + "\n")

    reports = [
        {
            "epsilon": row["epsilon"],
            "flip_rate": row["flip_rate"],
            "seed": row["seed"],
            "prediction_error": row["prediction_error"],
            "final_value": row["final_value"],
            "report": row["report"].to_dict(),
        }
        for row in rows
    ]
    json_path.write_text(json.dumps(reports, indent=1, sort_keys=True))
    return csv_path, json_path


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return format(float(value), ".10g")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    spec = {"n": args.n, "delta": args.delta, "seed": args.seed, "d": args.d, "k": args.k,
            "planted": args.planted}
    instance, _ = generate_instance(args.problem, spec)
    if isinstance(instance, Graph) and not instance.directed:
        text = inst.serialize_dimacs_graph(instance)
    elif isinstance(instance, CnfFormula):
        text = inst.serialize_dimacs_cnf(instance)
    else:
        text = inst.instance_to_json(instance) + "\n"
    Path(args.output).write_text(text)
    return 0


def cmd_oracle(args) -> int:
    instance = load_instance(args.problem, Path(args.input))
    if instance.n > oracle_mod.MAX_EXHAUSTIVE_N:
        print(
            f"error: exact solving refused for n={instance.n} > {oracle_mod.MAX_EXHAUSTIVE_N}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    report = oracle_mod.solve_instance_exactly(instance, args.problem, k=args.k)
    print(json.dumps({"value": report.value, "solution": list(report.solution)}))
    return 0


def cmd_solve(args) -> int:
    instance = load_instance(args.problem, Path(args.input))
    if instance.n > oracle_mod.MAX_EXHAUSTIVE_N:
        print(
            "error: simulated predictions need the exact optimum; "
            f"n={instance.n} is beyond the oracle cap",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    exact = oracle_mod.solve_instance_exactly(instance, args.problem, k=args.k)
    sample_size = args.sample_size or _sample_size_for(
        {"sample_constant": args.sample_constant}, instance, args.epsilon
    )
    row = run_single(
        args.problem,
        instance,
        exact.solution,
        args.epsilon,
        args.flip_rate,
        args.seed,
        sample_size,
        not args.no_fallback,
        args.error_grid,
        k=args.k,
    )
    if math.isnan(row["final_value"]):
        print("error: pipeline infeasible and fallback disabled", file=sys.stderr)
        return EXIT_INFEASIBLE
    out = {
        "problem": args.problem,
        "final_value": row["final_value"],
        "oracle_value": exact.value,
        "prediction_error": row["prediction_error"],
        "pipeline_value": row["pipeline_value"],
        "fallback_value": row["fallback_value"],
        "fallback_used": row["fallback_used"],
        "solution": list(row["solution"]),
        "report": row["report"].to_dict(),
    }
    print(json.dumps(out, indent=1, sort_keys=True))
    return 0


def cmd_experiment(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        csv_path, json_path = run_experiment(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"wrote {csv_path} and {json_path}")
    return 0


def cmd_check(args) -> int:
    from . import selfcheck

    return selfcheck.run_all(verbose=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laapprox",
        description="Learning-augmented approximation for dense instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance and print the run report")
    p_solve.add_argument("--problem", choices=PROBLEMS, required=True)
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--epsilon", type=float, default=0.2)
    p_solve.add_argument("--flip-rate", type=float, default=0.0, dest="flip_rate")
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--sample-size", type=int, default=None, dest="sample_size")
    p_solve.add_argument("--sample-constant", type=float, default=1.0, dest="sample_constant")
    p_solve.add_argument("--error-grid", choices=("full", "geometric"), default="full",
                         dest="error_grid")
    p_solve.add_argument("--no-fallback", action="store_true", dest="no_fallback")
    p_solve.add_argument("--k", type=int, default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_exp = sub.add_parser("experiment", help="run a config sweep to CSV + JSON")
    p_exp.add_argument("--config", required=True)
    p_exp.set_defaults(func=cmd_experiment)

    p_oracle = sub.add_parser("oracle", help="exact brute-force solve")
    p_oracle.add_argument("--problem", choices=PROBLEMS, required=True)
    p_oracle.add_argument("--input", required=True)
    p_oracle.add_argument("--k", type=int, default=None)
    p_oracle.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument("--problem", choices=PROBLEMS, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--delta", type=float, required=True)
    p_gen.add_argument("--d", type=int, default=3)
    p_gen.add_argument("--k", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--planted", action="store_true")
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_check = sub.add_parser("check", help="run the desk-scale invariant self-tests")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (inst.ParseError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end schemes: the prediction-driven cut algorithm, its general
smooth-PIP counterpart, fallback-composed variants, and best-of-k selection.

The unknown prediction error is handled by guessing: the loop tries error
values, solves the relaxation per guess, rounds, and keeps the best rounded
solution measured by exact re-evaluation (never the LP objective).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .estimator import RecursiveEstimator, estimate_cut_coefficients, estimate_slack
from .instances import Graph, density
from .linearize import (
    INF,
    LinearConstraint,
    _clamped_row,
    _Linearizer,
    binary_search_M,
)
from .lp import LpProblem, solve_lp
from .polynomial import (
    E,
    SmoothPolynomial,
    evaluate_exact,
    linear_polynomial,
    smoothness,
)
from .prediction import PredictionBundle
from .reductions import cut_value
from .rounding import (
    linear_budget,
    polynomial_budget,
    repair_cardinality,
    round_with_retries,
    rounding_exponent,
)


@dataclass(frozen=True)
class RunReport:
    solution: tuple[int, ...]
    value: float
    error_guess_used: int
    epsilon: float
    sample_size: int
    slack_claimed: float
    fallback_used: bool
    seed: int
    wall_time: float
    probe_count: int = 0
    status: str = "ok"

    def to_dict(self) -> dict:
        return {
            "solution": list(self.solution),
            "value": self.value,
            "error_guess_used": self.error_guess_used,
            "epsilon": self.epsilon,
            "sample_size": self.sample_size,
            "slack_claimed": self.slack_claimed,
            "fallback_used": self.fallback_used,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "probe_count": self.probe_count,
            "status": self.status,
        }


@dataclass(frozen=True)
class PipSpec:
    """Smooth polynomial program: maximize objective under interval constraints."""

    objective: SmoothPolynomial
    constraints: tuple[tuple[SmoothPolynomial, float, float], ...] = ()
    maximize: bool = True
    cardinality: int | None = None  # set when a sum x_i = k row needs repair

    @property
    def m(self) -> int:
        return len(self.constraints)

    def program_smoothness(self) -> float:
        c = smoothness(self.objective).c
        for poly, _, _ in self.constraints:
            c = max(c, smoothness(poly).c)
        return c


def error_guesses(sample_size: int, mode: str = "full") -> list[int]:
    """Candidate prediction-error values to try: every integer, or a
    doubling grid (with the endpoints) when mode is "geometric"."""
    if mode == "full":
        return list(range(sample_size + 1))
    if mode == "geometric":
        grid = [0]
        g = 1
        while g < sample_size:
            grid.append(g)
            g *= 2
        grid.append(sample_size)
        return sorted(set(grid))
    raise ValueError(f"unknown error-guess mode {mode!r}")


def _rounding_seed(seed: int, guess: int) -> int:
    return (seed * 1_000_003 + guess * 7919 + 12345) % (2**63)


def la_ptas_cut(
    graph: Graph,
    bundle: PredictionBundle,
    epsilon: float,
    seed: int = 0,
    error_grid: str = "full",
    max_trials: int = 20,
    f: float = 3.0,
    guesses: Sequence[int] | None = None,
) -> RunReport:
    """Prediction-driven approximation for max cut.

    Per error guess: bound each neighborhood sum around its estimate with
    slack (2*eps' + guess/|S|)*n, eps' = eps*delta/16, clamp the bounds into
    [0, |N(i)|], solve the LP relaxation, round, and keep the best cut.
    """
    start = time.perf_counter()
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = graph.n
    delta = density(graph).delta
    eps_prime = epsilon * delta / 16.0
    estimates = estimate_cut_coefficients(graph, bundle, eps_prime)
    deg = graph.degrees()
    adj = graph.neighbors()
    objective = {i: float(deg[i]) - estimates.e_hat[i] for i in range(n)}
    neighbor_rows = {
        i: tuple((j, 1.0) for j in sorted(adj[i])) for i in range(n) if adj[i]
    }
    neighbor_polys = {
        i: linear_polynomial(n, dict(coeffs)) for i, coeffs in neighbor_rows.items()
    }
    sample_size = bundle.sample.size

    best: tuple[float, tuple[int, ...], int, float] | None = None
    if guesses is None:
        guesses = error_guesses(sample_size, error_grid)
    for guess in guesses:
        slack = estimates.slack(guess)
        constraints = []
        feasible_bounds = True
        for i, coeffs in neighbor_rows.items():
            lo = max(0.0, estimates.e_hat[i] - slack)
            hi = min(float(deg[i]), estimates.e_hat[i] + slack)
            if lo > hi:
                feasible_bounds = False
                break
            constraints.append(LinearConstraint(coeffs=coeffs, lower=lo, upper=hi))
        if not feasible_bounds:
            continue
        solution = solve_lp(LpProblem(n=n, objective=objective, constraints=constraints))
        if solution.status != "optimal":
            continue
        y = solution.x
        forms = [
            (poly, evaluate_exact(poly, y), linear_budget(1.0, f, n))
            for poly in neighbor_polys.values()
        ]
        residual = {
            i: float(deg[i]) - evaluate_exact(neighbor_polys[i], y) if i in neighbor_polys else float(deg[i])
            for i in range(n)
        }
        weight_poly = linear_polynomial(n, residual)
        forms.append(
            (weight_poly, evaluate_exact(weight_poly, y), linear_budget(float(n), f, n))
        )
        outcome = round_with_retries(y, forms, max_trials, _rounding_seed(seed, guess))
        value = float(cut_value(graph, outcome.z))
        claimed = 2.0 * (2.0 * eps_prime + guess / sample_size) * n * n
        if best is None or value > best[0]:
            best = (value, outcome.z, guess, claimed)

    elapsed = time.perf_counter() - start
    if best is None:
        return RunReport(
            solution=tuple([0] * n),
            value=0.0,
            error_guess_used=-1,
            epsilon=epsilon,
            sample_size=sample_size,
            slack_claimed=math.inf,
            fallback_used=False,
            seed=seed,
            wall_time=elapsed,
            status="failed",
        )
    value, z, guess, claimed = best
    return RunReport(
        solution=z,
        value=value,
        error_guess_used=guess,
        epsilon=epsilon,
        sample_size=sample_size,
        slack_claimed=claimed,
        fallback_used=False,
        seed=seed,
        wall_time=elapsed,
    )


def greedy_local_search_cut(graph: Graph) -> tuple[int, ...]:
    """Deterministic single-flip local search from the all-zeros cut.

    At a local optimum every vertex has at least half its edges cut, so the
    cut size is at least |E|/2.
    """
    n = graph.n
    adj = graph.neighbors()
    x = [0] * n
    cut_deg = [0] * n
    improved = True
    while improved:
        improved = False
        for i in range(n):
            gain = len(adj[i]) - 2 * cut_deg[i]
            if gain > 0:
                x[i] ^= 1
                cut_deg[i] = len(adj[i]) - cut_deg[i]
                for j in adj[i]:
                    cut_deg[j] += 1 if x[j] != x[i] else -1
                improved = True
    return tuple(x)


def laa_cut(
    graph: Graph,
    bundle: PredictionBundle,
    epsilon: float,
    seed: int = 0,
    error_grid: str = "full",
    max_trials: int = 20,
    f: float = 3.0,
) -> RunReport:
    """Best of the prediction pipeline and the local-search fallback.

    Ties go to the prediction branch so fallback_used flags a strict win.
    """
    report = la_ptas_cut(
        graph, bundle, epsilon, seed=seed, error_grid=error_grid, max_trials=max_trials, f=f
    )
    start = time.perf_counter()
    fallback = greedy_local_search_cut(graph)
    fallback_value = float(cut_value(graph, fallback))
    extra = time.perf_counter() - start
    if report.status == "ok" and report.value >= fallback_value:
        return replace(report, wall_time=report.wall_time + extra)
    return RunReport(
        solution=fallback,
        value=fallback_value,
        error_guess_used=report.error_guess_used,
        epsilon=epsilon,
        sample_size=report.sample_size,
        slack_claimed=report.slack_claimed,
        fallback_used=True,
        seed=seed,
        wall_time=report.wall_time + extra,
        probe_count=report.probe_count,
    )


def _lemma_b3_slack(
    degree: int, c: float, epsilon: float, guess: float, sample_size: int, n: int
) -> float:
    if degree <= 1:
        return 0.0
    ce = c * E
    return (
        (4 * ce + 2) * degree * (degree - 1) * epsilon
        + 4 * ce * degree * (degree - 1) * guess / sample_size
    ) * float(n) ** degree


def la_ptas(
    pip: PipSpec,
    bundle: PredictionBundle,
    epsilon: float,
    seed: int = 0,
    error_grid: str = "geometric",
    resolution: float = 1.0,
    max_trials: int = 20,
    f: float | None = None,
    c: float | None = None,
    guesses: Sequence[int] | None = None,
) -> RunReport:
    """General scheme for smooth programs: binary-search the target value,
    linearize objective and side constraints per error guess, solve the LP,
    round with degree-aware budgets, and keep the best exact value among
    candidates that respect every side constraint within its slack."""
    start = time.perf_counter()
    if not pip.maximize:
        raise NotImplementedError("only maximization programs are supported")
    p = pip.objective
    n = p.n
    d = max(1, p.degree)
    program_c = c if c is not None else pip.program_smoothness()
    if d >= 2:
        eps_inner = epsilon / ((4 * program_c * E + 2) * d * (d - 1))
    else:
        eps_inner = epsilon
    if f is None:
        f = rounding_exponent(pip.m + 1, n, d)
    cert_bound = 2.0 * program_c * E * float(n) ** d
    upper = max(cert_bound, p.range_bounds()[1])
    sample_size = bundle.sample.size
    estimator = RecursiveEstimator(bundle)

    best: tuple[float, tuple[int, ...], int, float] | None = None
    max_probes = 0
    if guesses is None:
        guesses = error_guesses(sample_size, error_grid)
    for guess in guesses:
        worker = _Linearizer(bundle, eps_inner, guess, program_c, estimator)
        top = worker.run(p, -INF, INF)
        base_rows = list(worker.rows)
        for poly, lo, up in pip.constraints:
            side_worker = _Linearizer(bundle, eps_inner, guess, program_c, estimator)
            side_worker.run(poly, lo, up)
            base_rows.extend(side_worker.rows)
        if d >= 2:
            slack_d = estimate_slack(d, program_c, eps_inner, guess, sample_size, n)
        else:
            slack_d = 0.0  # linear objectives carry exact coefficients
        cache: dict[float, np.ndarray] = {}

        def oracle(m_target: float) -> bool:
            row = _clamped_row(dict(top), m_target - slack_d - p.constant, INF)
            problem = LpProblem(
                n=n,
                objective=dict(top),
                constraints=base_rows + [row],
                objective_constant=p.constant,
            )
            solution = solve_lp(problem)
            if solution.status == "optimal":
                cache[m_target] = solution.x
                return True
            return False

        search = binary_search_M(p, oracle, resolution=resolution, upper=upper)
        max_probes = max(max_probes, search.probes)
        if not search.feasible_found or search.value not in cache:
            continue
        y = cache[search.value]
        forms = [(p, evaluate_exact(p, y), polynomial_budget(program_c, f, d, n))]
        tolerances = []
        for poly, lo, up in pip.constraints:
            dq = max(1, poly.degree)
            if dq <= 1:
                coeff_bound = max(
                    (abs(v) for v in poly.linear_coefficients().values()), default=0.0
                )
                budget = linear_budget(coeff_bound, f, n)
            else:
                budget = polynomial_budget(program_c, f, dq, n)
            forms.append((poly, evaluate_exact(poly, y), budget))
            b3 = _lemma_b3_slack(dq, program_c, eps_inner, guess, sample_size, n)
            tolerances.append(budget + b3)
        outcome = round_with_retries(y, forms, max_trials, _rounding_seed(seed, guess))
        z = outcome.z
        if pip.cardinality is not None:
            z = repair_cardinality(z, pip.cardinality, y)
        feasible = True
        for (poly, lo, up), tol in zip(pip.constraints, tolerances):
            val = evaluate_exact(poly, z)
            if pip.cardinality is not None and poly.degree <= 1:
                tol = 1e-9  # repaired exactly
            if val < lo - tol - 1e-9 or val > up + tol + 1e-9:
                feasible = False
                break
        if not feasible:
            continue
        value = evaluate_exact(p, z)
        claimed = (
            epsilon + 4 * program_c * E * d * (d - 1) * guess / sample_size
        ) * float(n) ** d
        if best is None or value > best[0]:
            best = (value, z, guess, claimed)

    elapsed = time.perf_counter() - start
    if best is None:
        return RunReport(
            solution=tuple([0] * n),
            value=-math.inf,
            error_guess_used=-1,
            epsilon=epsilon,
            sample_size=sample_size,
            slack_claimed=math.inf,
            fallback_used=False,
            seed=seed,
            wall_time=elapsed,
            probe_count=max_probes,
            status="failed",
        )
    value, z, guess, claimed = best
    return RunReport(
        solution=z,
        value=value,
        error_guess_used=guess,
        epsilon=epsilon,
        sample_size=sample_size,
        slack_claimed=claimed,
        fallback_used=False,
        seed=seed,
        wall_time=elapsed,
        probe_count=max_probes,
    )


def laa_general(
    pip: PipSpec,
    bundle: PredictionBundle,
    epsilon: float,
    fallback: Callable[[PipSpec], Sequence[int]],
    **kwargs,
) -> RunReport:
    """Best of the general scheme and a prediction-free fallback algorithm."""
    report = la_ptas(pip, bundle, epsilon, **kwargs)
    start = time.perf_counter()
    fallback_z = tuple(int(b) for b in fallback(pip))
    fallback_value = evaluate_exact(pip.objective, fallback_z)
    extra = time.perf_counter() - start
    if report.status == "ok" and report.value >= fallback_value:
        return replace(report, wall_time=report.wall_time + extra)
    return RunReport(
        solution=fallback_z,
        value=fallback_value,
        error_guess_used=report.error_guess_used,
        epsilon=epsilon,
        sample_size=report.sample_size,
        slack_claimed=report.slack_claimed,
        fallback_used=True,
        seed=report.seed,
        wall_time=report.wall_time + extra,
        probe_count=report.probe_count,
    )


def local_search_polynomial(p: SmoothPolynomial) -> tuple[int, ...]:
    """First-improvement single-flip ascent on p from all-zeros (fallback duty)."""
    x = [0] * p.n
    current = evaluate_exact(p, x)
    improved = True
    while improved:
        improved = False
        for i in range(p.n):
            x[i] ^= 1
            candidate = evaluate_exact(p, x)
            if candidate > current + 1e-12:
                current = candidate
                improved = True
            else:
                x[i] ^= 1
    return tuple(x)


def greedy_peel_densest(graph: Graph, k: int) -> tuple[int, ...]:
    """Peel minimum-degree vertices (ties to the lowest index) until k remain."""
    if not 1 <= k <= graph.n:
        raise ValueError(f"need 1 <= k <= {graph.n}")
    adj = [set(neigh) for neigh in graph.neighbors()]
    alive = set(range(graph.n))
    while len(alive) > k:
        victim = min(alive, key=lambda v: (len(adj[v]), v))
        alive.remove(victim)
        for u in adj[victim]:
            adj[u].discard(victim)
        adj[victim].clear()
    return tuple(int(v in alive) for v in range(graph.n))


def best_random_assignment(p: SmoothPolynomial, trials: int = 16, seed: int = 0) -> tuple[int, ...]:
    """Best of a few uniform random assignments; the Max-k-SAT style fallback."""
    rng = np.random.default_rng(seed)
    best_x: tuple[int, ...] | None = None
    best_value = -math.inf
    for _ in range(max(1, trials)):
        x = tuple(int(b) for b in rng.integers(0, 2, size=p.n))
        value = evaluate_exact(p, x)
        if value > best_value:
            best_value, best_x = value, x
    assert best_x is not None
    return best_x


def best_of_k_predictions(
    problem: Graph | PipSpec,
    bundles: Sequence[PredictionBundle],
    epsilon: float,
    **kwargs,
) -> RunReport:
    """Run the relevant pipeline once per bundle (same sample) and keep the max."""
    if not bundles:
        raise ValueError("need at least one prediction bundle")
    first = bundles[0].sample
    for bundle in bundles[1:]:
        if bundle.sample.indices != first.indices or bundle.sample.n != first.n:
            raise ValueError("all bundles must share one sample")
    best: RunReport | None = None
    for bundle in bundles:
        if isinstance(problem, Graph):
            report = laa_cut(problem, bundle, epsilon, **kwargs)
        else:
            report = la_ptas(problem, bundle, epsilon, **kwargs)
        if best is None or report.value > best.value:
            best = report
    assert best is not None
    return best

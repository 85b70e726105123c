"""Desk-scale invariant self-tests behind the `check` subcommand.

A trimmed, dependency-free rerun of the core invariants: encoding fidelity,
decomposition reassembly, full-coverage estimator exactness, LP sanity, and
rounding repair. Exit code 0 means every suite passed.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from . import reductions
from .estimator import evaluate_recursive
from .instances import (
    generate_dense_cnf,
    generate_dense_graph,
    generate_dense_hypergraph,
    parse_dimacs_graph,
    serialize_dimacs_graph,
)
from .linearize import LinearConstraint
from .lp import LpProblem, solve_lp
from .polynomial import decompose, evaluate_exact, random_smooth_polynomial
from .prediction import SampleSet, perfect_predictor
from .rounding import repair_cardinality


def check_encodings() -> bool:
    for seed in range(5):
        graph = generate_dense_graph(6, 0.6, seed)
        p = reductions.maxcut_polynomial(graph)
        digraph = generate_dense_graph(6, 0.4, seed, directed=True)
        q = reductions.maxdicut_polynomial(digraph)
        hyper = generate_dense_hypergraph(6, 3, 0.05, seed)
        h = reductions.hypercut_polynomial(hyper)
        cnf = generate_dense_cnf(6, 2, 0.3, seed)
        s = reductions.maxksat_polynomial(cnf)
        for bits in product((0, 1), repeat=6):
            if evaluate_exact(p, bits) != reductions.cut_value(graph, bits):
                return False
            if evaluate_exact(q, bits) != reductions.dicut_value(digraph, bits):
                return False
            if evaluate_exact(h, bits) != reductions.hypercut_value(hyper, bits):
                return False
            if evaluate_exact(s, bits) != reductions.satisfied_clauses(cnf, bits):
                return False
    return True


def check_decomposition() -> bool:
    for seed in range(10):
        p = random_smooth_polynomial(6, 3, 2.0, seed, integer=True)
        dec = decompose(p)
        if dec.reassemble() != p:
            return False
        for bits in product((0, 1), repeat=6):
            direct = evaluate_exact(p, bits)
            parts = dec.t + sum(
                bits[i] * evaluate_exact(dec.parts[i], bits) for i in range(6)
            )
            if direct != parts:
                return False
    return True


def check_estimator_exactness() -> bool:
    for seed in range(10):
        p = random_smooth_polynomial(7, 3, 1.5, seed)
        rng = np.random.default_rng(seed)
        truth = tuple(int(b) for b in rng.integers(0, 2, size=7))
        sample = SampleSet(n=7, indices=tuple(range(7)))
        bundle = perfect_predictor(truth, sample)
        estimate = evaluate_recursive(p, bundle).value
        exact = evaluate_exact(p, truth)
        if abs(estimate - exact) > 1e-9 * (1 + abs(exact)):
            return False
    return True


def check_lp() -> bool:
    problem = LpProblem(
        n=1, objective={0: 1.0}, constraints=[LinearConstraint(((0, 1.0),), -np.inf, 0.5)]
    )
    sol = solve_lp(problem)
    if sol.status != "optimal" or abs(sol.objective_value - 0.5) > 1e-7:
        return False
    infeasible = LpProblem(
        n=1,
        objective={0: 1.0},
        constraints=[
            LinearConstraint(((0, 1.0),), 0.7, np.inf),
            LinearConstraint(((0, 1.0),), -np.inf, 0.3),
        ],
    )
    return solve_lp(infeasible).status == "infeasible"


def check_rounding_repair() -> bool:
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = 10
        z = rng.integers(0, 2, size=n)
        y = rng.random(n)
        k = int(rng.integers(1, n + 1))
        repaired = repair_cardinality(z, k, y)
        if sum(repaired) != k:
            return False
    return True


def check_roundtrip() -> bool:
    for seed in range(5):
        graph = generate_dense_graph(8, 0.5, seed)
        if parse_dimacs_graph(serialize_dimacs_graph(graph)) != graph:
            return False
    return True


SUITES = [
    ("encoding fidelity", check_encodings),
    ("decomposition reassembly", check_decomposition),
    ("estimator full-coverage exactness", check_estimator_exactness),
    ("lp solve and infeasibility", check_lp),
    ("cardinality repair", check_rounding_repair),
    ("dimacs round-trip", check_roundtrip),
]


def run_all(verbose: bool = False) -> int:
    failures = 0
    for name, suite in SUITES:
        ok = suite()
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1
    return 1 if failures else 0

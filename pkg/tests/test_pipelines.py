import math

import numpy as np
import pytest

from laapprox.instances import Graph, generate_dense_graph, generate_planted_maxcut
from laapprox.oracle import brute_force_max, canonical_optimum, solve_instance_exactly
from laapprox.pipelines import (
    PipSpec,
    best_of_k_predictions,
    best_random_assignment,
    error_guesses,
    greedy_local_search_cut,
    greedy_peel_densest,
    la_ptas,
    la_ptas_cut,
    laa_cut,
    laa_general,
    local_search_polynomial,
)
from laapprox.polynomial import evaluate_exact, linear_polynomial, random_smooth_polynomial
from laapprox.prediction import (
    PredictionBundle,
    SampleSet,
    draw_sample,
    noisy_predictor,
    perfect_predictor,
    prediction_error,
)
from laapprox.reductions import (
    densest_subgraph_pip,
    maxcut_polynomial,
    maxksat_polynomial,
    satisfied_clauses,
)
from laapprox.instances import generate_dense_cnf


def scan_cut(graph, x):
    return sum(1 for u, v in graph.edges if x[u] != x[v])


def full_coverage_bundle(truth):
    sample = SampleSet(n=len(truth), indices=tuple(range(len(truth))))
    return perfect_predictor(truth, sample)


def complete_graph(n):
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


PETERSEN = Graph(
    10,
    (
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    ),
)


def test_error_guess_grids():
    assert error_guesses(5, "full") == [0, 1, 2, 3, 4, 5]
    assert error_guesses(20, "geometric") == [0, 1, 2, 4, 8, 16, 20]
    with pytest.raises(ValueError):
        error_guesses(5, "quadratic")


def test_la_ptas_cut_k4_perfect():
    g = complete_graph(4)
    truth = canonical_optimum(g, "maxcut")
    report = la_ptas_cut(g, full_coverage_bundle(truth), 0.1)
    assert report.value == 4
    assert report.status == "ok"


def test_la_ptas_cut_empty_graph():
    g = Graph(4, ())
    bundle = full_coverage_bundle((0, 0, 0, 0))
    report = la_ptas_cut(g, bundle, 0.2)
    assert report.value == 0.0


def test_reported_value_is_reevaluated():
    for seed in range(6):
        g = generate_dense_graph(10, 0.6, seed)
        truth = canonical_optimum(g, "maxcut")
        bundle = noisy_predictor(truth, draw_sample(10, 64, seed), 0.2, seed)
        report = la_ptas_cut(g, bundle, 0.2, seed=seed)
        assert report.value == scan_cut(g, report.solution)
        assert report.value == evaluate_exact(maxcut_polynomial(g), report.solution)


def test_error_guess_loop_dominates_true_error():
    for seed in range(6):
        g = generate_dense_graph(12, 0.6, seed)
        truth = canonical_optimum(g, "maxcut")
        bundle = noisy_predictor(truth, draw_sample(12, 96, seed), 0.25, seed)
        true_error = prediction_error(bundle)
        full = la_ptas_cut(g, bundle, 0.2, seed=seed)
        pinned = la_ptas_cut(g, bundle, 0.2, seed=seed, guesses=[true_error])
        assert full.value >= pinned.value


def test_local_search_k2():
    assert scan_cut(Graph(2, ((0, 1),)), greedy_local_search_cut(Graph(2, ((0, 1),)))) == 1


def test_local_search_half_edges_guarantee():
    for seed in range(12):
        g = generate_dense_graph(4 + seed, 0.5, seed)
        cut = scan_cut(g, greedy_local_search_cut(g))
        assert cut >= math.ceil(g.m / 2)


def test_local_search_petersen():
    cut = scan_cut(PETERSEN, greedy_local_search_cut(PETERSEN))
    assert cut >= 8
    _, opt = brute_force_max(maxcut_polynomial(PETERSEN))
    assert opt == 12
    assert cut <= opt


def test_laa_cut_perfect_beats_fallback_and_opt_fraction():
    for seed in range(5):
        g = generate_dense_graph(12, 0.7, seed)
        truth = canonical_optimum(g, "maxcut")
        opt = scan_cut(g, truth)
        bundle = perfect_predictor(truth, draw_sample(12, 128, seed))
        report = laa_cut(g, bundle, 0.2, seed=seed)
        fallback_cut = scan_cut(g, greedy_local_search_cut(g))
        assert report.value >= fallback_cut
        assert report.value >= (1 - 0.2) * opt


def test_laa_cut_adversarial_floor():
    for seed in range(8):
        g = generate_dense_graph(10, 0.6, seed)
        truth = canonical_optimum(g, "maxcut")
        bundle = noisy_predictor(truth, draw_sample(10, 64, seed), 1.0, seed)
        report = laa_cut(g, bundle, 0.2, seed=seed)
        assert report.value >= g.m / 2


def test_laa_cut_complete_graph_opt():
    g = complete_graph(10)
    truth = canonical_optimum(g, "maxcut")
    report = laa_cut(g, full_coverage_bundle(truth), 0.05)
    assert report.value == 100 // 4


def test_smoothness_margin_small_scale():
    ratios = {0.0: [], 0.5: []}
    for seed in range(8):
        g, truth = generate_planted_maxcut(30, 0.5, seed=seed)
        opt = g.m
        sample = draw_sample(30, 128, 100 + seed)
        for rate in ratios:
            bundle = noisy_predictor(truth, sample, rate, 200 + seed)
            report = la_ptas_cut(g, bundle, 0.15, seed=seed, error_grid="geometric")
            ratios[rate].append(report.value / opt)
    assert np.mean(ratios[0.0]) > np.mean(ratios[0.5])


def test_la_ptas_linear_program_exact():
    p = linear_polynomial(6, {i: float(i + 1) for i in range(6)})
    truth = (1,) * 6
    report = la_ptas(PipSpec(objective=p), full_coverage_bundle(truth), 0.2)
    assert report.value == pytest.approx(21.0)
    assert report.status == "ok"


def test_la_ptas_k3_cut_as_pip():
    g = Graph(3, ((0, 1), (0, 2), (1, 2)))
    truth = canonical_optimum(g, "maxcut")
    pip = PipSpec(objective=maxcut_polynomial(g))
    report = la_ptas(pip, full_coverage_bundle(truth), 0.1)
    assert report.value == 2.0


def test_la_ptas_meets_claimed_slack():
    hits = 0
    for seed in range(10):
        p = random_smooth_polynomial(10, 3, 0.5, seed=seed)
        z_opt, opt = brute_force_max(p)
        bundle = perfect_predictor(z_opt, draw_sample(10, 64, seed))
        report = la_ptas(PipSpec(objective=p), bundle, 0.3, seed=seed)
        if report.status == "ok" and report.value >= opt - report.slack_claimed - 1e-9:
            hits += 1
    assert hits >= 9


def test_la_ptas_value_is_reevaluated():
    p = random_smooth_polynomial(8, 2, 1.0, seed=3)
    truth = brute_force_max(p)[0]
    report = la_ptas(PipSpec(objective=p), full_coverage_bundle(truth), 0.2, seed=3)
    assert report.value == pytest.approx(evaluate_exact(p, report.solution))


def test_la_ptas_densest_repairs_cardinality():
    g = generate_dense_graph(10, 0.7, seed=2)
    pip = densest_subgraph_pip(g, 4)
    exact = solve_instance_exactly(g, "densest", k=4)
    bundle = perfect_predictor(exact.solution, draw_sample(10, 96, 5))
    report = la_ptas(pip, bundle, 0.3, seed=5)
    assert report.status == "ok"
    assert sum(report.solution) == 4
    assert report.value <= exact.value


def test_la_ptas_probe_budget():
    for seed in range(5):
        p = random_smooth_polynomial(9, 2, 1.0, seed=40 + seed)
        truth = brute_force_max(p)[0]
        report = la_ptas(PipSpec(objective=p), full_coverage_bundle(truth), 0.25, seed=seed)
        c = PipSpec(objective=p).program_smoothness()
        bound = 2 * c * math.e * 9.0**2
        assert report.probe_count <= math.ceil(math.log2(bound)) + 1


def test_laa_general_sat_random_fallback():
    f = generate_dense_cnf(8, 2, 0.4, seed=6)
    p = maxksat_polynomial(f)
    truth = brute_force_max(p)[0]
    bundle = noisy_predictor(truth, draw_sample(8, 64, 6), 1.0, 6)

    def fallback(pip):
        return best_random_assignment(pip.objective, trials=16, seed=1)

    report = laa_general(PipSpec(objective=p), bundle, 0.3, fallback, seed=6)
    # expected satisfied fraction for width-2 clauses is 3/4; best-of-16 clears it
    assert report.value >= (1 - 2**-f.k) * f.m - 2
    assert satisfied_clauses(f, report.solution) == report.value


def test_laa_general_tie_prefers_prediction():
    p = linear_polynomial(4, {i: 1.0 for i in range(4)})
    truth = (1, 1, 1, 1)
    bundle = full_coverage_bundle(truth)

    def fallback(pip):
        return (1, 1, 1, 1)

    report = laa_general(PipSpec(objective=p), bundle, 0.2, fallback)
    assert report.value == 4.0
    assert not report.fallback_used


def test_local_search_polynomial_and_peel():
    g = generate_dense_graph(9, 0.6, seed=7)
    z = greedy_peel_densest(g, 4)
    assert sum(z) == 4
    p = maxcut_polynomial(g)
    z2 = local_search_polynomial(p)
    assert evaluate_exact(p, z2) >= g.m / 2


def test_best_of_one_is_identity():
    g = generate_dense_graph(8, 0.6, seed=9)
    truth = canonical_optimum(g, "maxcut")
    bundle = perfect_predictor(truth, draw_sample(8, 48, 9))
    single = laa_cut(g, bundle, 0.2, seed=9)
    combined = best_of_k_predictions(g, [bundle], 0.2, seed=9)
    assert combined.value == single.value
    assert combined.solution == single.solution


def test_best_of_k_takes_perfect_branch():
    g = generate_dense_graph(10, 0.6, seed=11)
    truth = canonical_optimum(g, "maxcut")
    sample = draw_sample(10, 80, 11)
    perfect = perfect_predictor(truth, sample)
    adversarial = noisy_predictor(truth, sample, 1.0, 11)
    combined = best_of_k_predictions(g, [adversarial, perfect], 0.2, seed=11)
    alone = laa_cut(g, perfect, 0.2, seed=11)
    assert combined.value == alone.value


def test_best_of_k_equals_max_of_singles():
    g = generate_dense_graph(9, 0.7, seed=13)
    truth = canonical_optimum(g, "maxcut")
    sample = draw_sample(9, 64, 13)
    bundles = [noisy_predictor(truth, sample, rate, 13) for rate in (0.0, 0.3, 1.0)]
    singles = [laa_cut(g, b, 0.2, seed=13).value for b in bundles]
    combined = best_of_k_predictions(g, bundles, 0.2, seed=13)
    assert combined.value == max(singles)


def test_best_of_k_rejects_mismatched_samples():
    g = generate_dense_graph(6, 0.6, seed=1)
    truth = canonical_optimum(g, "maxcut")
    b1 = perfect_predictor(truth, draw_sample(6, 12, 1))
    b2 = perfect_predictor(truth, draw_sample(6, 12, 2))
    with pytest.raises(ValueError, match="share one sample"):
        best_of_k_predictions(g, [b1, b2], 0.2)
    with pytest.raises(ValueError, match="at least one"):
        best_of_k_predictions(g, [], 0.2)


def test_best_of_k_time_scales_linearly():
    g = generate_dense_graph(12, 0.6, seed=17)
    truth = canonical_optimum(g, "maxcut")
    sample = draw_sample(12, 64, 17)
    bundles = [noisy_predictor(truth, sample, rate, 17) for rate in (0.0, 0.2, 0.4)]
    single = laa_cut(g, bundles[0], 0.2, seed=17)
    combined = best_of_k_predictions(g, bundles, 0.2, seed=17)
    # overhead of k bundles is about k single runs, far below quadratic blowup
    assert combined.wall_time <= 3 * 6 * max(single.wall_time, 1e-3)


def test_oracle_dominates_pipeline():
    for seed in range(6):
        g = generate_dense_graph(11, 0.6, seed)
        truth = canonical_optimum(g, "maxcut")
        opt = scan_cut(g, truth)
        bundle = noisy_predictor(truth, draw_sample(11, 64, seed), 0.3, seed)
        report = laa_cut(g, bundle, 0.2, seed=seed)
        assert report.value <= opt

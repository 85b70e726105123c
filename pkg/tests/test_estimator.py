import math
from itertools import product

import numpy as np
import pytest

from laapprox.estimator import (
    RecursiveEstimator,
    estimate_cut_coefficients,
    estimate_slack,
    evaluate_recursive,
)
from laapprox.instances import Graph, generate_dense_graph
from laapprox.polynomial import (
    E,
    SmoothPolynomial,
    evaluate_exact,
    random_smooth_polynomial,
    smoothness,
)
from laapprox.prediction import (
    PredictionBundle,
    SampleSet,
    draw_sample,
    noisy_predictor,
    perfect_predictor,
)

K3 = Graph(3, ((0, 1), (0, 2), (1, 2)))


def full_coverage_bundle(truth):
    sample = SampleSet(n=len(truth), indices=tuple(range(len(truth))))
    return perfect_predictor(truth, sample)


def test_cut_estimates_exact_under_full_coverage():
    truth = (1, 0, 1, 1, 0, 0)
    g = generate_dense_graph(6, 0.7, seed=1)
    est = estimate_cut_coefficients(g, full_coverage_bundle(truth), 0.01)
    adj = g.neighbors()
    for i in range(6):
        rho = sum(truth[j] for j in adj[i])
        assert est.e_hat[i] == pytest.approx(rho)


def test_cut_estimates_zero_predictions():
    g = generate_dense_graph(5, 0.6, seed=2)
    sample = draw_sample(5, 50, seed=3)
    bundle = PredictionBundle(sample=sample, bits={i: 0 for i in set(sample.indices)})
    est = estimate_cut_coefficients(g, bundle, 0.01)
    assert est.e_hat == (0.0,) * 5


def test_cut_estimates_k3_hand_computed():
    bundle = full_coverage_bundle((1, 0, 0))
    est = estimate_cut_coefficients(K3, bundle, 0.05)
    assert est.e_hat == (0.0, 1.0, 1.0)


def test_cut_estimates_respect_clamp_range():
    for seed in range(10):
        g = generate_dense_graph(8, 0.5, seed)
        truth = tuple(int(b) for b in np.random.default_rng(seed).integers(0, 2, size=8))
        bundle = noisy_predictor(truth, draw_sample(8, 16, seed), 0.4, seed)
        est = estimate_cut_coefficients(g, bundle, 0.1)
        assert all(0.0 <= e <= 8.0 for e in est.e_hat)


def test_cut_estimates_slack_formula():
    g = generate_dense_graph(6, 0.6, seed=4)
    est = estimate_cut_coefficients(g, full_coverage_bundle((0,) * 6), 0.02)
    assert est.slack(3) == pytest.approx((2 * 0.02 + 3 / 6) * 6)


def test_cut_estimates_empty_sample_rejected():
    with pytest.raises(ValueError):
        SampleSet(n=3, indices=())


def test_evaluate_constant_is_exact():
    p = SmoothPolynomial(4, 7.5, ())
    bundle = full_coverage_bundle((1, 0, 1, 0))
    assert evaluate_recursive(p, bundle).value == 7.5


def test_full_coverage_exactness_exhaustive():
    # every truth vector, every polynomial: full coverage + perfect bits is exact
    for n, d in ((4, 2), (5, 3), (6, 2)):
        p = random_smooth_polynomial(n, d, 1.2, seed=n * 10 + d)
        for truth in product((0, 1), repeat=n):
            bundle = full_coverage_bundle(truth)
            got = evaluate_recursive(p, bundle).value
            want = evaluate_exact(p, truth)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_estimate_concentration_degree2():
    hits = 0
    trials = 50
    eps = 0.3
    for seed in range(trials):
        p = random_smooth_polynomial(10, 2, 0.8, seed=seed, integer=False)
        c = smoothness(p).c
        beta = max(1.0, 2 * c * E)
        size = math.ceil(1 * 2 * beta * math.log(10) / eps**3)
        truth = tuple(int(b) for b in np.random.default_rng(1000 + seed).integers(0, 2, size=10))
        bundle = perfect_predictor(truth, draw_sample(10, size, seed=2000 + seed))
        got = evaluate_recursive(p, bundle).value
        bound = estimate_slack(2, c, eps, 0, size, 10)
        if abs(got - evaluate_exact(p, truth)) <= bound:
            hits += 1
    assert hits >= 0.9 * trials


def test_estimation_error_grows_with_flips():
    p = random_smooth_polynomial(10, 2, 1.0, seed=5)
    truth = tuple(int(b) for b in np.random.default_rng(5).integers(0, 2, size=10))
    exact = evaluate_exact(p, truth)
    deviations = {}
    for rate in (0.0, 0.3):
        devs = []
        for seed in range(40):
            bundle = noisy_predictor(truth, draw_sample(10, 400, seed), rate, seed)
            devs.append(abs(evaluate_recursive(p, bundle).value - exact))
        deviations[rate] = np.mean(devs)
    assert deviations[0.3] > deviations[0.0]


def test_estimator_memoization_shares_subpolynomials():
    p = random_smooth_polynomial(8, 3, 1.0, seed=8)
    bundle = full_coverage_bundle((1,) * 8)
    shared = RecursiveEstimator(bundle)
    first = shared.estimate(p)
    cache_size = len(shared._cache)
    assert shared.estimate(p) == first
    assert len(shared._cache) == cache_size


def test_estimate_slack_degree_zero():
    assert estimate_slack(0, 2.0, 0.5, 10, 100, 8) == 0.0


def test_estimate_slack_no_error_term():
    d, c, eps, n = 2, 1.5, 0.1, 6
    expected = (2 * c * E + 1) * d * eps * n**d
    assert estimate_slack(d, c, eps, 0, 50, n) == pytest.approx(expected)


def test_estimate_slack_linear_in_error():
    d, c, eps, size, n = 3, 0.5, 0.2, 40, 5
    base = estimate_slack(d, c, eps, 0, size, n)
    slope = (estimate_slack(d, c, eps, 1, size, n) - base)
    assert slope == pytest.approx(2 * c * E * d * n**d / size)
    assert estimate_slack(d, c, eps, 7, size, n) == pytest.approx(base + 7 * slope)

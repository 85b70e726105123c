import math
from itertools import product

import numpy as np
import pytest

from laapprox.instances import Graph, generate_dense_graph
from laapprox.polynomial import (
    SmoothPolynomial,
    decompose,
    evaluate_exact,
    linear_polynomial,
    random_smooth_polynomial,
    smoothness,
)
from laapprox.reductions import maxcut_polynomial

K3 = Graph(3, ((0, 1), (0, 2), (1, 2)))


def test_evaluate_simple_monomial():
    p = SmoothPolynomial(2, 0.0, (((0, 1), 1.0),))
    assert evaluate_exact(p, (1, 1)) == 1.0
    assert evaluate_exact(p, (0, 1)) == 0.0


def test_evaluate_multilinear_extension():
    p = SmoothPolynomial(2, 0.0, (((0, 1), 1.0),))
    assert evaluate_exact(p, (0.5, 0.5)) == pytest.approx(0.25)


def test_evaluate_maxcut_k3():
    # oracle: direct edge scan of the cut {0} vs {1,2}
    x = (1, 0, 0)
    cut = sum(1 for u, v in K3.edges if x[u] != x[v])
    assert cut == 2
    assert evaluate_exact(maxcut_polynomial(K3), x) == cut


def test_evaluate_dimension_mismatch():
    p = SmoothPolynomial(3, 0.0, (((0,), 1.0),))
    with pytest.raises(ValueError):
        evaluate_exact(p, (1, 0))


def test_repeated_indices_collapse():
    p = SmoothPolynomial(2, 0.0, [((0, 0, 1), 2.0)])
    assert p.monomials == (((0, 1), 2.0),)
    assert p.degree == 2


def test_coefficient_merging_drops_zeros():
    p = SmoothPolynomial(2, 1.0, [((0,), 2.0), ((0,), -2.0)])
    assert p.monomials == ()
    assert p.degree == 0


def test_decompose_example():
    p = SmoothPolynomial(3, 0.0, [((0, 2), 3.0), ((1,), 1.0)])
    dec = decompose(p)
    assert dec.t == 0.0
    assert dec.parts[0].monomials == (((2,), 3.0),)
    assert dec.parts[1].constant == 1.0 and dec.parts[1].monomials == ()
    assert dec.parts[2].is_zero()


def test_decompose_constant():
    p = SmoothPolynomial(3, 5.0, ())
    dec = decompose(p)
    assert dec.t == 5.0
    assert all(part.is_zero() for part in dec.parts)


def test_decompose_reassembly_exhaustive():
    for seed in range(15):
        p = random_smooth_polynomial(6, 3, 2.0, seed, integer=True)
        dec = decompose(p)
        assert dec.reassemble() == p
        for x in product((0, 1), repeat=6):
            lhs = evaluate_exact(p, x)
            rhs = dec.t + sum(x[i] * evaluate_exact(dec.parts[i], x) for i in range(6))
            assert lhs == rhs


def test_parts_touch_only_later_indices():
    p = random_smooth_polynomial(7, 3, 1.0, seed=3)
    for i, part in enumerate(decompose(p).parts):
        for ids, _ in part.monomials:
            assert all(j > i for j in ids)


def test_smoothness_maxcut_at_most_two():
    for seed in range(10):
        g = generate_dense_graph(int(3 + seed), 0.8, seed)
        assert smoothness(maxcut_polynomial(g)).c <= 2.0


def test_smoothness_linear():
    p = linear_polynomial(3, {0: 7.0})
    cert = smoothness(p)
    assert cert.c == 7.0
    assert cert.bound == pytest.approx(2 * 7 * math.e * 3)


def test_smoothness_zero_polynomial():
    assert smoothness(SmoothPolynomial(3, 0.0, ())).c == 0.0


def test_value_bound_on_random_instances():
    for seed in range(40):
        n, d = 4 + seed % 6, 1 + seed % 3
        p = random_smooth_polynomial(n, d, 0.5 + (seed % 4), seed)
        cert = smoothness(p)
        rng = np.random.default_rng(seed)
        for _ in range(20):
            x = rng.integers(0, 2, size=n)
            assert abs(evaluate_exact(p, x)) <= cert.bound + 1e-9


def test_random_polynomial_certificate_is_pinned():
    p = random_smooth_polynomial(8, 2, 1.5, seed=9)
    assert smoothness(p).c == pytest.approx(1.5)


def test_multilinear_extension_matches_rounding_expectation():
    p = random_smooth_polynomial(8, 2, 1.0, seed=11)
    rng = np.random.default_rng(11)
    y = rng.random(8)
    target = evaluate_exact(p, y)
    trials = 4000
    values = np.empty(trials)
    for t in range(trials):
        values[t] = evaluate_exact(p, (rng.random(8) < y).astype(int))
    sigma = values.std(ddof=1) / math.sqrt(trials)
    assert abs(values.mean() - target) <= 3 * sigma + 1e-9


def test_json_roundtrip():
    p = random_smooth_polynomial(6, 3, 1.0, seed=2)
    assert SmoothPolynomial.from_dict(p.to_dict()) == p

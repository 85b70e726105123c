"""Coefficient estimation from sampled predictions.

Two routes: the direct neighbor-sum estimator for cuts, and the recursive
estimator for general smooth polynomials, which estimates p(a) through the
decomposition p = t + sum_i x_i p_i by averaging predicted bits over the
sample multiset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import Graph
from .polynomial import E, SmoothPolynomial, decompose
from .prediction import PredictionBundle


@dataclass(frozen=True)
class CutEstimates:
    """Estimates of rho_i = sum_{j in N(i)} a_j, clamped into [0, n]."""

    e_hat: tuple[float, ...]
    n: int
    sample_size: int
    epsilon_prime: float

    def slack(self, error_guess: int) -> float:
        return (2.0 * self.epsilon_prime + error_guess / self.sample_size) * self.n


@dataclass(frozen=True)
class EvalEstimate:
    value: float
    degree: int
    slack_bound: float


def estimate_cut_coefficients(
    graph: Graph, bundle: PredictionBundle, epsilon_prime: float
) -> CutEstimates:
    """Neighbor sums of predicted bits scaled by n/|S|, one per vertex.

    Each occurrence in the sample multiset contributes, so repeated indices
    count with multiplicity.
    """
    if graph.directed:
        raise ValueError("cut estimation expects an undirected graph")
    sample = bundle.sample
    if sample.size == 0:
        raise ValueError("empty sample")
    if sample.n != graph.n:
        raise ValueError("sample universe does not match the graph")
    n = graph.n
    weight = np.zeros(n)
    for j, count in sample.multiplicities().items():
        weight[j] = count * bundle.bits[j]
    adj = graph.neighbors()
    scale = n / sample.size
    e_hat = tuple(
        float(min(n, max(0.0, scale * sum(weight[j] for j in adj[i])))) for i in range(n)
    )
    return CutEstimates(
        e_hat=e_hat, n=n, sample_size=sample.size, epsilon_prime=epsilon_prime
    )


def estimate_slack(
    d: int, c: float, epsilon: float, error_guess: float, sample_size: int, n: int
) -> float:
    """Estimation slack ((2ce+1)*d*eps + 2ce*d*error/|S|) * n^d; zero at d=0."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return 0.0
    ce = c * E
    return ((2 * ce + 1) * d * epsilon + 2 * ce * d * error_guess / sample_size) * float(n) ** d


class RecursiveEstimator:
    """Memoized recursive estimator over one bundle.

    Identical sub-polynomials (keyed by content) are estimated once, so the
    naively exponential recursion collapses and shared suffixes reuse the
    exact same estimate, as the feasibility arguments assume.
    """

    def __init__(self, bundle: PredictionBundle):
        self.bundle = bundle
        self._cache: dict[tuple, float] = {}
        sample = bundle.sample
        self._scale = sample.n / sample.size
        self._weighted_bits = [
            (i, count * bundle.bits[i])
            for i, count in sorted(sample.multiplicities().items())
        ]

    def estimate(self, p: SmoothPolynomial) -> float:
        key = (p.n, p.constant, p.monomials)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if p.degree == 0:
            value = p.constant
        else:
            dec = decompose(p)
            total = 0.0
            for i, wbit in self._weighted_bits:
                if wbit == 0:
                    continue
                part = dec.parts[i]
                if part.is_zero():
                    continue
                total += wbit * self.estimate(part)
            value = dec.t + self._scale * total
        self._cache[key] = value
        return value


def evaluate_recursive(
    p: SmoothPolynomial,
    bundle: PredictionBundle,
    epsilon: float = 0.0,
    error_guess: float = 0.0,
    estimator: RecursiveEstimator | None = None,
    c: float | None = None,
) -> EvalEstimate:
    """Estimate p at the hidden optimum from predicted bits (Evaluate recursion).

    The reported slack bound instantiates the estimation-slack formula at
    this polynomial's degree; pass c to pin the smoothness constant of an
    enclosing program instead of this polynomial's own certificate.
    """
    if bundle.sample.n != p.n:
        raise ValueError("bundle universe does not match the polynomial")
    if estimator is None:
        estimator = RecursiveEstimator(bundle)
    value = estimator.estimate(p)
    if c is None:
        from .polynomial import smoothness

        c = smoothness(p).c
    bound = estimate_slack(p.degree, c, epsilon, error_guess, bundle.sample.size, p.n)
    return EvalEstimate(value=value, degree=p.degree, slack_bound=bound)

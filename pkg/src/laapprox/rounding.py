"""Independent Bernoulli rounding with concentration budgets and retries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .polynomial import E, SmoothPolynomial, evaluate_exact


@dataclass(frozen=True)
class RoundingOutcome:
    z: tuple[int, ...]
    trials_used: int
    checks: tuple[tuple[float, float], ...]  # (observed deviation, budget) per form
    within_budgets: bool


def round_once(y, seed: int) -> np.ndarray:
    """Set z_i = 1 with probability y_i, independently; deterministic per seed."""
    vec = np.asarray(y, dtype=float)
    if np.any(vec < -1e-9) or np.any(vec > 1 + 1e-9):
        raise ValueError("fractional vector must lie in [0, 1]")
    vec = np.clip(vec, 0.0, 1.0)
    rng = np.random.default_rng(seed)
    return (rng.random(len(vec)) < vec).astype(int)


def linear_budget(coeff_bound: float, f: float, n: int) -> float:
    """Deviation allowance c*sqrt(f*n*ln(n)) for a linear form with |a_i| <= c."""
    return coeff_bound * math.sqrt(max(0.0, f * n * math.log(n)))


def polynomial_budget(c: float, f: float, d: int, n: int) -> float:
    """Deviation allowance 2ce*sqrt(f)*d*n^(d-1/2)*sqrt(ln n) for degree-d forms."""
    return 2 * c * E * math.sqrt(f) * d * float(n) ** (d - 0.5) * math.sqrt(max(0.0, math.log(n)))


def rounding_exponent(m: int, n: int, d: int) -> float:
    """Exponent f with n^f = 2m(n+4d)n^(d-1), the high-probability budget scale."""
    if n < 2:
        return 1.0
    return math.log(2 * m * (n + 4 * d) * float(n) ** (d - 1)) / math.log(n)


def round_with_retries(
    y,
    forms: Sequence[tuple[SmoothPolynomial, float, float]],
    max_trials: int = 20,
    seed: int = 0,
) -> RoundingOutcome:
    """Round until every monitored form lands within its budget.

    forms holds (polynomial, target, budget) triples. If no trial satisfies
    every budget, the best attempt is returned flagged rather than raising:
    most budgets satisfied first, then smallest worst violation ratio.
    """
    if max_trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    vec = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
    best: tuple[int, float, tuple[int, ...], tuple[tuple[float, float], ...]] | None = None
    for trial in range(1, max_trials + 1):
        z = (rng.random(len(vec)) < vec).astype(int)
        checks = []
        satisfied = 0
        worst = 0.0
        for poly, target, budget in forms:
            deviation = abs(evaluate_exact(poly, z) - target)
            checks.append((deviation, budget))
            if deviation <= budget:
                satisfied += 1
            else:
                worst = max(worst, deviation / budget if budget > 0 else math.inf)
        outcome = (satisfied, -worst, tuple(int(b) for b in z), tuple(checks))
        if satisfied == len(forms):
            return RoundingOutcome(
                z=outcome[2], trials_used=trial, checks=outcome[3], within_budgets=True
            )
        if best is None or outcome[:2] > best[:2]:
            best = outcome
        if trial == max_trials:
            break
    assert best is not None
    return RoundingOutcome(
        z=best[2], trials_used=max_trials, checks=best[3], within_budgets=False
    )


def repair_cardinality(z, k: int, y) -> tuple[int, ...]:
    """Force exactly k ones, dropping low-y ones or adding high-y zeros.

    Ties resolve toward the lowest index, so the repair is deterministic.
    """
    bits = [int(b) for b in z]
    n = len(bits)
    if k > n or k < 0:
        raise ValueError(f"cannot select {k} of {n} vertices")
    weights = np.asarray(y, dtype=float)
    count = sum(bits)
    if count > k:
        ones = sorted((i for i in range(n) if bits[i]), key=lambda i: (weights[i], i))
        for i in ones[: count - k]:
            bits[i] = 0
    elif count < k:
        zeros = sorted((i for i in range(n) if not bits[i]), key=lambda i: (-weights[i], i))
        for i in zeros[: k - count]:
            bits[i] = 1
    return tuple(bits)

"""Recursive replacement of polynomial constraints by linear ones.

A degree-d constraint L <= p(x) <= U becomes two linear rows over estimated
sub-polynomial values plus recursively linearized interval constraints on
each sub-polynomial, with slack widths from the estimation-slack formula.
Also houses the assembled linear system for the feasibility form p(x) >= M
and the binary search that recovers the optimum from a feasibility oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .estimator import RecursiveEstimator, estimate_slack
from .polynomial import SmoothPolynomial, decompose, smoothness
from .prediction import PredictionBundle

INF = math.inf


@dataclass(frozen=True)
class LinearConstraint:
    """lower <= sum_i coeffs[i] * x_i <= upper (constants already folded in)."""

    coeffs: tuple[tuple[int, float], ...]
    lower: float
    upper: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(sorted(dict(self.coeffs).items())))
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    def value(self, x) -> float:
        return float(sum(c * x[i] for i, c in self.coeffs))

    def form_range(self) -> tuple[float, float]:
        lo = sum(min(0.0, c) for _, c in self.coeffs)
        hi = sum(max(0.0, c) for _, c in self.coeffs)
        return lo, hi


@dataclass
class LinearSystem:
    """Linear rows plus either a maximization objective or a feasibility target."""

    n: int
    constraints: list[LinearConstraint]
    objective: dict[int, float] = field(default_factory=dict)
    objective_constant: float = 0.0
    target: float | None = None


def _clamped_row(coeffs: dict[int, float], lower: float, upper: float) -> LinearConstraint:
    """Tighten bounds to the form's attainable range when that keeps them sane.

    An unsatisfiable input interval is kept verbatim so the LP reports it.
    """
    row = LinearConstraint(coeffs=tuple(coeffs.items()), lower=lower, upper=upper)
    lo, hi = row.form_range()
    clamped_lower = max(lower, lo)
    clamped_upper = min(upper, hi)
    if clamped_lower <= clamped_upper:
        return LinearConstraint(
            coeffs=row.coeffs, lower=clamped_lower, upper=clamped_upper
        )
    return row


def _linear_row(p: SmoothPolynomial, lower: float, upper: float) -> LinearConstraint:
    coeffs = p.linear_coefficients()
    return _clamped_row(coeffs, lower - p.constant, upper - p.constant)


class _Linearizer:
    def __init__(
        self,
        bundle: PredictionBundle,
        epsilon: float,
        error_guess: float,
        c: float,
        estimator: RecursiveEstimator | None = None,
    ):
        self.bundle = bundle
        self.epsilon = epsilon
        self.error_guess = error_guess
        self.c = c
        self.estimator = estimator or RecursiveEstimator(bundle)
        self.rows: list[LinearConstraint] = []
        self._emitted: set = set()
        self._expanded: set = set()

    def _slack(self, d: int) -> float:
        return estimate_slack(
            d, self.c, self.epsilon, self.error_guess, self.bundle.sample.size, self.bundle.sample.n
        )

    def _emit(self, row: LinearConstraint) -> None:
        key = (row.coeffs, row.lower, row.upper)
        if key not in self._emitted:
            self._emitted.add(key)
            self.rows.append(row)

    def run(self, p: SmoothPolynomial, lower: float, upper: float) -> dict[int, float]:
        """Linearize lower <= p <= upper; returns the top-level estimate row's
        coefficients (estimated sub-polynomial values keyed by variable)."""
        d = p.degree
        if d <= 1:
            self._emit(_linear_row(p, lower, upper))
            return p.linear_coefficients()
        key = ((p.n, p.constant, p.monomials), lower, upper)
        dec = decompose(p)
        e_hat: dict[int, float] = {}
        child_slack = self._slack(d - 1)
        already = key in self._expanded
        self._expanded.add(key)
        for i, part in enumerate(dec.parts):
            if part.is_zero():
                continue
            e_hat[i] = self.estimator.estimate(part)
            if already:
                continue
            if part.degree == 0:
                continue  # the estimate is exact, the interval check is vacuous
            lo_i = e_hat[i] - child_slack
            up_i = e_hat[i] + child_slack
            cheap_lo, cheap_hi = part.range_bounds()
            if max(lo_i, cheap_lo) <= min(up_i, cheap_hi):
                lo_i, up_i = max(lo_i, cheap_lo), min(up_i, cheap_hi)
            self.run(part, lo_i, up_i)
        slack = self._slack(d)
        self._emit(
            _clamped_row(e_hat, lower - slack - dec.t, upper + slack - dec.t)
        )
        return e_hat


def linearize(
    p: SmoothPolynomial,
    lower: float,
    upper: float,
    bundle: PredictionBundle,
    epsilon: float,
    error_guess: float = 0.0,
    c: float | None = None,
    estimator: RecursiveEstimator | None = None,
) -> list[LinearConstraint]:
    """Linear constraint family replacing lower <= p(x) <= upper.

    c defaults to p's own tight smoothness constant; callers linearizing a
    whole program pass the program-level constant instead.
    """
    if c is None:
        c = smoothness(p).c
    worker = _Linearizer(bundle, epsilon, error_guess, c, estimator)
    worker.run(p, lower, upper)
    return worker.rows


def assemble_dip(
    p: SmoothPolynomial,
    m_target: float,
    bundle: PredictionBundle,
    epsilon: float,
    error_guess: float = 0.0,
    c: float | None = None,
    estimator: RecursiveEstimator | None = None,
) -> LinearSystem:
    """Linear system for the feasibility form p(x) >= M.

    The estimated top-level row doubles as the LP objective so the solver
    lands on high-value feasible points instead of arbitrary ones.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if c is None:
        c = smoothness(p).c
    worker = _Linearizer(bundle, epsilon, error_guess, c, estimator)
    top = worker.run(p, m_target, INF)
    constant = p.constant if p.degree <= 1 else decompose(p).t
    return LinearSystem(
        n=p.n,
        constraints=worker.rows,
        objective=top,
        objective_constant=constant,
        target=m_target,
    )


@dataclass(frozen=True)
class BinarySearchResult:
    value: float
    feasible_found: bool
    probes: int


def binary_search_M(
    p: SmoothPolynomial,
    feasibility_oracle: Callable[[float], bool],
    resolution: float = 1.0,
    upper: float | None = None,
) -> BinarySearchResult:
    """Largest M in (0, upper] with a feasible oracle, to the given resolution.

    The oracle must be monotone (feasible below a threshold). The default
    upper limit is the smoothness value bound 2*c*e*n^d, raised to the
    certain coefficient-mass bound when that is larger, so the optimum is
    never searched out of range.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if upper is None:
        cert = smoothness(p)
        upper = max(cert.bound, p.range_bounds()[1])
    if upper <= 0:
        return BinarySearchResult(value=0.0, feasible_found=False, probes=0)
    hi_units = math.ceil(upper / resolution)
    lo, hi = 0, hi_units
    probes = 0
    while lo < hi:
        mid = lo + (hi - lo + 1) // 2
        probes += 1
        if feasibility_oracle(min(mid * resolution, upper)):
            lo = mid
        else:
            hi = mid - 1
    if lo == 0:
        return BinarySearchResult(value=0.0, feasible_found=False, probes=probes)
    return BinarySearchResult(
        value=min(lo * resolution, upper), feasible_found=True, probes=probes
    )

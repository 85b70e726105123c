"""Multilinear polynomials over binary variables and their smoothness data.

A polynomial is stored sparsely as a map from strictly increasing index
tuples to real coefficients plus a constant term. Repeated indices are
collapsed at construction (x_i^2 = x_i over binary inputs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

Monomial = tuple[int, ...]
E = math.e


@dataclass(frozen=True)
class SmoothPolynomial:
    n: int
    constant: float
    monomials: tuple[tuple[Monomial, float], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        merged: dict[Monomial, float] = {}
        items: Iterable
        if isinstance(self.monomials, Mapping):
            items = self.monomials.items()
        else:
            items = self.monomials
        for ids, coeff in items:
            key = tuple(sorted(set(int(i) for i in ids)))
            if not key:
                raise ValueError("empty monomial; fold it into the constant")
            if key[0] < 0 or key[-1] >= self.n:
                raise ValueError(f"monomial {key} out of range for n={self.n}")
            merged[key] = merged.get(key, 0.0) + float(coeff)
        canon = tuple(sorted((k, c) for k, c in merged.items() if c != 0.0))
        object.__setattr__(self, "monomials", canon)
        object.__setattr__(self, "constant", float(self.constant))

    @property
    def degree(self) -> int:
        return max((len(k) for k, _ in self.monomials), default=0)

    def coefficients(self) -> dict[Monomial, float]:
        return dict(self.monomials)

    def is_zero(self) -> bool:
        return self.constant == 0.0 and not self.monomials

    def linear_coefficients(self) -> dict[int, float]:
        """Coefficient map of a degree <= 1 polynomial."""
        if self.degree > 1:
            raise ValueError("polynomial is not linear")
        return {k[0]: c for k, c in self.monomials}

    def range_bounds(self) -> tuple[float, float]:
        """Cheap certain bounds on the value over [0,1]^n (each monomial in [0,1])."""
        lo = self.constant + sum(min(0.0, c) for _, c in self.monomials)
        hi = self.constant + sum(max(0.0, c) for _, c in self.monomials)
        return lo, hi

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.constant,
            "monomials": [[list(k), c] for k, c in self.monomials],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SmoothPolynomial":
        return cls(
            n=int(data["n"]),
            constant=float(data["t"]),
            monomials=tuple((tuple(int(i) for i in k), float(c)) for k, c in data["monomials"]),
        )


def evaluate_exact(p: SmoothPolynomial, x) -> float:
    """Value of p at x in [0,1]^n (multilinear extension for fractional x)."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (p.n,):
        raise ValueError(f"expected {p.n} entries, got shape {vec.shape}")
    if np.any(vec < -1e-9) or np.any(vec > 1 + 1e-9):
        raise ValueError("entries must lie in [0, 1]")
    vec = np.clip(vec, 0.0, 1.0)
    total = p.constant
    for ids, coeff in p.monomials:
        term = coeff
        for i in ids:
            term *= vec[i]
            if term == 0.0:
                break
        total += term
    return float(total)


@dataclass(frozen=True)
class SmoothnessCertificate:
    c: float
    bound: float


def smoothness(p: SmoothPolynomial) -> SmoothnessCertificate:
    """Tightest constant c with every |coefficient| <= c * n^(d-1), and the
    resulting absolute-value bound 2*c*e*n^d for binary inputs."""
    d = p.degree
    if d == 0 or p.n == 0:
        return SmoothnessCertificate(c=0.0, bound=0.0)
    scale = float(p.n) ** (d - 1)
    c = max(abs(coeff) for _, coeff in p.monomials) / scale
    return SmoothnessCertificate(c=c, bound=2.0 * c * E * float(p.n) ** d)


@dataclass(frozen=True)
class Decomposition:
    """p(x) = t + sum_i x_i * p_i(x) with p_i touching only indices > i."""

    t: float
    parts: tuple[SmoothPolynomial, ...]

    def reassemble(self) -> SmoothPolynomial:
        monomials: list[tuple[Monomial, float]] = []
        for i, part in enumerate(self.parts):
            if part.constant != 0.0:
                monomials.append(((i,), part.constant))
            for ids, coeff in part.monomials:
                monomials.append(((i, *ids), coeff))
        n = len(self.parts)
        return SmoothPolynomial(n=n, constant=self.t, monomials=tuple(monomials))


def decompose(p: SmoothPolynomial) -> Decomposition:
    """Split off each monomial to the part indexed by its smallest variable."""
    constants = [0.0] * p.n
    parts_monomials: list[list[tuple[Monomial, float]]] = [[] for _ in range(p.n)]
    for ids, coeff in p.monomials:
        head, rest = ids[0], ids[1:]
        if rest:
            parts_monomials[head].append((rest, coeff))
        else:
            constants[head] += coeff
    parts = tuple(
        SmoothPolynomial(n=p.n, constant=constants[i], monomials=tuple(parts_monomials[i]))
        for i in range(p.n)
    )
    return Decomposition(t=p.constant, parts=parts)


def linear_polynomial(n: int, coeffs: Mapping[int, float], constant: float = 0.0) -> SmoothPolynomial:
    return SmoothPolynomial(
        n=n, constant=constant, monomials=tuple(((i,), c) for i, c in coeffs.items())
    )


def random_smooth_polynomial(
    n: int,
    d: int,
    c: float,
    seed: int,
    density: float = 1.0,
    integer: bool = False,
) -> SmoothPolynomial:
    """Random degree-d polynomial whose tight smoothness constant is c.

    Degree-i coefficients are drawn within +-c*n^(d-i); one linear anchor
    coefficient is pinned at magnitude c*n^(d-1). That coefficient profile
    keeps the total coefficient mass below c*e*n^d, so the 2*c*e*n^d value
    bound provably holds for everything this generator returns.
    """
    if d < 1 or n < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = np.random.default_rng(seed)

    def draw(limit: float) -> float:
        if integer:
            cap = max(1, int(limit))
            return float(rng.integers(-cap, cap + 1))
        return float(rng.uniform(-limit, limit))

    monomials: list[tuple[Monomial, float]] = []
    from itertools import combinations

    for size in range(1, d + 1):
        limit = c * float(n) ** (d - size)
        for ids in combinations(range(n), size):
            if rng.random() > density:
                continue
            coeff = draw(limit)
            if coeff != 0.0:
                monomials.append((ids, coeff))
    anchor_var = int(rng.integers(0, n))
    anchor_mag = c * float(n) ** (d - 1)
    if integer:
        anchor_mag = float(max(1, round(anchor_mag)))
    anchor_sign = 1.0 if rng.random() < 0.5 else -1.0
    monomials = [(ids, co) for ids, co in monomials if ids != (anchor_var,)]
    monomials.append(((anchor_var,), anchor_sign * anchor_mag))
    constant = draw(c * float(n) ** (d - 1))
    return SmoothPolynomial(n=n, constant=constant, monomials=tuple(monomials))

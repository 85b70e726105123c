"""Exact brute-force solvers for desk-scale ground truth.

Scans all 2^n binary vectors in Gray-code order, updating the objective and
every constraint polynomial incrementally on each single-bit flip. Returns
the lexicographically smallest maximizer so simulated predictors have one
well-defined truth to measure error against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instances import CnfFormula, Graph, Hypergraph, Instance
from .polynomial import SmoothPolynomial
from . import reductions

MAX_EXHAUSTIVE_N = 26


class OracleScaleError(ValueError):
    """Instance exceeds the exhaustive-scan cap."""


class NoFeasibleVectorError(RuntimeError):
    """No binary vector satisfies the constraints."""


class _IncrementalPolynomial:
    """Tracks a polynomial's value under single-bit flips of a binary point."""

    def __init__(self, p: SmoothPolynomial):
        self.per_var: list[list[tuple[float, tuple[int, ...]]]] = [[] for _ in range(p.n)]
        for ids, coeff in p.monomials:
            for pos, i in enumerate(ids):
                others = ids[:pos] + ids[pos + 1 :]
                self.per_var[i].append((coeff, others))
        self.value = p.constant  # value at the all-zeros point

    def flip(self, i: int, new_bit: int, x: list[int]) -> None:
        delta = 0.0
        for coeff, others in self.per_var[i]:
            term = coeff
            for j in others:
                if not x[j]:
                    term = 0.0
                    break
            delta += term
        self.value += delta if new_bit else -delta


def brute_force_max(
    p: SmoothPolynomial,
    constraints: list[tuple[SmoothPolynomial, float, float]] | None = None,
    tolerance: float = 1e-9,
) -> tuple[tuple[int, ...], float]:
    """Exhaustive maximum of p over feasible binary vectors.

    Ties break toward the lexicographically smallest vector. Raises when n
    exceeds the scan cap or nothing is feasible.
    """
    n = p.n
    if n > MAX_EXHAUSTIVE_N:
        raise OracleScaleError(f"n={n} exceeds the exhaustive cap {MAX_EXHAUSTIVE_N}")
    trackers = [_IncrementalPolynomial(p)]
    bounds: list[tuple[float, float]] = [(-float("inf"), float("inf"))]
    for poly, lo, up in constraints or []:
        trackers.append(_IncrementalPolynomial(poly))
        bounds.append((lo, up))

    x = [0] * n
    best_x: tuple[int, ...] | None = None
    best_value = -float("inf")

    def consider() -> None:
        nonlocal best_x, best_value
        for tracker, (lo, up) in zip(trackers[1:], bounds[1:]):
            if not lo - tolerance <= tracker.value <= up + tolerance:
                return
        value = trackers[0].value
        if value > best_value:
            best_value, best_x = value, tuple(x)
        elif value == best_value and best_x is not None and tuple(x) < best_x:
            best_x = tuple(x)

    consider()
    for step in range(1, 1 << n):
        i = (step & -step).bit_length() - 1  # Gray code: flip the ctz bit
        x[i] ^= 1
        for tracker in trackers:
            tracker.flip(i, x[i], x)
        consider()

    if best_x is None:
        raise NoFeasibleVectorError("no binary vector satisfies the constraints")
    return best_x, best_value


@dataclass(frozen=True)
class OracleReport:
    solution: tuple[int, ...]
    value: float


def solve_instance_exactly(
    instance: Instance, problem_kind: str, k: int | None = None
) -> OracleReport:
    """Brute-force optimum of one of the application problems."""
    kind = problem_kind.lower()
    if kind == "maxcut":
        assert isinstance(instance, Graph)
        z, value = brute_force_max(reductions.maxcut_polynomial(instance))
    elif kind in ("dicut", "maxdicut"):
        assert isinstance(instance, Graph)
        z, value = brute_force_max(reductions.maxdicut_polynomial(instance))
    elif kind in ("hypercut", "maxhypercut"):
        assert isinstance(instance, Hypergraph)
        z, value = brute_force_max(reductions.hypercut_polynomial(instance))
    elif kind in ("maxksat", "ksat", "sat"):
        assert isinstance(instance, CnfFormula)
        z, value = brute_force_max(reductions.maxksat_polynomial(instance))
    elif kind in ("densest", "densest_subgraph", "kdensest"):
        assert isinstance(instance, Graph)
        if k is None:
            raise ValueError("densest subgraph needs k")
        pip = reductions.densest_subgraph_pip(instance, k)
        z, value = brute_force_max(pip.objective, list(pip.constraints))
    else:
        raise ValueError(f"unknown problem kind {problem_kind!r}")
    return OracleReport(solution=z, value=value)


def canonical_optimum(instance: Instance, problem_kind: str, k: int | None = None) -> tuple[int, ...]:
    """The lexicographically smallest optimal vector; fixes the predictors' truth."""
    return solve_instance_exactly(instance, problem_kind, k=k).solution

"""Encodings of the application problems as smooth polynomials / PIPs.

Every encoding satisfies: the polynomial value at a binary vector equals the
problem-native objective (cut edges, satisfied clauses, induced edges), so
solutions decode by reading the bits directly.
"""

from __future__ import annotations

import warnings
from itertools import combinations

from .instances import CnfFormula, Graph, Hypergraph
from .polynomial import Monomial, SmoothPolynomial


def maxcut_polynomial(graph: Graph) -> SmoothPolynomial:
    """Cut-counting polynomial sum_i x_i * (|N(i)| - sum_{j in N(i)} x_j).

    A cut edge {i,j} contributes exactly once, from its endpoint on the
    x=1 side, so the value is the plain cut size.
    """
    if graph.directed:
        raise ValueError("max cut expects an undirected graph")
    monomials: list[tuple[Monomial, float]] = []
    deg = graph.degrees()
    for i in range(graph.n):
        if deg[i]:
            monomials.append(((i,), float(deg[i])))
    for u, v in graph.edges:
        monomials.append(((u, v), -2.0))
    return SmoothPolynomial(n=graph.n, constant=0.0, monomials=tuple(monomials))


def maxdicut_polynomial(graph: Graph) -> SmoothPolynomial:
    """Directed-cut polynomial sum_{(i,j) in E} (1 - x_i) x_j.

    Counts edges leaving the zero side into the one side; the solution set
    is T = {i : x_i = 1}.
    """
    if not graph.directed:
        raise ValueError("max dicut expects a directed graph")
    monomials: list[tuple[Monomial, float]] = []
    for i, j in graph.edges:
        monomials.append(((j,), 1.0))
        monomials.append((tuple(sorted((i, j))), -1.0))
    return SmoothPolynomial(n=graph.n, constant=0.0, monomials=tuple(monomials))


def hypercut_polynomial(hypergraph: Hypergraph) -> SmoothPolynomial:
    """Per-edge terms 1 - prod x_i - prod (1 - x_i), summed over edges.

    A term is 1 exactly when the edge has vertices on both sides. Singleton
    edges contribute identically zero and are reported as a warning.
    """
    constant = 0.0
    monomials: list[tuple[Monomial, float]] = []
    singletons = sum(1 for e in hypergraph.edges if len(e) == 1)
    if singletons:
        warnings.warn(
            f"{singletons} singleton edge(s) can never be cut and contribute 0",
            stacklevel=2,
        )
    for edge in hypergraph.edges:
        if len(edge) == 1:
            continue
        constant += 1.0
        monomials.append((edge, -1.0))
        # expand -prod(1 - x_i) = -sum_T (-1)^|T| prod_{i in T} x_i
        for size in range(len(edge) + 1):
            for subset in combinations(edge, size):
                coeff = -((-1.0) ** size)
                if subset:
                    monomials.append((subset, coeff))
                else:
                    constant += coeff
    return SmoothPolynomial(n=hypergraph.n, constant=constant, monomials=tuple(monomials))


def maxksat_polynomial(formula: CnfFormula) -> SmoothPolynomial:
    """Satisfied-clause counter: clause C adds 1 - prod over its literals of
    (1 - lit), where lit is x_i for a positive and (1 - x_i) for a negative
    literal; the product is the indicator that C is falsified."""
    constant = 0.0
    monomials: list[tuple[Monomial, float]] = []
    for clause in formula.clauses:
        constant += 1.0
        # falsified(C) = prod_{pos i} (1 - x_i) * prod_{neg j} x_j, expanded
        terms: list[tuple[Monomial, float]] = [((), 1.0)]
        for var, sign in clause:
            new_terms: list[tuple[Monomial, float]] = []
            for ids, coeff in terms:
                if sign > 0:
                    new_terms.append((ids, coeff))
                    new_terms.append(((*ids, var), -coeff))
                else:
                    new_terms.append(((*ids, var), coeff))
            terms = new_terms
        for ids, coeff in terms:
            if ids:
                monomials.append((ids, -coeff))
            else:
                constant += -coeff
    return SmoothPolynomial(n=formula.n, constant=constant, monomials=tuple(monomials))


def densest_subgraph_pip(graph: Graph, k: int):
    """PIP: maximize induced edge count sum_{{i,j} in E} x_i x_j with sum x_i = k."""
    from .pipelines import PipSpec
    from .polynomial import linear_polynomial

    if graph.directed:
        raise ValueError("densest subgraph expects an undirected graph")
    if not 1 <= k <= graph.n:
        raise ValueError(f"need 1 <= k <= {graph.n}")
    objective = SmoothPolynomial(
        n=graph.n,
        constant=0.0,
        monomials=tuple((e, 1.0) for e in graph.edges),
    )
    cardinality = linear_polynomial(graph.n, {i: 1.0 for i in range(graph.n)})
    return PipSpec(
        objective=objective,
        constraints=((cardinality, float(k), float(k)),),
        cardinality=k,
    )


def dense_lower_bound(problem_kind: str, **params) -> float:
    """Cited optimum lower bounds used to turn additive slack into a ratio.

    maxcut / dicut: delta*n^2/4. densest: gamma^2*delta*n^2/2 with
    gamma = k/n. maxksat: (1 - 2^-k) * (m - correction), correction
    defaulting to the number of clauses narrower than k. hypercut: expected
    value of a uniform random assignment, sum over edges of 1 - 2^(1-|e|).
    """
    kind = problem_kind.lower()
    if kind in ("maxcut", "dicut", "maxdicut"):
        delta, n = params["delta"], params["n"]
        return delta * n * n / 4.0
    if kind in ("densest", "densest_subgraph", "kdensest"):
        delta, n = params["delta"], params["n"]
        gamma = params.get("gamma")
        if gamma is None:
            gamma = params["k"] / n
        return gamma * gamma * delta * n * n / 2.0
    if kind in ("maxksat", "ksat", "sat"):
        k, m = params["k"], params["m"]
        correction = params.get("correction", 0.0)
        return (1.0 - 2.0**-k) * (m - correction)
    if kind in ("hypercut", "maxhypercut"):
        edge_sizes = params["edge_sizes"]
        return float(sum(1.0 - 2.0 ** (1 - s) for s in edge_sizes if s >= 2))
    raise ValueError(f"unknown problem kind {problem_kind!r}")


# ---------------------------------------------------------------------------
# Native objective evaluations (decoders); pipelines re-evaluate through
# these instead of trusting LP objective values.


def cut_value(graph: Graph, x) -> int:
    return sum(1 for u, v in graph.edges if int(x[u]) != int(x[v]))


def dicut_value(graph: Graph, x) -> int:
    return sum(1 for u, v in graph.edges if int(x[u]) == 0 and int(x[v]) == 1)


def hypercut_value(hypergraph: Hypergraph, x) -> int:
    total = 0
    for edge in hypergraph.edges:
        values = {int(x[v]) for v in edge}
        if len(values) == 2:
            total += 1
    return total


def satisfied_clauses(formula: CnfFormula, x) -> int:
    total = 0
    for clause in formula.clauses:
        if any((int(x[v]) == 1) == (s > 0) for v, s in clause):
            total += 1
    return total


def induced_edges(graph: Graph, x) -> int:
    return sum(1 for u, v in graph.edges if int(x[u]) == 1 and int(x[v]) == 1)

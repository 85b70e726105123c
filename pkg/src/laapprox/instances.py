"""Problem instances (graphs, hypergraphs, CNF formulas), density, and file I/O.

Vertices and variables are 0-indexed everywhere inside the library; the
DIMACS readers and writers convert from/to 1-indexing at the boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np


class ParseError(ValueError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateInstanceError(ValueError):
    """Instance too small for its density to be defined."""


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1; edge pairs are ordered iff directed."""

    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if self.directed else (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[set[int]]:
        """Undirected adjacency sets (both endpoints), valid for either kind."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph of dimension d: every edge is a vertex set of size 1..d."""

    n: int
    d: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        canon = []
        for e in self.edges:
            verts = tuple(sorted(set(e)))
            if len(verts) != len(e):
                raise ValueError(f"repeated vertex in edge {e}")
            if not 1 <= len(verts) <= self.d:
                raise ValueError(f"edge {e} has size outside 1..{self.d}")
            if verts and not (0 <= verts[0] and verts[-1] < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            canon.append(verts)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CnfFormula:
    """CNF with clauses of width 1..k; a literal is (variable, sign in {+1,-1})."""

    n: int
    k: int
    clauses: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("clause width bound must be >= 1")
        canon = []
        for clause in self.clauses:
            lits = sorted(set((int(v), int(s)) for v, s in clause))
            polarity: dict[int, int] = {}
            for v, s in lits:
                if not 0 <= v < self.n:
                    raise ValueError(f"variable {v} out of range for n={self.n}")
                if s not in (1, -1):
                    raise ValueError(f"bad sign {s} for variable {v}")
                if polarity.get(v, s) != s:
                    raise ValueError(f"clause contains both polarities of x{v}")
                polarity[v] = s
            if not 1 <= len(lits) <= self.k:
                raise ValueError(f"clause width {len(lits)} outside 1..{self.k}")
            canon.append(tuple(lits))
        object.__setattr__(self, "clauses", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.clauses)


Instance = Graph | Hypergraph | CnfFormula


@dataclass(frozen=True)
class DensityReport:
    delta: float
    dense_threshold_met: bool


def density(instance: Instance, threshold: float = 0.0) -> DensityReport:
    """Density of an instance per its kind; threshold sets dense_threshold_met.

    Undirected graphs: 2|E|/(n(n-1)); directed: |E|/(n(n-1));
    hypergraphs: |E|/n^d; CNF: m/n^k.
    """
    if isinstance(instance, Graph):
        if instance.n < 2:
            raise DegenerateInstanceError(f"graph density undefined for n={instance.n}")
        pairs = instance.n * (instance.n - 1)
        delta = instance.m / pairs if instance.directed else 2 * instance.m / pairs
    elif isinstance(instance, Hypergraph):
        if instance.n < 1:
            raise DegenerateInstanceError("hypergraph density undefined for n=0")
        delta = instance.m / instance.n**instance.d
    elif isinstance(instance, CnfFormula):
        if instance.n < 1:
            raise DegenerateInstanceError("CNF density undefined for n=0")
        delta = instance.m / instance.n**instance.k
    else:
        raise TypeError(f"unsupported instance type {type(instance)!r}")
    return DensityReport(delta=delta, dense_threshold_met=delta >= threshold)


# ---------------------------------------------------------------------------
# DIMACS I/O


def parse_dimacs_graph(text: str, directed: bool = False) -> Graph:
    """Parse DIMACS edge format ("p edge n m" header, "e u v" lines, 1-indexed)."""
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem header", lineno)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                n, declared_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"non-integer sizes in header {line!r}", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative size in header", lineno)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge before problem header", lineno)
            if len(fields) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range in {line!r}", lineno)
            if u == v:
                raise ParseError(f"self-loop in {line!r}", lineno)
            e = (u - 1, v - 1) if directed else (min(u, v) - 1, max(u, v) - 1)
            if e in seen:
                raise ParseError(f"duplicate edge in {line!r}", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing problem header")
    if declared_m != len(edges):
        raise ParseError(f"header declares {declared_m} edges but {len(edges)} given")
    return Graph(n=n, edges=tuple(edges), directed=directed)


def serialize_dimacs_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {graph.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses are zero-terminated literal runs."""
    n = None
    declared_m = None
    clauses: list[tuple[tuple[int, int], ...]] = []
    current: list[tuple[int, int]] = []
    clause_polarity: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem header", lineno)
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                n, declared_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"non-integer sizes in header {line!r}", lineno) from None
            continue
        if n is None:
            raise ParseError("clause before problem header", lineno)
        for tok in fields:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"non-integer literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(tuple(sorted(set(current))))
                current = []
                clause_polarity = {}
                continue
            var = abs(lit) - 1
            if var >= n:
                raise ParseError(f"variable {abs(lit)} out of range (n={n})", lineno)
            sign = 1 if lit > 0 else -1
            if clause_polarity.get(var, sign) != sign:
                raise ParseError(f"clause contains both x{abs(lit)} and its negation", lineno)
            clause_polarity[var] = sign
            current.append((var, sign))
    if n is None:
        raise ParseError("missing problem header")
    if current:
        raise ParseError("truncated clause (missing 0 terminator)")
    if declared_m != len(clauses):
        raise ParseError(f"header declares {declared_m} clauses but {len(clauses)} given")
    k = max((len(cl) for cl in clauses), default=1)
    return CnfFormula(n=n, k=k, clauses=tuple(clauses))


def serialize_dimacs_cnf(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.n} {formula.m}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(s * (v + 1)) for v, s in clause) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON I/O (schema: {"kind", "n", "edges"/"clauses", "directed", "d"/"k"})


def instance_to_dict(instance: Instance) -> dict:
    if isinstance(instance, Graph):
        return {
            "kind": "graph",
            "n": instance.n,
            "directed": instance.directed,
            "edges": [list(e) for e in instance.edges],
        }
    if isinstance(instance, Hypergraph):
        return {
            "kind": "hypergraph",
            "n": instance.n,
            "d": instance.d,
            "edges": [list(e) for e in instance.edges],
        }
    if isinstance(instance, CnfFormula):
        return {
            "kind": "cnf",
            "n": instance.n,
            "k": instance.k,
            "clauses": [[[v, s] for v, s in cl] for cl in instance.clauses],
        }
    raise TypeError(f"unsupported instance type {type(instance)!r}")


def instance_from_dict(data: dict) -> Instance:
    kind = data.get("kind")
    if kind == "graph":
        return Graph(
            n=int(data["n"]),
            edges=tuple((int(u), int(v)) for u, v in data["edges"]),
            directed=bool(data.get("directed", False)),
        )
    if kind == "hypergraph":
        return Hypergraph(
            n=int(data["n"]),
            d=int(data["d"]),
            edges=tuple(tuple(int(v) for v in e) for e in data["edges"]),
        )
    if kind == "cnf":
        return CnfFormula(
            n=int(data["n"]),
            k=int(data["k"]),
            clauses=tuple(tuple((int(v), int(s)) for v, s in cl) for cl in data["clauses"]),
        )
    raise ParseError(f"unknown instance kind {kind!r}")


def instance_to_json(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), sort_keys=True)


def instance_from_json(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return instance_from_dict(data)


# ---------------------------------------------------------------------------
# Generators (experiment support; exact edge counts so density targets are
# met deterministically)


def _pair_from_index(idx: int, n: int) -> tuple[int, int]:
    # idx ranges over the upper triangle in row-major order
    u = 0
    remaining = idx
    row = n - 1
    while remaining >= row:
        remaining -= row
        row -= 1
        u += 1
    return (u, u + 1 + remaining)


def generate_dense_graph(n: int, delta: float, seed: int, directed: bool = False) -> Graph:
    """Uniform graph with exactly the edge count forced by the density target."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 0 < delta <= 1:
        raise ValueError("need 0 < delta <= 1")
    rng = np.random.default_rng(seed)
    if directed:
        total = n * (n - 1)
        m = math.ceil(delta * total)
        chosen = rng.choice(total, size=m, replace=False)
        edges = []
        for idx in sorted(int(i) for i in chosen):
            u, rest = divmod(idx, n - 1)
            v = rest if rest < u else rest + 1
            edges.append((u, v))
    else:
        total = n * (n - 1) // 2
        m = math.ceil(delta * total)
        chosen = rng.choice(total, size=m, replace=False)
        edges = [_pair_from_index(int(i), n) for i in sorted(int(i) for i in chosen)]
    return Graph(n=n, edges=tuple(edges), directed=directed)


def generate_planted_maxcut(n: int, delta: float, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Random bipartite graph with a known optimal cut.

    All edges cross a hidden balanced bipartition, so the max cut equals the
    edge count and the returned indicator vector attains it. Requires
    delta <= n / (2(n-1)) so enough cross pairs exist.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    m = math.ceil(delta * n * (n - 1) / 2)
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    side_b = set(int(v) for v in perm[n // 2 :])
    cross = [(u, v) for u in range(n) for v in range(u + 1, n) if (u in side_b) != (v in side_b)]
    if m > len(cross):
        raise ValueError(f"delta={delta} too dense for a bipartite plant on n={n}")
    chosen = rng.choice(len(cross), size=m, replace=False)
    edges = tuple(cross[int(i)] for i in sorted(int(i) for i in chosen))
    # canonical truth: vertex 0's side is labelled 0
    flip = 0 in side_b
    truth = tuple(1 - (v in side_b) if flip else int(v in side_b) for v in range(n))
    return Graph(n=n, edges=edges), truth


def generate_dense_hypergraph(n: int, d: int, delta: float, seed: int) -> Hypergraph:
    """Hypergraph with exactly ceil(delta * n^d) distinct size-d edges."""
    if d < 2 or n < d:
        raise ValueError("need n >= d >= 2")
    m = math.ceil(delta * n**d)
    total = math.comb(n, d)
    if m > total:
        raise ValueError(f"delta={delta} exceeds the {total} available size-{d} edges")
    rng = np.random.default_rng(seed)
    edges: set[tuple[int, ...]] = set()
    while len(edges) < m:
        edge = tuple(sorted(int(v) for v in rng.choice(n, size=d, replace=False)))
        edges.add(edge)
    return Hypergraph(n=n, d=d, edges=tuple(sorted(edges)))


def generate_dense_cnf(n: int, k: int, delta: float, seed: int) -> CnfFormula:
    """CNF with exactly ceil(delta * n^k) distinct width-k clauses."""
    if k < 1 or n < k:
        raise ValueError("need n >= k >= 1")
    m = math.ceil(delta * n**k)
    total = math.comb(n, k) * 2**k
    if m > total:
        raise ValueError(f"delta={delta} exceeds the {total} distinct width-{k} clauses")
    rng = np.random.default_rng(seed)
    clauses: set[tuple[tuple[int, int], ...]] = set()
    while len(clauses) < m:
        variables = sorted(int(v) for v in rng.choice(n, size=k, replace=False))
        signs = rng.integers(0, 2, size=k)
        clause = tuple((v, 1 if s else -1) for v, s in zip(variables, signs))
        clauses.add(clause)
    return CnfFormula(n=n, k=k, clauses=tuple(sorted(clauses)))

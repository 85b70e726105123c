"""Dense LP solver for the relaxations: revised simplex with Bland's rule.

Problems are maximizations over the box [0,1]^n with two-sided linear
constraints. Two-sided rows are expanded into one-sided pairs, upper box
bounds become rows, and feasibility is certified by a phase-1 artificial
objective. No external solver is involved.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .linearize import LinearConstraint, LinearSystem

FEAS_TOL = 1e-7
PIVOT_TOL = 1e-9


@dataclass
class LpProblem:
    n: int
    objective: dict[int, float]
    constraints: list[LinearConstraint]
    objective_constant: float = 0.0

    def __post_init__(self):
        for i, coef in self.objective.items():
            if not 0 <= i < self.n or not math.isfinite(coef):
                raise ValueError(f"bad objective term {coef} * x{i}")


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded | failed
    x: np.ndarray | None = None
    objective_value: float | None = None


def from_system(system: LinearSystem) -> LpProblem:
    return LpProblem(
        n=system.n,
        objective=dict(system.objective),
        constraints=list(system.constraints),
        objective_constant=system.objective_constant,
    )


def _one_sided_rows(problem: LpProblem) -> tuple[np.ndarray, np.ndarray]:
    """Rows a.x <= b covering constraints and the x_i <= 1 box bounds."""
    rows = []
    rhs = []
    for con in problem.constraints:
        dense = np.zeros(problem.n)
        for i, c in con.coeffs:
            dense[i] = c
        if math.isfinite(con.upper):
            rows.append(dense)
            rhs.append(con.upper)
        if math.isfinite(con.lower):
            rows.append(-dense)
            rhs.append(-con.lower)
    for i in range(problem.n):
        box = np.zeros(problem.n)
        box[i] = 1.0
        rows.append(box)
        rhs.append(1.0)
    return np.array(rows), np.array(rhs)


class _Simplex:
    """Revised simplex on A x = b, x >= 0 with an explicit basis inverse."""

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.a = a
        self.b = b.copy()
        self.m, self.total = a.shape
        self.basis = np.array(basis, dtype=int)
        self._refactor()

    def _refactor(self) -> None:
        self.b_inv = np.linalg.inv(self.a[:, self.basis])
        self.xb = np.maximum(self.b_inv @ self.b, 0.0)

    def maximize(self, c: np.ndarray, max_iters: int) -> str:
        in_basis = np.zeros(self.total, dtype=bool)
        in_basis[self.basis] = True
        for it in range(max_iters):
            if it and it % 64 == 0:
                try:
                    self._refactor()
                except np.linalg.LinAlgError:
                    return "failed"
            y = c[self.basis] @ self.b_inv
            reduced = c - y @ self.a
            eligible = np.flatnonzero((reduced > PIVOT_TOL) & ~in_basis)
            if eligible.size == 0:
                return "optimal"
            entering = int(eligible[0])  # Bland: smallest index
            direction = self.b_inv @ self.a[:, entering]
            positive = direction > PIVOT_TOL
            if not positive.any():
                return "unbounded"
            ratios = np.where(positive, self.xb / np.where(positive, direction, 1.0), math.inf)
            best = float(ratios.min())
            ties = np.flatnonzero(ratios <= best + 1e-12)
            leaving_row = int(ties[np.argmin(self.basis[ties])])  # Bland tie-break
            pivot = direction[leaving_row]
            in_basis[self.basis[leaving_row]] = False
            in_basis[entering] = True
            self.basis[leaving_row] = entering
            self.b_inv[leaving_row] /= pivot
            self.xb[leaving_row] /= pivot
            col = direction.copy()
            col[leaving_row] = 0.0
            self.b_inv -= np.outer(col, self.b_inv[leaving_row])
            self.xb -= col * self.xb[leaving_row]
            self.xb = np.maximum(self.xb, 0.0)
        return "failed"

    def drop_artificials(self, first_artificial: int) -> bool:
        """Pivot phase-1 artificials out of the basis; drop redundant rows."""
        keep = np.ones(self.m, dtype=bool)
        for row in range(self.m):
            if self.basis[row] < first_artificial:
                continue
            tableau_row = self.b_inv[row] @ self.a[:, :first_artificial]
            in_basis = set(int(v) for v in self.basis)
            candidates = [
                int(j)
                for j in np.flatnonzero(np.abs(tableau_row) > 1e-8)
                if int(j) not in in_basis
            ]
            if candidates:
                j = candidates[0]
                direction = self.b_inv @ self.a[:, j]
                pivot = direction[row]
                self.basis[row] = j
                self.b_inv[row] /= pivot
                self.xb[row] /= pivot
                col = direction.copy()
                col[row] = 0.0
                self.b_inv -= np.outer(col, self.b_inv[row])
                self.xb -= col * self.xb[row]
            else:
                keep[row] = False
        self.a = self.a[keep][:, :first_artificial]
        self.b = self.b[keep]
        self.basis = self.basis[keep]
        self.m, self.total = self.a.shape
        try:
            self._refactor()
        except np.linalg.LinAlgError:
            return False
        return True


def solve_lp(problem: LpProblem, tol: float = FEAS_TOL) -> LpSolution:
    """Solve the boxed LP; the returned status is certified, never guessed.

    Numerical breakdown yields status "failed" rather than a wrong optimum.
    """
    for con in problem.constraints:
        for _, c in con.coeffs:
            if not math.isfinite(c):
                raise ValueError("non-finite constraint coefficient")
    rows, rhs = _one_sided_rows(problem)
    m, n = rows.shape
    negative = rhs < 0
    signs = np.where(negative, -1.0, 1.0)
    eq_rows = rows * signs[:, None]
    eq_rhs = rhs * signs
    slack = np.diag(signs)
    n_art = int(negative.sum())
    art_cols = np.zeros((m, n_art))
    art_cols[np.flatnonzero(negative), np.arange(n_art)] = 1.0
    a_full = np.hstack([eq_rows, slack, art_cols])
    first_artificial = n + m

    basis = []
    k = 0
    for i in range(m):
        if negative[i]:
            basis.append(first_artificial + k)
            k += 1
        else:
            basis.append(n + i)

    simplex = _Simplex(a_full, eq_rhs, basis)
    max_iters = 4000 + 40 * (m + n)

    if n_art:
        phase1_c = np.zeros(a_full.shape[1])
        phase1_c[first_artificial:] = -1.0
        status = simplex.maximize(phase1_c, max_iters)
        if status == "failed":
            return LpSolution(status="failed")
        residual = -float(phase1_c[simplex.basis] @ simplex.xb)
        if residual > tol * (1.0 + float(np.abs(rhs).max(initial=1.0))):
            return LpSolution(status="infeasible")
        if not simplex.drop_artificials(first_artificial):
            return LpSolution(status="failed")

    c_full = np.zeros(simplex.total)
    for i, coef in problem.objective.items():
        c_full[i] = coef
    status = simplex.maximize(c_full, max_iters)
    if status == "failed":
        return LpSolution(status="failed")
    if status == "unbounded":
        return LpSolution(status="unbounded")

    x = np.zeros(n)
    for row, var in enumerate(simplex.basis):
        if var < n:
            x[var] = simplex.xb[row]
    x = np.clip(x, 0.0, 1.0)
    if not check_feasible(problem, x, tol * 10):
        return LpSolution(status="failed")
    value = float(sum(coef * x[i] for i, coef in problem.objective.items()))
    return LpSolution(status="optimal", x=x, objective_value=value + problem.objective_constant)


def check_feasible(problem: LpProblem, x, tolerance: float = FEAS_TOL) -> bool:
    vec = np.asarray(x, dtype=float)
    if vec.shape != (problem.n,):
        raise ValueError(f"expected {problem.n} entries")
    if np.any(vec < -tolerance) or np.any(vec > 1 + tolerance):
        return False
    for con in problem.constraints:
        val = con.value(vec)
        scale = 1.0 + max(_finite_abs(con.lower), _finite_abs(con.upper))
        if math.isfinite(con.lower) and val < con.lower - tolerance * scale:
            return False
        if math.isfinite(con.upper) and val > con.upper + tolerance * scale:
            return False
    return True


def _finite_abs(v: float) -> float:
    return abs(v) if math.isfinite(v) else 0.0


# ---------------------------------------------------------------------------
# CPLEX LP text subset, for manual cross-checks against external solvers


def to_lp_text(problem: LpProblem) -> str:
    def term_string(coeffs: dict[int, float]) -> str:
        parts = []
        for i in sorted(coeffs):
            c = coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {abs(c):.12g} x{i}")
        if not parts:
            return "0 x0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out

    lines = ["Maximize", f" obj: {term_string(problem.objective)}", "Subject To"]
    idx = 0
    for con in problem.constraints:
        coeffs = dict(con.coeffs)
        if math.isfinite(con.upper):
            lines.append(f" c{idx}: {term_string(coeffs)} <= {con.upper:.12g}")
            idx += 1
        if math.isfinite(con.lower):
            lines.append(f" c{idx}: {term_string(coeffs)} >= {con.lower:.12g}")
            idx += 1
    lines.append("Bounds")
    lines.extend(f" 0 <= x{i} <= 1" for i in range(problem.n))
    lines.append("End")
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*x(\d+)")


def parse_lp_text(text: str) -> LpProblem:
    """Parse the subset emitted by to_lp_text (Maximize / Subject To / Bounds)."""
    section = None
    objective: dict[int, float] = {}
    rows: dict[tuple, tuple[dict[int, float], float, float]] = {}
    n = 0
    for raw in text.splitlines():
        line = raw.split("\\")[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered in ("maximize", "subject to", "bounds", "end"):
            section = lowered
            continue
        if ":" in line:
            _, line = line.split(":", 1)
        if section == "maximize":
            objective.update(_parse_terms(line))
            n = max(n, *(i + 1 for i in objective))
        elif section == "subject to":
            m = re.search(r"(<=|>=|=)", line)
            if not m:
                raise ValueError(f"constraint without relation: {line!r}")
            lhs, rel, rhs = line[: m.start()], m.group(1), float(line[m.end() :])
            coeffs = _parse_terms(lhs)
            n = max(n, *(i + 1 for i in coeffs))
            key = tuple(sorted(coeffs.items()))
            lower, upper = -math.inf, math.inf
            if rel in ("<=", "="):
                upper = rhs
            if rel in (">=", "="):
                lower = rhs
            if key in rows:
                _, old_lower, old_upper = rows[key]
                lower, upper = max(lower, old_lower), min(upper, old_upper)
            rows[key] = (coeffs, lower, upper)
        elif section == "bounds":
            for _, _, var in _TERM_RE.findall(line):
                n = max(n, int(var) + 1)
    constraints = [
        LinearConstraint(coeffs=tuple(coeffs.items()), lower=lo, upper=up)
        for coeffs, lo, up in rows.values()
    ]
    return LpProblem(n=n, objective=objective, constraints=constraints)


def _parse_terms(text: str) -> dict[int, float]:
    coeffs: dict[int, float] = {}
    for sign, mag, var in _TERM_RE.findall(text):
        value = float(mag) if mag else 1.0
        if sign == "-":
            value = -value
        idx = int(var)
        coeffs[idx] = coeffs.get(idx, 0.0) + value
    return coeffs

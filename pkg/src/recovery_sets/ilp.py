"""The integer program bounding binary d = 2 families, solved exactly.

Seven set types cover every useful shape of recovery set for a
2-subspace: X1 (two first-row points), X2, X3 (one first-row point plus
two or three internal points), Y3 (three points in one internal row),
Y22, Y4 (four points over two or three internal rows) and Y5 (five
points over five rows).  Three counting constraints bound them; the
maximum of the total is the packing bound floor((3*2^k+3)/10).

Everything runs in exact rational arithmetic: the branch-and-bound fixes
variables in declared order and prunes with the minimum of the dual
vertex values for the remaining column set, and the dual certificate
check substitutes candidate multipliers into all seven dual constraints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

VARIABLES = ("X1", "X2", "X3", "Y3", "Y22", "Y4", "Y5")

# Column j of CONSTRAINTS is variable j's usage of (first row, all internal
# rows, paired internal-row incidences).
CONSTRAINTS = (
    (2, 1, 1, 0, 0, 0, 0),
    (0, 2, 3, 3, 4, 4, 5),
    (0, 2, 0, 4, 4, 2, 0),
)


@dataclass(frozen=True)
class IlpModel:
    k: int
    variables: tuple[str, ...]
    constraints: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]


@dataclass(frozen=True)
class DualSolution:
    z1: Fraction
    z2: Fraction
    z3: Fraction


def build_ilp_d2(k: int) -> IlpModel:
    if k < 2:
        raise ValueError("need k >= 2")
    b = 2**k - 4
    return IlpModel(k, VARIABLES, CONSTRAINTS, (3, b, b))


def export_model(model: IlpModel) -> str:
    """Plain-text listing: objective then one inequality per line."""
    lines = ["max " + " + ".join(model.variables)]
    for coeffs, b in zip(model.constraints, model.rhs):
        terms = [f"{c}*{v}" for c, v in zip(coeffs, model.variables) if c]
        lines.append(" + ".join(terms) + f" <= {b}")
    lines.append("all variables nonnegative integers")
    return "\n".join(lines)


def dual_constraints(model: IlpModel) -> list[tuple[tuple[int, ...], str]]:
    """One >= 1 constraint per primal variable: its column of coefficients."""
    out = []
    for j, name in enumerate(model.variables):
        out.append((tuple(row[j] for row in model.constraints), name))
    return out


def check_dual(z: DualSolution | tuple, k: int) -> tuple[bool, Fraction, list[str]]:
    """Exact feasibility check of dual multipliers, and their objective
    3*z1 + (2^k-4)*(z2+z3); for the known optimum (1/2, 1/5, 1/10) the
    objective is 3/2 + 3(2^(k-1)-2)/5."""
    if isinstance(z, DualSolution):
        zs = (z.z1, z.z2, z.z3)
    else:
        zs = tuple(Fraction(v) for v in z)
    model = build_ilp_d2(k)
    violated = []
    if any(v < 0 for v in zs):
        violated.append("nonnegativity")
    for col, name in dual_constraints(model):
        lhs = sum(Fraction(c) * v for c, v in zip(col, zs))
        if lhs < 1:
            violated.append(name)
    objective = sum(Fraction(b) * v for b, v in zip(model.rhs, zs))
    return (not violated, objective, violated)


def _dual_vertices(columns: list[tuple[int, ...]]) -> list[tuple[Fraction, ...]]:
    """Vertices of {z >= 0 : col . z >= 1 for each column}, found by
    intersecting triples of constraint boundaries; any member yields a
    valid bound by weak duality, so the list being a superset of the
    vertex set is harmless."""
    bounds = [(tuple(col), Fraction(1)) for col in columns]
    bounds += [(tuple(1 if i == j else 0 for i in range(3)), Fraction(0)) for j in range(3)]
    verts = []
    for rows in itertools.combinations(bounds, 3):
        mat = [list(r[0]) for r in rows]
        rhs = [r[1] for r in rows]
        sol = _solve3(mat, rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        ok = True
        for col in columns:
            if sum(Fraction(c) * v for c, v in zip(col, sol)) < 1:
                ok = False
                break
        if ok and sol not in verts:
            verts.append(sol)
    return verts


def _solve3(mat, rhs):
    m = [[Fraction(x) for x in row] + [b] for row, b in zip(mat, rhs)]
    n = 3
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def solve_ilp(model: IlpModel) -> tuple[int, dict[str, int]]:
    """Exact maximum of the variable sum over the nonnegative integer
    points of the model, by depth-first branch and bound.

    Variables are fixed in declared order, largest value first; the last
    variable is resolved in closed form.  Nodes are cut when the fixed
    part plus the floor of the remaining linear-relaxation bound cannot
    beat the incumbent; since that bound is concave in the branching
    value, the descent stops once past the peak and below the incumbent.
    """
    nvars = len(model.variables)
    for j in range(nvars):
        if all(row[j] == 0 for row in model.constraints):
            raise ValueError(f"model is unbounded in {model.variables[j]}")
    # bound oracle per suffix: min over dual vertices of the residual rhs
    suffix_vertices = []
    for j in range(nvars):
        cols = [tuple(row[i] for row in model.constraints) for i in range(j, nvars)]
        suffix_vertices.append(_dual_vertices(cols))

    def lp_bound(j: int, caps: tuple[int, ...]) -> Fraction:
        if j >= nvars:
            return Fraction(0)
        best = None
        for z in suffix_vertices[j]:
            val = sum(Fraction(c) * v for c, v in zip(caps, z))
            if best is None or val < best:
                best = val
        return best if best is not None else Fraction(0)

    best_value = -1
    best_assignment: dict[str, int] = {}
    assignment = [0] * nvars

    def var_max(j: int, caps) -> int:
        vm = None
        for row, cap in zip(model.constraints, caps):
            if row[j]:
                m = cap // row[j]
                vm = m if vm is None else min(vm, m)
        return vm

    def dfs(j: int, caps: tuple[int, ...], fixed: int):
        nonlocal best_value, best_assignment
        if j == nvars - 1:
            v = var_max(j, caps)
            if fixed + v > best_value:
                assignment[j] = v
                best_value = fixed + v
                best_assignment = dict(zip(model.variables, assignment))
            return
        vmax = var_max(j, caps)
        prev_bound = None
        for v in range(vmax, -1, -1):
            child = tuple(c - v * row[j] for c, row in zip(caps, model.constraints))
            node_bound = fixed + v + lp_bound(j + 1, child)
            # integral objective: the node is dead unless its bound reaches
            # best + 1
            if node_bound < best_value + 1:
                # concave in v: once on the falling side, no smaller v helps
                if prev_bound is not None and node_bound <= prev_bound:
                    return
                prev_bound = node_bound
                continue
            prev_bound = node_bound
            assignment[j] = v
            dfs(j + 1, child, fixed + v)
        assignment[j] = 0

    dfs(0, model.rhs, 0)
    return best_value, best_assignment

"""Independent exact computation of the maximum family size on tiny
instances, by exhaustive packing of minimal recovery sets.

A minimal recovery set is an independent point set whose span contains
the target and loses it on removing any member.  The packer repeatedly
either assigns the smallest alive point to some minimal set drawn from
the alive pool or declares it unused, which visits every packing exactly
once.  Bounds come from counting: sets inside the target need d points,
all other sets need at least d+1.

Results that exhaust the node or time budget are reported as lower
bounds, never as exact values.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .field_core import Echelon, field
from .geometry import Point, enumerate_points
from .constructions import RecoveryFamily, canonical_target


@dataclass
class SearchConfig:
    max_set_size: int | None = None
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_set_size is not None and self.max_set_size < 1:
            raise ValueError("max_set_size must be positive")


@dataclass
class OracleResult:
    q: int
    k: int
    d: int
    value: int
    exact: bool
    witness: RecoveryFamily
    nodes: int
    elapsed: float

    @property
    def status(self) -> str:
        return "exact" if self.exact else "lower-bound-only"


class _Budget(Exception):
    pass


def minimal_recovery_sets(q: int, k: int, d: int, size_cap: int | None = None):
    """All inclusion-minimal recovery sets for the canonical target, as
    sorted point tuples, ordered by size then lexicographically.

    Minimal sets are linearly independent (a dependent member is always
    removable), so their size never exceeds k.
    """
    if size_cap is not None and size_cap < d:
        raise ValueError("size cap below target dimension")
    points = enumerate_points(q, k)
    fld = field(q)
    target = canonical_target(q, k, d)
    cap = min(size_cap or k, k)
    found: list[tuple[Point, ...]] = []

    def extend(chosen: list[int], ech: Echelon):
        spanning = all(ech.contains(row) for row in target.basis)
        if spanning:
            if _is_minimal(chosen, points, target, fld):
                found.append(tuple(points[i] for i in chosen))
            return
        if len(chosen) == cap:
            return
        start = chosen[-1] + 1 if chosen else 0
        for i in range(start, len(points)):
            if ech.contains(points[i]):
                continue
            ech2 = Echelon(fld, [points[j] for j in chosen] + [points[i]])
            extend(chosen + [i], ech2)

    extend([], Echelon(fld))
    found.sort(key=lambda s: (len(s), s))
    return found


def _is_minimal(chosen, points, target, fld) -> bool:
    if len(chosen) == target.dim:
        return True
    for skip in range(len(chosen)):
        ech = Echelon(fld, [points[i] for j, i in enumerate(chosen) if j != skip])
        if all(ech.contains(row) for row in target.basis):
            return False
    return True


def exact_N(q: int, k: int, d: int, cfg: SearchConfig | None = None) -> OracleResult:
    """Maximum number of pairwise disjoint recovery sets for the canonical
    d-subspace of F_q^k, with a witness family."""
    cfg = cfg or SearchConfig()
    points = enumerate_points(q, k)
    fld = field(q)
    target = canonical_target(q, k, d)
    cap = min(cfg.max_set_size or k, k)
    if cap < d:
        raise ValueError("max_set_size below target dimension")
    n = len(points)
    in_target = [target.contains(p, fld) for p in points]
    start_time = time.monotonic()
    nodes = 0
    best: list[list[int]] = []
    exact = True

    def check_budget():
        nonlocal exact, nodes
        nodes += 1
        if cfg.node_limit is not None and nodes > cfg.node_limit:
            raise _Budget
        if cfg.time_limit is not None and nodes % 256 == 0:
            if time.monotonic() - start_time > cfg.time_limit:
                raise _Budget

    def packing_bound(alive: list[bool]) -> int:
        a = sum(1 for i in range(n) if alive[i] and in_target[i])
        b = sum(1 for i in range(n) if alive[i] and not in_target[i])
        x = a // d
        return x + (a - x * d + b) // (d + 1)

    def minimal_sets_with(p: int, alive: list[bool]):
        """Minimal recovery sets containing point p inside the alive pool."""
        out: list[list[int]] = []
        pool = [i for i in range(p + 1, n) if alive[i]]

        def extend(chosen: list[int], ech: Echelon, pool_pos: int):
            check_budget()
            if all(ech.contains(row) for row in target.basis):
                if _is_minimal(chosen, points, target, fld):
                    out.append(list(chosen))
                return
            if len(chosen) == cap:
                return
            # feasibility: the rest of the pool must close the span
            rest = Echelon(fld, (points[i] for i in chosen))
            for i in pool[pool_pos:]:
                rest.add(points[i])
            if not all(rest.contains(row) for row in target.basis):
                return
            for idx in range(pool_pos, len(pool)):
                i = pool[idx]
                if ech.contains(points[i]):
                    continue
                ech2 = Echelon(fld, [points[j] for j in chosen] + [points[i]])
                extend(chosen + [i], ech2, idx + 1)

        extend([p], Echelon(fld, [points[p]]), 0)
        out.sort(key=lambda s: (len(s), s))
        return out

    def dfs(alive: list[bool], family: list[list[int]]):
        nonlocal best
        check_budget()
        if len(family) > len(best):
            best = [list(s) for s in family]
        if len(family) + packing_bound(alive) <= len(best):
            return
        p = next((i for i in range(n) if alive[i]), None)
        if p is None:
            return
        for s in minimal_sets_with(p, alive):
            for i in s:
                alive[i] = False
            family.append(s)
            dfs(alive, family)
            family.pop()
            for i in s:
                alive[i] = True
        # branch: point p used by no set
        alive[p] = False
        dfs(alive, family)
        alive[p] = True

    try:
        dfs([True] * n, [])
    except _Budget:
        exact = False

    witness = RecoveryFamily(
        q, k, d, target,
        [frozenset(points[i] for i in s) for s in best],
        "oracle-packing",
    )
    return OracleResult(
        q, k, d, len(best), exact, witness, nodes, time.monotonic() - start_time
    )

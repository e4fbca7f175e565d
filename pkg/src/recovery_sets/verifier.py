"""Independent certification of recovery-set families.

Everything is recomputed from the raw point sets: spans by fresh Gaussian
elimination, disjointness by canonical-representative equality, universe
membership against the ambient projective space.  No construction
bookkeeping is trusted; this module is the oracle of record for the
acceptance tests.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .field_core import Echelon, Subspace, field
from .geometry import Point, num_points
from .constructions import RecoveryFamily


@dataclass(frozen=True)
class Certificate:
    q: int
    k: int
    d: int
    family_size: int
    disjoint_ok: bool
    spanning_ok: bool
    universe_ok: bool
    points_used: int
    points_total: int
    method: str
    set_sizes: tuple[tuple[int, int], ...]

    @property
    def valid(self) -> bool:
        return self.disjoint_ok and self.spanning_ok and self.universe_ok

    def to_payload(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "d": self.d,
            "family_size": self.family_size,
            "disjoint_ok": self.disjoint_ok,
            "spanning_ok": self.spanning_ok,
            "universe_ok": self.universe_ok,
            "points_used": self.points_used,
            "points_total": self.points_total,
            "method": self.method,
            "set_sizes": {str(size): count for size, count in self.set_sizes},
            "valid": self.valid,
        }


def _point_ok(p: Point, q: int, k: int) -> bool:
    if len(p) != k or all(c == 0 for c in p) or any(not 0 <= c < q for c in p):
        return False
    lead = next(c for c in p if c)
    return lead == 1


def verify_recovery_set(points, target: Subspace, fld) -> bool:
    """True iff the span of the points contains the target subspace."""
    ech = Echelon(fld, points)
    return all(ech.contains(row) for row in target.basis)


def verify_family(family: RecoveryFamily) -> Certificate:
    q, k, d = family.q, family.k, family.d
    fld = field(q)
    universe_ok = True
    spanning_ok = True
    counts: Counter[Point] = Counter()
    sizes: Counter[int] = Counter()
    for s in family.sets:
        sizes[len(s)] += 1
        well_formed = []
        for p in s:
            counts[p] += 1
            if _point_ok(p, q, k):
                well_formed.append(p)
            else:
                universe_ok = False
        # malformed points cannot participate in the span computation
        if not verify_recovery_set(well_formed, family.target, fld):
            spanning_ok = False
    disjoint_ok = all(c == 1 for c in counts.values())
    return Certificate(
        q=q,
        k=k,
        d=d,
        family_size=len(family.sets),
        disjoint_ok=disjoint_ok,
        spanning_ok=spanning_ok,
        universe_ok=universe_ok,
        points_used=len(counts),
        points_total=num_points(q, k),
        method=family.method,
        set_sizes=tuple(sorted(sizes.items())),
    )

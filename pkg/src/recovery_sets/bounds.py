"""Closed-form lower/upper/exact values for the maximum number N_q(k,d)
of pairwise disjoint recovery sets, with regime dispatch.

Each record carries the best lower bound, best upper bound, the exact
value when matching arguments pin it, and provenance tags naming where
each contribution comes from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field_core import prime_power

# Small values stated outright rather than reached by a formula.
PINNED_EXACT = {
    (2, 2, 2): 1,
    (2, 3, 2): 2,
    (2, 4, 2): 5,
    (2, 5, 2): 9,
    (2, 4, 4): 3,
    (2, 5, 4): 6,
    (2, 6, 4): 13,
}


def basic_count(q: int, d: int) -> int:
    return (q**d - 1) // (d * (q - 1))


def tight_lower(q: int, k: int, d: int) -> int:
    """Baseline: consecutive-power sets inside the target plus per-row sets."""
    rows = (q ** (k - d) - 1) // (q - 1)
    return basic_count(q, d) + (q**d // (d + 1)) * rows


def general_upper(q: int, k: int, d: int) -> int:
    """Size-counting bound: d points per in-target set, d+1 elsewhere."""
    l = ((q**d - 1) // (q - 1)) % d
    return basic_count(q, d) + (l * (q - 1) + q**k - q**d) // ((d + 1) * (q - 1))


def row_structure_upper(q: int, k: int, d: int, variant: str = "corrected") -> int:
    """Refinement counting cross-row sets at size d+2.

    The middle term is floor(q^d/(d+1)) per row; the "printed" variant
    reproduces the formula with q^k in that numerator instead (kept
    selectable because the two disagree and only one can be meant).
    """
    rows = (q ** (k - d) - 1) // (q - 1)
    l = ((q**d - 1) // (q - 1)) % d
    t = q**d % (d + 1)
    if variant == "corrected":
        middle = q**d // (d + 1)
    elif variant == "printed":
        middle = q**k // (d + 1)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return basic_count(q, d) + rows * middle + (2 * l + rows * t) // (d + 2)


def whole_space_exact(q: int, k: int) -> int:
    return (q**k - 1) // (k * (q - 1))


def dimension_one_exact(q: int, k: int) -> int:
    if q % 2 == 0:
        return 1 + (q**k - q) // (2 * (q - 1))
    return 1 + (q ** (k - 1) - 1) // 2 + (q ** (k - 1) - 1) // (3 * (q - 1))


def d2_exact(k: int) -> int:
    return (3 * 2 ** (k - 1) + 1) // 5


def d2_packing_upper(k: int) -> int:
    return (3 * 2**k + 3) // 10


def d4_exact(k: int) -> int:
    return (11 * 2 ** (k - 3) - 1) // 7


def d5_bracket(k: int) -> tuple[int, int]:
    return 21 * 2 ** (k - 7) + 1, 21 * 2 ** (k - 7) + 2


def d6_bracket(k: int) -> tuple[int, int]:
    return (91 * 2 ** (k - 6) + 12) // 10, (91 * 2 ** (k - 6) + 35) // 10


def perfect_code_exact(k: int, d: int) -> int:
    return (2**d - 1) // d + (2**k - 2**d) // (d + 1)


def divisibility_exact(q: int, k: int, d: int) -> int:
    """Exact value when d+1 divides q^d: no row leaves a leftover."""
    return basic_count(q, d) + (q**k - q**d) // ((d + 1) * (q - 1))


def line_partition_exact(q: int, k: int, d: int) -> int:
    """Exact value when q > 2, d > 1, k-d even and d+2 divides q+1."""
    rows = (q ** (k - d) - 1) // (q - 1)
    t = q**d % (d + 1)
    extra = rows * t // (d + 2)
    return basic_count(q, d) + rows * (q**d // (d + 1)) + extra


@dataclass(frozen=True)
class BoundsRecord:
    q: int
    k: int
    d: int
    lower: int
    upper: int
    exact: int | None
    provenance: tuple[str, ...]

    def to_payload(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "d": self.d,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "provenance": list(self.provenance),
        }


def bound(q: int, k: int, d: int, row_upper_variant: str = "corrected") -> BoundsRecord:
    """Best known bounds on N_q(k,d), with exact value where available."""
    prime_power(q)
    if not 1 <= d <= k:
        raise ValueError("need 1 <= d <= k")
    lowers: list[tuple[int, str]] = [(tight_lower(q, k, d), "consecutive-powers")]
    uppers: list[tuple[int, str]] = [
        (general_upper(q, k, d), "size-count"),
        (row_structure_upper(q, k, d, row_upper_variant), "row-structure"),
    ]
    exacts: list[tuple[int, str]] = []

    if d == k:
        exacts.append((whole_space_exact(q, k), "whole-space"))
    if d == 1:
        exacts.append((dimension_one_exact(q, k), "dimension-one"))
    if q == 2 and d == 2:
        lowers.append((d2_exact(k), "quintriple-rows"))
        uppers.append((d2_packing_upper(k), "packing-lp"))
        exacts.append((d2_exact(k), "quintriple-rows"))
    if q == 2 and d == 4:
        if k >= 7:
            lowers.append((d4_exact(k), "three-subspace-rows"))
            exacts.append((d4_exact(k), "three-subspace-rows"))
    if q == 2 and d == 5 and k >= 7:
        lo, hi = d5_bracket(k)
        lowers.append((lo, "line-group-rows"))
        uppers.append((hi, "line-group-rows"))
    if q == 2 and d == 6 and k >= 7:
        lo, hi = d6_bracket(k)
        lowers.append((lo, "six-dim-formula"))
        uppers.append((hi, "six-dim-formula"))
    if q == 2 and d >= 3 and (d & (d + 1)) == 0:
        exacts.append((perfect_code_exact(k, d), "perfect-code"))
    if q**d % (d + 1) == 0:
        exacts.append((divisibility_exact(q, k, d), "no-row-leftovers"))
    if q > 2 and d > 1 and k > d and (k - d) % 2 == 0 and (q + 1) % (d + 2) == 0:
        exacts.append((line_partition_exact(q, k, d), "line-leftovers"))
    if (q, k, d) in PINNED_EXACT:
        exacts.append((PINNED_EXACT[(q, k, d)], "stated-value"))

    provenance = []
    values = {v for v, _ in exacts}
    if len(values) > 1:
        raise AssertionError(f"conflicting exact values for N_{q}({k},{d}): {exacts}")
    exact = values.pop() if values else None
    lower = max(v for v, _ in lowers)
    upper = min(v for v, _ in uppers)
    if exact is not None:
        lower = max(lower, exact)
        upper = min(upper, exact)
    for v, tag in lowers:
        if v == lower:
            provenance.append("lower:" + tag)
    for v, tag in uppers:
        if v == upper:
            provenance.append("upper:" + tag)
    for v, tag in exacts:
        provenance.append("exact:" + tag)
    if lower > upper:
        raise AssertionError(f"crossed bounds for N_{q}({k},{d}): {lower} > {upper}")
    if exact is None and lower == upper:
        exact = lower
        provenance.append("exact:bounds-met")
    return BoundsRecord(q, k, d, lower, upper, exact, tuple(dict.fromkeys(provenance)))


def bound_table(q: int, k_range, d_range, row_upper_variant: str = "corrected") -> list[BoundsRecord]:
    records = []
    for k in k_range:
        for d in d_range:
            if 1 <= d <= k:
                records.append(bound(q, k, d, row_upper_variant))
    return records

"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  Derived expectations are recomputed here from the stated
formulas; nothing is trusted from the construction bookkeeping (the
verifier recertifies every family from raw points).
"""

import time
from fractions import Fraction

from recovery_sets.bounds import bound, d5_bracket, d6_bracket
from recovery_sets.constructions import (
    construct,
    construct_d2,
    construct_d4,
    construct_d5,
    construct_general_q,
    construct_perfect,
    find_quintriple_partition_m7,
    quintriple_partition,
)
from recovery_sets.geometry import (
    binary_line_partition,
    build_T,
    full_spread,
    hamming_partition,
    lifted_partial_spread,
    num_points,
)
from recovery_sets.ilp import build_ilp_d2, check_dual, solve_ilp
from recovery_sets.oracle import exact_N
from recovery_sets.verifier import verify_family

# families the acceptance criteria exercise, shared by criterion 9
GRID = (
    [(2, 2, 2), (2, 3, 2), (2, 4, 2), (2, 4, 4)]
    + [(2, k, 2) for k in range(2, 15)]
    + [(2, 6, 3), (2, 9, 3), (2, 14, 7)]
    + [(2, k, 4) for k in range(4, 14)]
    + [(2, k, 5) for k in range(7, 13)]
    + [(3, 4, 2), (5, 5, 4), (7, 4, 2)]
)


def certified(family, expected_size):
    cert = verify_family(family)
    assert cert.valid, (family.method, cert)
    assert cert.family_size == expected_size, (cert.family_size, expected_size)
    return cert


def test_criterion_1_exact_small_values():
    started = time.monotonic()
    stated = {(2, 2, 2): 1, (2, 3, 2): 2, (2, 4, 2): 5, (2, 4, 4): 3}
    for (q, k, d), value in stated.items():
        result = exact_N(q, k, d)
        assert result.exact and result.value == value, (q, k, d, result.value)
        assert verify_family(result.witness).valid
        certified(construct(q, k, d), value)
    elapsed = time.monotonic() - started
    assert elapsed < 60
    print(f"\nPASS criterion 1: oracle and construction agree on the four "
          f"stated small values ({elapsed:.1f}s)")


def test_criterion_2_d2_exactness():
    started = time.monotonic()
    sizes = {}
    for k in range(2, 15):
        want = (3 * 2 ** (k - 1) + 1) // 5
        certified(construct_d2(k), want)
        sizes[k] = want
    for k in range(4, 17):
        optimum, _ = solve_ilp(build_ilp_d2(k))
        assert optimum == (3 * 2**k + 3) // 10, (k, optimum)
        if k in sizes:
            assert optimum == sizes[k], (k, optimum, sizes[k])
        feasible, objective, violated = check_dual(
            (Fraction(1, 2), Fraction(1, 5), Fraction(1, 10)), k
        )
        assert feasible and not violated
        assert objective == Fraction(3, 2) + Fraction(3 * (2 ** (k - 1) - 2), 5)
    elapsed = time.monotonic() - started
    assert elapsed < 120
    print(f"\nPASS criterion 2: d=2 family sizes, packing ILP optimum and "
          f"dual certificate all match for k up to 16 ({elapsed:.1f}s)")


def test_criterion_3_perfect_code():
    started = time.monotonic()
    for d, k in ((3, 6), (3, 9), (7, 14)):
        want = (2**d - 1) // d + (2**k - 2**d) // (d + 1)
        certified(construct_perfect(k, d), want)
    elapsed = time.monotonic() - started
    assert elapsed < 120
    print(f"\nPASS criterion 3: perfect-code families for (d,k) in "
          f"(3,6),(3,9),(7,14) certified at the exact count ({elapsed:.1f}s)")


def test_criterion_4_d4():
    started = time.monotonic()
    for k in range(7, 14):
        certified(construct_d4(k), (11 * 2 ** (k - 3) - 1) // 7)
    for k, size in ((6, 13), (5, 6), (4, 3)):
        certified(construct_d4(k), size)
    elapsed = time.monotonic() - started
    print(f"\nPASS criterion 4: d=4 families exact for k=7..13 plus the "
          f"pinned 13/6/3 at k=6/5/4 ({elapsed:.1f}s)")


def test_criterion_5_d5():
    started = time.monotonic()
    for k in range(7, 13):
        size = 21 * 2 ** (k - 7) + 1
        certified(construct_d5(k), size)
        lo, hi = d5_bracket(k)
        assert hi == lo + 1
        rec = bound(2, k, 5)
        assert lo <= rec.lower <= size <= rec.upper <= hi
    elapsed = time.monotonic() - started
    print(f"\nPASS criterion 5: d=5 families hit 21*2^(k-7)+1 for k=7..12, "
          f"inside the width-one bracket ({elapsed:.1f}s)")


def test_criterion_6_quintriples():
    started = time.monotonic()
    per_residue = {0: lambda m: (2**m - 1) // 5, 1: lambda m: (2**m - 7) // 5,
                   2: lambda m: (2**m - 4) // 5, 3: lambda m: (2**m - 8) // 5}
    for m in range(4, 13):
        part = quintriple_partition(m)
        part.validate()
        assert len(part.quintriples) == per_residue[m % 4](m)
        if m % 4 == 1:
            assert part.dependent_four and len(part.spare) == 2
        elif m % 4 == 2:
            a, b, c = sorted(part.spare)
            assert a ^ b == c
        elif m % 4 == 3:
            assert part.dependent_four and len(part.spare) == 3
    searched = find_quintriple_partition_m7()
    searched.validate()
    assert searched == quintriple_partition(7)
    elapsed = time.monotonic() - started
    assert elapsed < 60
    print(f"\nPASS criterion 6: quintriple partitions m=4..12 exact with the "
          f"stated remainders; m=7 search re-derives the pinned result ({elapsed:.1f}s)")


def test_criterion_7_general_q():
    started = time.monotonic()
    for q, k, d, want in ((3, 4, 2, 14), (5, 5, 4, 164), (7, 4, 2, 134)):
        certified(construct_general_q(q, k, d), want)
        rec = bound(q, k, d)
        assert rec.exact == want, (q, k, d, rec)
    elapsed = time.monotonic() - started
    assert elapsed < 120
    print(f"\nPASS criterion 7: q>2 families match the exact formulas at "
          f"(3,4,2)=14, (5,5,4)=164, (7,4,2)=134 ({elapsed:.1f}s)")


def test_criterion_8_structural():
    started = time.monotonic()

    def check_partial_spread(ps, universe_size, covered_all):
        cover = set()
        for part in ps.parts:
            els = set(part.elements())
            assert len(els) == ps.q**ps.part_dim - 1
            assert not (cover & els)
            cover |= els
        if covered_all:
            assert len(cover) == universe_size
        return cover

    # coset spreads and lifted partial spreads used by the constructions
    for q, n, t in ((2, 2, 2), (2, 4, 2), (2, 6, 2), (7, 2, 2), (2, 8, 4)):
        ps = full_spread(q, n, t)
        check_partial_spread(ps, q**n - 1, covered_all=True)
    for q, n, t in [(2, m, 4) for m in range(8, 13)] + [(2, m, 3) for m in (6, 7, 8, 9)] \
            + [(2, m, 2) for m in (4, 5, 6, 7)]:
        ps = lifted_partial_spread(q, n, t)
        cover = check_partial_spread(ps, q**n - 1, covered_all=False)
        assert len(cover) == (q**n - 1) - (q ** (n - t) - 1)
    for m in range(2, 8):
        lp = binary_line_partition(m)
        cover = set()
        for part in lp.parts:
            els = set(part.elements())
            assert not (cover & els)
            cover |= els
        expected = 2**m - 1 if lp.residual is None else 2**m - 8
        assert len(cover) == expected
    for m in (2, 3):
        pc = hamming_partition(m)
        seen = set()
        for b in pc.balls:
            assert not (seen & b)
            seen |= b
        assert len(seen) == 2 ** pc.length

    # layout bijection over the stated grid
    for q in (2, 3, 4, 5, 7):
        for k in range(1, 7):
            for d in range(1, k + 1):
                t = build_T(q, k, d)
                pts = t.points()
                assert len(pts) == num_points(q, k), (q, k, d)
                assert len(set(pts)) == len(pts)
                sample = pts[:: max(1, len(pts) // 16)]
                for p in sample:
                    loc = t.locate(p)
                    if loc[0] == "T":
                        assert t.entry(loc[1], loc[2]) == p
                    else:
                        assert t.td_entry(loc[1]) == p
    elapsed = time.monotonic() - started
    print(f"\nPASS criterion 8: spreads, line partitions, ball partitions and "
          f"the layout bijection check out across the grid ({elapsed:.1f}s)")


def test_criterion_9_consistency():
    started = time.monotonic()
    for q, k, d in GRID:
        fam = construct(q, k, d)
        rec = bound(q, k, d)
        assert rec.lower <= len(fam.sets) <= rec.upper, (q, k, d, rec, len(fam.sets))
    lo, hi = d6_bracket(7)
    assert (lo, hi) == (19, 21)
    elapsed = time.monotonic() - started
    print(f"\nPASS criterion 9: every grid family sits between its lower and "
          f"upper bound; the d=6 formulas print (19, 21) at k=7 ({elapsed:.1f}s)")

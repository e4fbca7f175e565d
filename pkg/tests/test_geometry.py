import pytest
from itertools import product

from recovery_sets.field_core import extension, field
from recovery_sets.geometry import (
    binary_line_partition,
    build_T,
    canonical_point,
    enumerate_points,
    full_spread,
    hamming_partition,
    lifted_partial_spread,
    num_points,
)


def brute_points(q, k):
    """Canonical representatives by raw enumeration of all nonzero vectors."""
    fld = field(q)
    return {canonical_point(v, fld) for v in product(range(q), repeat=k) if any(v)}


def spread_cover(ps):
    """(cover set, True-if-disjoint) over all parts of a partial spread."""
    cover = set()
    disjoint = True
    for part in ps.parts:
        els = set(part.elements())
        if cover & els:
            disjoint = False
        cover |= els
    return cover, disjoint


class TestPoints:
    def test_counts(self):
        assert len(enumerate_points(2, 3)) == 7
        assert enumerate_points(3, 2) == [(0, 1), (1, 0), (1, 1), (1, 2)]
        assert len(enumerate_points(7, 4)) == 400

    @pytest.mark.parametrize("q,k", [(2, 4), (3, 3), (4, 2), (5, 2)])
    def test_matches_raw_enumeration(self, q, k):
        pts = enumerate_points(q, k)
        assert len(pts) == num_points(q, k)
        assert set(pts) == brute_points(q, k)
        assert pts == sorted(pts)

    def test_limit(self):
        with pytest.raises(ValueError):
            enumerate_points(2, 30)

    def test_canonical_scaling(self):
        f7 = field(7)
        v = (0, 3, 5, 1)
        p = canonical_point(v, f7)
        assert p[1] == 1
        for c in range(1, 7):
            assert canonical_point(tuple(f7.mul(c, x) for x in v), f7) == p

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            canonical_point((0, 0), field(2))


class TestTModel:
    def test_binary_2_4_2(self):
        t = build_T(2, 4, 2)
        assert (t.num_rows, t.num_cols) == (4, 4)
        pts = t.points()
        assert len(pts) == 15 and set(pts) == set(enumerate_points(2, 4))

    def test_333_counts(self):
        t = build_T(3, 3, 2)
        assert (t.num_rows, t.num_cols, t.td_size) == (1, 9, 4)
        pts = t.points()
        assert len(pts) == 13 == num_points(3, 3)
        assert set(pts) == set(enumerate_points(3, 3))

    def test_degenerate_k_equals_d(self):
        t = build_T(3, 2, 2)
        assert t.num_rows == 0 and t.td_size == 4
        assert set(t.points()) == set(enumerate_points(3, 2))

    def test_zero_slot_rejected(self):
        t = build_T(2, 3, 2)
        with pytest.raises(ValueError):
            t.entry(0, 0)

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
    def test_bijection_grid(self, q):
        # every point appears exactly once over T and T_d, and locate inverts
        for k in range(1, 7):
            for d in range(1, k + 1):
                if q**k > 20000:
                    continue
                t = build_T(q, k, d)
                pts = t.points()
                assert len(pts) == num_points(q, k), (q, k, d)
                assert len(set(pts)) == len(pts)
                for i in range(t.num_rows):
                    for j in range(t.num_cols):
                        if q == 2 and i == 0 and j == 0:
                            continue
                        assert t.locate(t.entry(i, j)) == ("T", i, j)
                for i in range(t.td_size):
                    assert t.locate(t.td_entry(i)) == ("Td", i)

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            build_T(2, 3, 4)
        with pytest.raises(ValueError):
            build_T(6, 3, 2)


class TestSpreads:
    def test_coset_spread_17_parts(self):
        s = full_spread(2, 8, 4)
        assert len(s.parts) == 17
        cover, disjoint = spread_cover(s)
        assert disjoint and cover == set(range(1, 256))

    def test_whole_space(self):
        s = full_spread(2, 4, 4)
        assert len(s.parts) == 1
        assert set(s.parts[0].elements()) == set(range(1, 16))

    def test_21_lines(self):
        s = full_spread(2, 6, 2)
        assert len(s.parts) == 21
        cover, disjoint = spread_cover(s)
        assert disjoint and cover == set(range(1, 64))

    def test_divisibility_required(self):
        with pytest.raises(ValueError):
            full_spread(2, 5, 2)

    @pytest.mark.parametrize("q,n,t", [(2, 8, 4), (3, 4, 2), (2, 6, 2)])
    def test_part_isomorphisms_linear(self, q, n, t):
        s = full_spread(q, n, t)
        f = s.part_field
        amb = extension(q, n)
        for part in s.parts[:4]:
            ff = part.from_field
            assert ff[0] == 0 and len(set(ff)) == q**t
            for a in range(q**t):
                for b in range(q**t):
                    assert ff[f.add(a, b)] == amb.add(ff[a], ff[b])

    def test_lifted_2_8_4(self):
        s = lifted_partial_spread(2, 8, 4)
        assert len(s.parts) == 16 and s.residual.dim == 4
        cover, disjoint = spread_cover(s)
        residual_els = {e for e in range(1, 256) if e % 16 == 0}
        assert disjoint and cover == set(range(1, 256)) - residual_els
        # together with the residual as a 17th part this matches the coset count
        assert len(s.parts) + 1 == len(full_spread(2, 8, 4).parts)

    def test_lifted_2_7_3(self):
        s = lifted_partial_spread(2, 7, 3)
        assert len(s.parts) == 16 and s.residual.dim == 4
        _, disjoint = spread_cover(s)
        assert disjoint

    def test_lifted_zero_codeword(self):
        s = lifted_partial_spread(3, 4, 2)
        assert set(s.parts[0].elements()) == {e for e in range(1, 9)}

    def test_lifted_requires_room(self):
        with pytest.raises(ValueError):
            lifted_partial_spread(2, 7, 4)

    def test_lifted_isomorphisms(self):
        s = lifted_partial_spread(2, 9, 3)
        f = s.part_field
        amb = extension(2, 9)
        for part in s.parts[:5]:
            ff = part.from_field
            for a in range(8):
                for b in range(8):
                    assert ff[f.add(a, b)] == amb.add(ff[a], ff[b])


class TestLinePartition:
    @pytest.mark.parametrize("n,lines,residual", [(2, 1, None), (4, 5, None), (6, 21, None),
                                                  (3, 0, 3), (5, 8, 3), (7, 40, 3)])
    def test_counts_and_cover(self, n, lines, residual):
        lp = binary_line_partition(n)
        assert len(lp.parts) == lines
        cover, disjoint = spread_cover(lp)
        assert disjoint
        if residual is None:
            assert lp.residual is None
            assert cover == set(range(1, 2**n))
        else:
            assert lp.residual.dim == residual
            f2 = field(2)
            res = {sum(b << i for i, b in enumerate(v)) for v in lp.residual.vectors(f2)}
            assert not (cover & (res - {0}))
            assert cover | res == set(range(2**n))

    def test_too_small(self):
        with pytest.raises(ValueError):
            binary_line_partition(1)


class TestHamming:
    def test_m2_repetition(self):
        pc = hamming_partition(2)
        assert pc.codewords == (0, 7)
        assert all(len(b) == 4 for b in pc.balls)

    def test_m3_partition(self):
        pc = hamming_partition(3)
        assert len(pc.codewords) == 16
        seen = set()
        for b in pc.balls:
            assert len(b) == 8 and not (seen & b)
            seen |= b
        assert seen == set(range(128))

    def test_ball_structure(self):
        pc = hamming_partition(3)
        for c, ball in zip(pc.codewords, pc.balls):
            assert ball == frozenset([c] + [c ^ (1 << j) for j in range(7)])

    def test_decode(self):
        pc = hamming_partition(3)
        for w in range(128):
            c = pc.decode(w)
            assert c in pc.codewords
            assert w == c or bin(w ^ c).count("1") == 1

    def test_bad_m(self):
        with pytest.raises(ValueError):
            hamming_partition(1)
        with pytest.raises(ValueError):
            hamming_partition(5)

"""Projective points, the stored-server array, and vector-space partitions.

Points of PG(k-1,q) are canonical representatives of 1-subspaces of F_q^k:
tuples whose first nonzero coordinate is 1.  The T array lays all points
out by rows (the complement-space part) and columns (0 followed by the
consecutive powers of a primitive alpha of the column field F_{q^d});
for q > 2 the points inside the target space live in the side vector T_d.

Spreads and partial spreads of F_q^n come in two flavours used by the
recovery-set constructions: the multiplicative coset spread (t | n) and
the lifted matrix-code partial spread ([I_t | M_a] for a ranging over
F_{q^{n-t}}).  Each part exposes an F_q-linear bijection with the field
F_{q^t} so that structures found once in the field can be transported
into every part.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from .field_core import (
    ExtField,
    Field,
    Subspace,
    Vector,
    extension,
    field,
    prime_power,
)

Point = tuple[int, ...]

DEFAULT_POINT_LIMIT = 1 << 21


def canonical_point(vec: Vector, fld: Field) -> Point:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    for c in vec:
        if c:
            if c == 1:
                return tuple(vec)
            inv = fld.inv(c)
            return tuple(fld.mul(inv, x) for x in vec)
    raise ValueError("zero vector has no projective representative")


def num_points(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def enumerate_points(q: int, k: int, limit: int = DEFAULT_POINT_LIMIT) -> list[Point]:
    """All (q^k-1)/(q-1) canonical points, in lexicographic order."""
    if k < 1:
        raise ValueError("dimension must be >= 1")
    count = num_points(q, k)
    if count > limit:
        raise ValueError(f"{count} points exceed the configured ceiling {limit}")
    pts = []
    for pivot in range(k):
        for tail in product(range(q), repeat=k - pivot - 1):
            pts.append((0,) * pivot + (1,) + tail)
    pts.sort()
    assert len(pts) == count
    return pts


class TModel:
    """Row/column layout of every stored point for parameters (q, k, d).

    Binary case: rows are all vectors of F_2^{k-d} (zero row first), the
    entries minus the empty (0,0) slot are exactly the points of
    PG(k-1,2).  For q > 2 the rows are the canonical points of
    PG(k-d-1,q) and the points inside the target space are carried by the
    side vector T_d instead of a first row.  Columns are ordered 0,
    alpha^0, alpha^1, ..., alpha^{q^d-2}.
    """

    def __init__(self, q: int, k: int, d: int):
        if not 1 <= d <= k:
            raise ValueError(f"need 1 <= d <= k, got d={d}, k={k}")
        prime_power(q)
        self.q, self.k, self.d = q, k, d
        self.fld = field(q)
        self.colfield = extension(self.fld, d)
        if q == 2:
            self.rows: list[Vector] = sorted(product((0, 1), repeat=k - d))
            self.td_size = 0
        else:
            self.rows = enumerate_points(q, k - d) if k > d else []
            self.td_size = (q**d - 1) // (q - 1)
        self.col_values = [0] + list(self.colfield.antilog)
        self._locator: dict[Point, tuple] | None = None

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.col_values)

    def entry(self, i: int, j: int) -> Point:
        row = self.rows[i]
        y = self.col_values[j]
        if self.q == 2 and y == 0 and not any(row):
            raise ValueError("slot (0, 0) holds no point")
        vec = row + self.colfield.to_vector(y)
        return canonical_point(vec, self.fld)

    def td_entry(self, i: int) -> Point:
        if self.q == 2:
            raise ValueError("binary layout has no side vector; use the first row")
        if not 0 <= i < self.td_size:
            raise IndexError(i)
        vec = (0,) * (self.k - self.d) + self.colfield.to_vector(self.colfield.alpha_pow(i))
        return canonical_point(vec, self.fld)

    def points(self) -> list[Point]:
        out = []
        for i in range(self.num_rows):
            for j in range(self.num_cols):
                if self.q == 2 and i == 0 and j == 0:
                    continue
                out.append(self.entry(i, j))
        for i in range(self.td_size):
            out.append(self.td_entry(i))
        return out

    def locate(self, point: Point) -> tuple:
        """Inverse lookup: ("T", row, col) or ("Td", slot)."""
        if self._locator is None:
            loc: dict[Point, tuple] = {}
            for i in range(self.num_rows):
                for j in range(self.num_cols):
                    if self.q == 2 and i == 0 and j == 0:
                        continue
                    loc[self.entry(i, j)] = ("T", i, j)
            for i in range(self.td_size):
                loc[self.td_entry(i)] = ("Td", i)
            self._locator = loc
        return self._locator[point]


def build_T(q: int, k: int, d: int) -> TModel:
    return TModel(q, k, d)


# ---------------------------------------------------------------------------
# Spreads and partial spreads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpreadPart:
    """One t-subspace of a partition, with its field identification.

    from_field[c] is the ambient element (integer encoding over F_q)
    corresponding to the element of F_{q^t} encoded by c; the map is
    F_q-linear and bijective, so additive structure transports through it.
    """

    subspace: Subspace
    from_field: tuple[int, ...]

    def elements(self) -> tuple[int, ...]:
        return tuple(e for e in self.from_field if e)


@dataclass
class PartialSpread:
    q: int
    ambient_dim: int
    part_dim: int
    parts: list[SpreadPart]
    residual: Subspace | None = None
    part_field: ExtField | None = None


def _part_from_span(amb: ExtField, images: list[int]) -> SpreadPart:
    """Build a SpreadPart from the images of the field's polynomial basis."""
    part_f = extension(amb.base, len(images))
    from_field = []
    for c in part_f.elements():
        digits = part_f.to_vector(c)
        acc = 0
        for ci, img in zip(digits, images):
            if ci:
                acc = amb.add(acc, amb.mul(ci, img))
        from_field.append(acc)
    fld = amb.base
    basis_vecs = [amb.to_vector(v) for v in images]
    return SpreadPart(Subspace.span(basis_vecs, fld, amb.n), tuple(from_field))


def full_spread(q: int, n: int, t: int) -> PartialSpread:
    """Partition of the nonzero vectors of F_q^n into (q^n-1)/(q^t-1)
    pairwise disjoint t-subspaces, via multiplicative cosets of the
    subfield F_{q^t}; part i is alpha^i times the subfield, and its field
    identification divides by alpha^i."""
    if t < 1 or n % t != 0:
        raise ValueError(f"{t} does not divide {n}")
    fld = field(q)
    amb = extension(fld, n)
    r = (q**n - 1) // (q**t - 1)
    # F_q-basis of the subfield copy: alpha^(j*r) for j < t
    sub_basis = [amb.alpha_pow(j * r) for j in range(t)]
    parts = []
    for i in range(r):
        shift = amb.alpha_pow(i)
        images = [amb.mul(shift, b) for b in sub_basis]
        parts.append(_part_from_span(amb, images))
    return PartialSpread(q, n, t, parts, None, extension(fld, t))


def lifted_partial_spread(q: int, n: int, t: int) -> PartialSpread:
    """q^{n-t} pairwise disjoint t-subspaces spanned by [I_t | M_a], where
    row i of M_a is the F_q-vector of a*gamma^(i-1) for a primitive gamma
    of F_{q^{n-t}}; distinct a give matrices whose difference has full
    rank, so the lifted subspaces meet only in zero.  The residual is the
    (n-t)-subspace of vectors whose t leading coordinates vanish."""
    if t < 1 or t > n - t:
        raise ValueError(f"lifting needs t <= n - t, got t={t}, n={n}")
    fld = field(q)
    amb = extension(fld, n)
    ext = extension(fld, n - t)
    qt = q**t
    parts = []
    for a in ext.elements():
        images = []
        for i in range(t):
            high = ext.mul(a, ext.alpha_pow(i)) if a else 0
            images.append(q**i + high * qt)
        parts.append(_part_from_span(amb, images))
    residual_rows = [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(t, n)
    ]
    residual = Subspace(n, tuple(residual_rows))
    return PartialSpread(q, n, t, parts, residual, extension(fld, t))


def binary_line_partition(n: int) -> PartialSpread:
    """Partition of F_2^n minus zero into 2-subspaces (lines), plus one
    residual 3-subspace when n is odd.  Even n uses the full coset
    spread; odd n >= 5 peels lifted partial spreads until the 3-subspace
    base remains."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n % 2 == 0:
        return full_spread(2, n, 2)
    amb = extension(2, n)
    parts: list[SpreadPart] = []
    shift = 0
    nn = n
    while nn > 3:
        level = lifted_partial_spread(2, nn, 2)
        for part in level.parts:
            images = [e << shift for e in (part.from_field[1], part.from_field[2])]
            parts.append(_part_from_span(amb, images))
        nn -= 2
        shift += 2
    residual_rows = [
        tuple(1 if j == shift + i else 0 for j in range(n)) for i in range(3)
    ]
    residual = Subspace(n, tuple(residual_rows))
    return PartialSpread(2, n, 2, parts, residual, extension(2, 2))


# ---------------------------------------------------------------------------
# Perfect binary codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerfectCodePartition:
    """The length-(2^m - 1) Hamming code and its radius-1 ball partition.

    Words are integer bitmasks over the n = 2^m - 1 positions; position j
    carries syndrome j + 1, so the parity-check matrix columns are all
    nonzero m-bit values in order.  Ball i is codeword i together with its
    n single-bit neighbours.
    """

    m: int
    length: int
    codewords: tuple[int, ...]
    balls: tuple[frozenset[int], ...] = dc_field(repr=False)

    def decode(self, word: int) -> int:
        s = 0
        w = word
        j = 0
        while w:
            if w & 1:
                s ^= j + 1
            w >>= 1
            j += 1
        return word if s == 0 else word ^ (1 << (s - 1))


def hamming_partition(m: int) -> PerfectCodePartition:
    if m < 2:
        raise ValueError("need m >= 2")
    if m > 4:
        raise ValueError("ball partition materialization is capped at m = 4")
    n = (1 << m) - 1
    f2 = field(2)
    h_rows = [tuple((j + 1) >> r & 1 for j in range(n)) for r in range(m)]
    from .field_core import nullspace

    kernel = nullspace(h_rows, n, f2)
    codewords = []
    for coeffs in product((0, 1), repeat=len(kernel)):
        w = 0
        for c, vec in zip(coeffs, kernel):
            if c:
                w ^= sum(b << j for j, b in enumerate(vec))
        codewords.append(w)
    codewords.sort()
    balls = tuple(
        frozenset([c] + [c ^ (1 << j) for j in range(n)]) for c in codewords
    )
    return PerfectCodePartition(m, n, tuple(codewords), balls)

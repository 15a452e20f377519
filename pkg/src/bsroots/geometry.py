"""Exact rational and integer linear algebra.

Everything here works on plain tuples of ``int`` / ``Fraction`` so values are
immutable and hashable.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence, Tuple

Rational = Fraction
RationalVector = Tuple[Fraction, ...]
ExponentVector = Tuple[int, ...]


class DimensionError(ValueError):
    pass


def qvec(v: Iterable) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), 0)


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def denominator_lcm(v: Iterable[Fraction]) -> int:
    return lcm(1, *(Fraction(x).denominator for x in v))


def primitive(v: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    m = denominator_lcm(v)
    ints = [int(Fraction(x) * m) for x in v]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# rational row reduction


def rref(rows: Sequence[Sequence]) -> Tuple[list, list]:
    """Reduced row echelon form over Q.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence
                 ) -> Optional[Tuple[RationalVector, Tuple[RationalVector, ...]]]:
    """Solve ``matrix @ x = rhs`` exactly.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.  The
    particular solution sets all free variables to zero; kernel vectors are
    scaled so their first nonzero entry is positive.
    """
    if len(matrix) != len(rhs):
        raise DimensionError("matrix has %d rows but rhs has %d entries"
                             % (len(matrix), len(rhs)))
    if not matrix:
        raise DimensionError("empty system has no determined column count")
    ncols = len(matrix[0])
    if any(len(r) != ncols for r in matrix):
        raise DimensionError("ragged matrix")
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        k = [Fraction(0)] * ncols
        k[f] = Fraction(1)
        for row, c in zip(red, pivots):
            k[c] = -row[f]
        lead = next(v for v in k if v != 0)
        if lead < 0:
            k = [-v for v in k]
        kernel.append(tuple(k))
    return tuple(x), tuple(kernel)


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(x != 0 for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v]) == rank(basis)


def annihilator(basis: Sequence[Sequence], dim: int) -> Tuple[Tuple[int, ...], ...]:
    """Integer vectors whose common zero set is the span of ``basis``.

    Testing ``v`` against them needs integer dot products only, which is far
    cheaper than a rank computation when one span is queried many times.
    """
    if not basis:
        return tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    res = solve_linear(basis, [0] * len(basis))
    return tuple(primitive(k) for k in res[1])


def in_annihilated(normals: Sequence[Sequence[int]], v: Sequence) -> bool:
    return all(dot(nv, v) == 0 for nv in normals)


def independent_subset(vectors: Iterable[Sequence]) -> list:
    """Greedy maximal linearly independent subset, keeping input order."""
    chosen: list = []
    for v in vectors:
        v = qvec(v)
        if not in_span(chosen, v):
            chosen.append(v)
    return chosen


# ---------------------------------------------------------------------------
# affine subspaces


@dataclass(frozen=True)
class AffineSubspace:
    base: RationalVector
    directions: Tuple[RationalVector, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains(self, p: Sequence) -> bool:
        return in_span(self.directions, sub(qvec(p), self.base))


def affine_span(points: Sequence[Sequence]) -> AffineSubspace:
    """Smallest affine subspace containing ``points``.

    >>> affine_span([(2, 0), (0, 3)]).directions
    ((Fraction(-2, 1), Fraction(3, 1)),)
    """
    if not points:
        raise ValueError("affine span of an empty point set")
    base = qvec(points[0])
    dirs = independent_subset(sub(qvec(p), base) for p in points[1:])
    return AffineSubspace(base, tuple(dirs))


def linear_span(vectors: Sequence[Sequence]) -> Tuple[RationalVector, ...]:
    """Basis of the linear span of ``vectors`` (the span through the origin)."""
    return tuple(independent_subset(vectors))


# ---------------------------------------------------------------------------
# integer lattices


@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of Z^n given by a row-style Hermite normal form basis.

    Rows are in echelon form with positive pivots, and every entry above a
    pivot lies in ``[0, pivot)``.  That makes the basis unique per lattice.
    """

    dim: int
    basis: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def reduce(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Canonical representative of ``v + lattice``."""
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in Z^{self.dim}")
        out = list(v)
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if x)
            q = out[p] // row[p]
            if q:
                out = [a - q * b for a, b in zip(out, row)]
        return tuple(out)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))


def hermite_form(vectors: Iterable[Sequence[int]], dim: Optional[int] = None
                 ) -> IntegerLattice:
    """Hermite normal form of the lattice generated by ``vectors``.

    >>> hermite_form([(2, 0), (0, 2), (1, 1)]).basis
    ((1, 1), (0, 2))
    """
    rows = [list(map(int, v)) for v in vectors]
    if dim is None:
        if not rows:
            raise DimensionError("dimension needed for an empty generator list")
        dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        raise DimensionError("generators of different lengths")
    rows = [r for r in rows if any(r)]
    basis = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not nz:
            col += 1
            continue
        # Euclid on column ``col`` until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            head = nz[0]
            new = [head]
            for r in nz[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col]:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        head = nz[0]
        if head[col] < 0:
            head = [-a for a in head]
        basis.append(head)
        rows = rest
        col += 1
    # reduce entries above each pivot
    for i in range(len(basis)):
        p = next(k for k, x in enumerate(basis[i]) if x)
        for j in range(i):
            q = basis[j][p] // basis[i][p]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return IntegerLattice(dim, tuple(tuple(r) for r in basis))


def lattice_contains(lattice: IntegerLattice, v: Sequence[int]) -> bool:
    return v in lattice

"""Newton polyhedra of monomial ideals and their face lattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

from . import geometry as geo
from .geometry import ExponentVector, RationalVector


class FaceError(ValueError):
    """A face-level computation was asked of a face where it is undefined."""


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: Tuple[ExponentVector, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a monomial ideal needs at least one generator")
        for g in self.generators:
            if len(g) != self.n:
                raise geo.DimensionError(f"generator {g} not in N^{self.n}")
            if any(c < 0 for c in g):
                raise ValueError(f"negative exponent in {g}")

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains(self, u: Sequence[int]) -> bool:
        """Is ``x^u`` in the ideal, i.e. is ``u`` in the exponent semigroup?"""
        return any(all(a >= b for a, b in zip(u, g)) for g in self.generators)

    def max_exponent(self) -> int:
        return max(max(g) for g in self.generators)

    def times(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Product with an ideal in a disjoint set of variables."""
        gens = [g + h for g in self.generators for h in other.generators]
        return minimalize_generators(gens)


def minimalize_generators(raw: Sequence[Sequence[int]]) -> MonomialIdeal:
    """Drop every exponent vector dominated by another one.

    >>> minimalize_generators([(1, 4), (2, 0), (0, 7), (1, 5)]).generators
    ((0, 7), (1, 4), (2, 0))
    """
    vecs = sorted(set(tuple(int(c) for c in v) for v in raw))
    if not vecs:
        raise ValueError("empty generator list")
    n = len(vecs[0])
    keep = [v for v in vecs
            if not any(w != v and all(a >= b for a, b in zip(v, w)) for w in vecs)]
    return MonomialIdeal(n, tuple(keep))


# ---------------------------------------------------------------------------
# polyhedron


@dataclass(frozen=True)
class FacetData:
    """Inequality ``normal . x >= constant`` with a primitive integer normal."""

    normal: Tuple[int, ...]
    constant: int

    @property
    def is_coordinate(self) -> bool:
        return self.constant == 0

    @property
    def functional(self) -> RationalVector:
        if self.is_coordinate:
            raise FaceError("coordinate facet has no normalized functional")
        return tuple(Fraction(a, self.constant) for a in self.normal)

    @property
    def m(self) -> int:
        return facet_m(self)

    def value(self, x: Sequence) -> Fraction:
        return geo.dot(self.normal, x)

    def extended(self, before: int, after: int) -> "FacetData":
        return FacetData((0,) * before + self.normal + (0,) * after, self.constant)


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(Gamma) for a monomial ideal; recession cone is always the orthant."""

    ideal: MonomialIdeal
    vertices: Tuple[ExponentVector, ...]
    facets: Tuple[FacetData, ...]

    @property
    def n(self) -> int:
        return self.ideal.n

    def contains(self, x: Sequence) -> bool:
        return (all(c >= 0 for c in x)
                and all(f.value(x) >= f.constant for f in self.facets))


def _cone_extreme_rays(rows: List[Tuple[Fraction, ...]]) -> List[Tuple[Fraction, ...]]:
    """Extreme rays of the pointed cone ``{y : r . y >= 0 for r in rows}``.

    Plain double description: start from a simplicial cone cut out by ``d``
    independent rows, then add the remaining rows one at a time, combining
    adjacent positive/negative ray pairs (combinatorial adjacency test).
    """
    d = len(rows[0])
    start: List[int] = []
    for i, r in enumerate(rows):
        if geo.rank([rows[j] for j in start] + [r]) > len(start):
            start.append(i)
        if len(start) == d:
            break
    if len(start) < d:
        raise ValueError("constraint system does not define a pointed cone")
    a0 = [rows[i] for i in start]
    # columns of a0^{-1}
    rays = []
    for k in range(d):
        e = [Fraction(int(j == k)) for j in range(d)]
        sol = geo.solve_linear(a0, e)
        rays.append(sol[0])
    done = list(start)

    def zeros(y):
        return frozenset(i for i in done if geo.dot(rows[i], y) == 0)

    for i, r in enumerate(rows):
        if i in start:
            continue
        vals = [geo.dot(r, y) for y in rays]
        pos = [y for y, v in zip(rays, vals) if v > 0]
        neg = [y for y, v in zip(rays, vals) if v < 0]
        zer = [y for y, v in zip(rays, vals) if v == 0]
        zsets = {y: zeros(y) for y in rays}
        new = pos + zer
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                if len(common) < d - 2:
                    continue
                if any(y is not p and y is not q and common <= zsets[y] for y in rays):
                    continue
                vp, vq = geo.dot(r, p), geo.dot(r, q)
                comb = tuple(vp * b - vq * a for a, b in zip(p, q))
                new.append(tuple(Fraction(x) for x in geo.primitive(comb)))
        done.append(i)
        rays = list(dict.fromkeys(tuple(Fraction(x) for x in geo.primitive(y)) for y in new))
    return rays


def build_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    """Exact H-representation of the Newton polyhedron.

    Works on the homogenized cone spanned by ``(1, v)`` for generators ``v``
    and ``(0, e_i)``; its facets are the extreme rays of the dual cone.
    """
    if ideal.is_unit:
        raise ValueError("the unit ideal has no proper Newton polyhedron")
    n = ideal.n
    rows = [(Fraction(1),) + geo.qvec(g) for g in ideal.generators]
    rows += [(Fraction(0),) + tuple(Fraction(int(j == i)) for j in range(n))
             for i in range(n)]
    facets = set()
    for y in _cone_extreme_rays(rows):
        normal = y[1:]
        if not any(normal):
            continue  # the face at infinity, x_0 >= 0
        prim = geo.primitive(y)
        facets.add(FacetData(tuple(prim[1:]), -prim[0]))
    facets = tuple(sorted(facets, key=lambda f: (f.constant == 0, f.normal, f.constant)))
    verts = tuple(g for g in ideal.generators
                  if geo.rank([f.normal for f in facets if f.value(g) == f.constant]) == n)
    return NewtonPolyhedron(ideal, verts, facets)


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    """A nonempty face of a Newton polyhedron.

    ``facets`` is the saturated set of facet indices whose hyperplanes contain
    the face (empty for the whole polyhedron).  ``points`` are the minimal
    generators lying on the face and ``rays`` the coordinate directions in its
    recession cone; together they generate it.
    """

    index: int
    facets: FrozenSet[int]
    points: Tuple[ExponentVector, ...]
    rays: Tuple[int, ...]
    n: int
    in_coordinate_hyperplane: bool

    @property
    def is_whole(self) -> bool:
        return not self.facets

    def directions(self) -> Tuple[Tuple[int, ...], ...]:
        p0 = self.points[0]
        out = [geo.sub(p, p0) for p in self.points[1:]]
        out += [tuple(int(j == i) for j in range(self.n)) for i in self.rays]
        return tuple(out)

    @property
    def dim(self) -> int:
        return geo.rank(self.directions()) if self.directions() else 0

    def span(self) -> geo.AffineSubspace:
        aff = geo.affine_span(self.points)
        dirs = geo.independent_subset(list(aff.directions) + [
            tuple(int(j == i) for j in range(self.n)) for i in self.rays])
        return geo.AffineSubspace(aff.base, tuple(dirs))

    def linear_span(self) -> Tuple[RationalVector, ...]:
        """Basis of V_Q, the linear span of the face."""
        return geo.linear_span([self.points[0]] + list(self.directions()))

    def contains(self, poly: NewtonPolyhedron, x: Sequence) -> bool:
        return poly.contains(x) and all(
            poly.facets[k].value(x) == poly.facets[k].constant for k in self.facets)

    def lattice_points_in_gamma(self, poly: NewtonPolyhedron, box: int
                                ) -> List[ExponentVector]:
        """Gamma cap Q cap [0, box]^n, listed in lexicographic order.

        Every such point is a face generator plus a combination of face rays.
        """
        out = set()
        for p in self.points:
            stack = [p]
            while stack:
                q = stack.pop()
                if q in out or max(q) > box:
                    continue
                out.add(q)
                for i in self.rays:
                    stack.append(q[:i] + (q[i] + 1,) + q[i + 1:])
        return sorted(out)

    def gamma_generators(self) -> List[ExponentVector]:
        """Face generators and their single steps along face rays.

        Gamma cap Q = (generators on Q) + N(face rays), so differences against
        these points already generate the whole face semigroup.
        """
        out = set(self.points)
        for p in self.points:
            for i in self.rays:
                out.add(p[:i] + (p[i] + 1,) + p[i + 1:])
        return sorted(out)


def _saturate(poly: NewtonPolyhedron, points, rays) -> FrozenSet[int]:
    return frozenset(
        k for k, f in enumerate(poly.facets)
        if all(f.value(p) == f.constant for p in points) and all(f.normal[i] == 0 for i in rays))


def _incident(poly: NewtonPolyhedron, facets):
    pts = tuple(g for g in poly.ideal.generators
                if all(poly.facets[k].value(g) == poly.facets[k].constant for k in facets))
    rays = tuple(i for i in range(poly.n) if all(poly.facets[k].normal[i] == 0 for k in facets))
    return pts, rays


def _coordinate_flag(points, rays, n) -> bool:
    return any(all(p[i] == 0 for p in points) and i not in rays for i in range(n))


def enumerate_faces(poly: NewtonPolyhedron) -> List[Face]:
    """All nonempty faces of ``poly``, the polyhedron itself first.

    Faces are closed under intersection with facets; each is keyed by its
    saturated facet set.  Order: by decreasing dimension, then by facet set.
    """
    seen: Dict[FrozenSet[int], Tuple] = {}
    frontier = [frozenset()]
    seen[frozenset()] = _incident(poly, ())
    while frontier:
        nxt = []
        for fs in frontier:
            for k in range(len(poly.facets)):
                if k in fs:
                    continue
                pts, rays = _incident(poly, fs | {k})
                if not pts:
                    continue
                key = _saturate(poly, pts, rays)
                if key not in seen:
                    seen[key] = (pts, rays)
                    nxt.append(key)
        frontier = nxt
    raw = []
    for fs, (pts, rays) in seen.items():
        raw.append((fs, pts, rays))
    faces = [Face(0, fs, pts, rays, poly.n, _coordinate_flag(pts, rays, poly.n))
             for fs, pts, rays in raw]
    faces.sort(key=lambda f: (-f.dim, sorted(f.facets)))
    return [Face(i, f.facets, f.points, f.rays, f.n, f.in_coordinate_hyperplane)
            for i, f in enumerate(faces)]


def face_functional(face: Face) -> RationalVector:
    """A linear form equal to 1 on the face, of minimal support.

    Supports are tried by size, then lexicographically in variable order.
    Only the restriction to the linear span of the face is meaningful.
    """
    if face.in_coordinate_hyperplane:
        raise FaceError("face lies in a coordinate hyperplane")
    if face.is_whole:
        raise FaceError("no linear form is constant 1 on the whole polyhedron")
    n = face.n
    eqs = [(p, 1) for p in face.points]
    eqs += [(tuple(int(j == i) for j in range(n)), 0) for i in face.rays]
    # directions between points are implied by the point equations
    for size in range(1, n + 1):
        for supp in combinations(range(n), size):
            mat = [[Fraction(row[j]) for j in supp] for row, _ in eqs]
            sol = geo.solve_linear(mat, [Fraction(b) for _, b in eqs])
            if sol is None:
                continue
            out = [Fraction(0)] * n
            for j, v in zip(supp, sol[0]):
                out[j] = v
            return tuple(out)
    raise FaceError("no linear form is 1 on this face; face data is inconsistent")


def supporting_functional(poly: NewtonPolyhedron, face: Face) -> RationalVector:
    """Nonnegative form that is >= 1 on ``poly`` with equality exactly on ``face``.

    Sum of the active facet inequalities, normalized.  Coordinates where it
    vanishes are exactly the recession directions of the face.
    """
    if face.is_whole:
        raise FaceError("the whole polyhedron has no supporting functional")
    normal = [0] * poly.n
    const = 0
    for k in face.facets:
        f = poly.facets[k]
        normal = [a + b for a, b in zip(normal, f.normal)]
        const += f.constant
    if const == 0:
        raise FaceError("face lies in a coordinate hyperplane")
    return tuple(Fraction(a, const) for a in normal)


def facet_m(facet: FacetData) -> int:
    """Least m > 0 with m * L_Q integral, L_Q the facet's normalized functional."""
    if facet.is_coordinate:
        raise FaceError("m is undefined for a coordinate facet")
    return geo.denominator_lcm(facet.functional)


# ---------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class ProductPolyhedron:
    """P_a x P_b with its faces indexed by pairs of factor faces."""

    left: NewtonPolyhedron
    right: NewtonPolyhedron
    poly: NewtonPolyhedron
    left_faces: Tuple[Face, ...]
    right_faces: Tuple[Face, ...]
    faces: Tuple[Face, ...]
    factor: Dict[Tuple[int, int], int] = field(hash=False, compare=False)

    def face_of(self, i: int, j: int) -> Face:
        return self.faces[self.factor[(i, j)]]


def product_polyhedron(pa: NewtonPolyhedron, pb: NewtonPolyhedron) -> ProductPolyhedron:
    """Product of two Newton polyhedra in disjoint variables.

    The facets of the product are the factor facets padded with zeros, so the
    product is assembled without a new hull computation.
    """
    n, m = pa.n, pb.n
    facets = tuple([f.extended(0, m) for f in pa.facets] + [f.extended(n, 0) for f in pb.facets])
    ideal = pa.ideal.times(pb.ideal)
    verts = tuple(sorted(v + w for v in pa.vertices for w in pb.vertices))
    poly = NewtonPolyhedron(ideal, verts, facets)
    fa, fb = enumerate_faces(pa), enumerate_faces(pb)
    faces = []
    factor = {}
    off = len(pa.facets)
    for q1 in fa:
        for q2 in fb:
            fs = frozenset(q1.facets) | frozenset(off + k for k in q2.facets)
            pts = tuple(sorted(p + q for p in q1.points for q in q2.points))
            rays = tuple(q1.rays) + tuple(n + i for i in q2.rays)
            factor[(q1.index, q2.index)] = len(faces)
            faces.append(Face(len(faces), fs, pts, rays, n + m,
                              q1.in_coordinate_hyperplane or q2.in_coordinate_hyperplane))
    return ProductPolyhedron(pa, pb, poly, tuple(fa), tuple(fb), tuple(faces), factor)

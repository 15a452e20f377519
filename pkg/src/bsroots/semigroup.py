"""Root sets of b-functions of monomial ideals from face semigroups.

For a face Q the semigroup S_Q generated by ``u - v`` (u in Gamma, v in
Gamma cap Q) is graded by a supporting functional of Q that is >= 0 on S_Q
and vanishes exactly on the unit group D_Q.  All searches run on S_Q / D_Q,
graded by that functional, so every enumeration below a value bound is
finite.  The box parameter only prunes coset representatives; results are
certified by recomputing at an enlarged box.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import geometry as geo
from .geometry import IntegerLattice, RationalVector
from .polyhedron import (Face, FaceError, MonomialIdeal, NewtonPolyhedron,
                         ProductPolyhedron, build_polyhedron, enumerate_faces,
                         face_functional, facet_m, product_polyhedron,
                         supporting_functional)

log = logging.getLogger(__name__)

YES, NO, UNKNOWN = "yes", "no", "unknown"


class StabilizationError(RuntimeError):
    """A box-truncated computation did not stabilize under enlargement."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


def default_box(ideal: MonomialIdeal) -> int:
    return 4 * (ideal.max_exponent() + ideal.n)


# ---------------------------------------------------------------------------
# semigroups


@dataclass(frozen=True)
class DifferenceSemigroup:
    """``base + N{generators}`` with its grading and unit lattice.

    ``weights / denom`` is the grading functional; ``units`` is the lattice
    spanned by the generators of grading zero.
    """

    n: int
    generators: Tuple[Tuple[int, ...], ...]
    base: Tuple[int, ...]
    weights: Tuple[int, ...]
    denom: int
    units: IntegerLattice

    def grade(self, v: Sequence[int]) -> Fraction:
        return Fraction(geo.dot(self.weights, v), self.denom)

    @property
    def positive_generators(self) -> Tuple[Tuple[int, ...], ...]:
        seen = {}
        for g in self.generators:
            if geo.dot(self.weights, g) > 0:
                r = self.units.reduce(g)
                seen[r] = None
        return tuple(sorted(seen))


def natural_box(S: DifferenceSemigroup, cap: Fraction) -> int:
    """Coordinate bound for elements of grade <= cap.

    Each positive generator carries grade at least ``w_min``, so at most
    ``cap / w_min`` of them sum to such an element.  Exact when the unit
    lattice is zero; otherwise a starting estimate for certification.
    """
    gens = S.positive_generators
    if not gens:
        return max(abs(x) for x in S.base)
    w_min = min(geo.dot(S.weights, g) for g in gens)
    steps = _floor(Fraction(cap) * S.denom / w_min)
    reach = max(max(abs(x) for x in g) for g in gens)
    return steps * reach + max(abs(x) for x in S.base)


def _make_semigroup(n, generators, base, grading) -> DifferenceSemigroup:
    gens = tuple(sorted(set(tuple(g) for g in generators)))
    den = geo.denominator_lcm(grading)
    w = tuple(int(x * den) for x in grading)
    zero = [g for g in gens if geo.dot(w, g) == 0]
    units = geo.hermite_form(zero, dim=n)
    return DifferenceSemigroup(n, gens, tuple(base), w, den, units)


def difference_semigroup(poly: NewtonPolyhedron, face: Face, box: int) -> DifferenceSemigroup:
    """S_Q shifted by e = (1, ..., 1), i.e. the semigroup behind M_Q.

    Generators are ``g - q`` for minimal generators g and points q of Gamma
    on the face, plus the unit vectors.  Only the face generators and their
    one-step ray shifts are used for q; the rest of Gamma cap Q adds nothing
    to the semigroup.  ``box`` is accepted for interface symmetry; the
    generator set is finite and never truncated.
    """
    if face.in_coordinate_hyperplane:
        raise FaceError("face lies in a coordinate hyperplane")
    n = poly.n
    pts = face.gamma_generators()
    gens = [geo.sub(g, q) for g in poly.ideal.generators for q in pts]
    gens += [tuple(int(j == i) for j in range(n)) for i in range(n)]
    if face.is_whole:
        grading = (Fraction(0),) * n
    else:
        grading = supporting_functional(poly, face)
    return _make_semigroup(n, gens, (1,) * n, grading)


@lru_cache(maxsize=4096)
def _graded_elements(S: DifferenceSemigroup, start: Tuple[int, ...], bound: int,
                     box: int) -> Tuple[Dict[Tuple[int, ...], int], bool]:
    """Cosets ``start + N{positive generators}`` mod units with grade <= bound.

    ``bound`` is in units of ``1/S.denom``.  Returns ``(rep -> grade, truncated)``.
    """
    gens = [(g, geo.dot(S.weights, g)) for g in S.positive_generators]
    s0 = S.units.reduce(start)
    out = {s0: geo.dot(S.weights, s0)}
    if out[s0] > bound:
        return {}, False
    truncated = False
    stack = [s0]
    while stack:
        c = stack.pop()
        gc = out[c]
        for g, wg in gens:
            if gc + wg > bound:
                continue
            r = S.units.reduce(geo.add(c, g))
            if r in out:
                continue
            if max(abs(x) for x in r) > box:
                truncated = True
                continue
            out[r] = gc + wg
            stack.append(r)
    return out, truncated


def member(S: DifferenceSemigroup, p: Sequence[int], budget: int) -> str:
    """Is ``p - base`` an N-combination of the generators?

    Exact unless the search had to drop coset representatives outside
    ``[-budget, budget]^n``, in which case a miss reports ``"unknown"``.
    """
    if len(p) != S.n:
        raise geo.DimensionError("point and semigroup dimensions differ")
    d = geo.sub(p, S.base)
    target = geo.dot(S.weights, d)
    if target < 0:
        return NO
    elems, truncated = _graded_elements(S, (0,) * S.n, target, budget)
    if S.units.reduce(d) in elems:
        return YES
    return UNKNOWN if truncated else NO


# ---------------------------------------------------------------------------
# per-face residue data


@dataclass(frozen=True)
class Certificate:
    box: int
    checked_box: int
    exact: bool  # neither run was truncated

    def as_dict(self):
        return {"box": self.box, "checked_box": self.checked_box, "exact": self.exact}


@dataclass(frozen=True)
class ResidueSet:
    face: int
    values: FrozenSet[Fraction]
    certificate: Optional[Certificate]


@dataclass(frozen=True)
class FaceContext:
    """Everything about one face needed to produce residues."""

    face: Face
    semigroup: DifferenceSemigroup
    functional: Optional[RationalVector]
    span: Tuple[RationalVector, ...]
    v0: Tuple[int, ...]
    box: int

    @property
    def n(self) -> int:
        return self.face.n

    @cached_property
    def normals(self) -> Tuple[Tuple[int, ...], ...]:
        return geo.annihilator(self.span, self.n)

    def elements(self, cap: Fraction):
        """Cosets of M_Q mod D_Q with grade <= cap, and a truncation flag."""
        S = self.semigroup
        bound = _floor(cap * S.denom)
        return _graded_elements(S, S.base, bound, self.box)

    def in_primed(self, rep, elems) -> bool:
        """Is the coset ``rep`` in M'_Q = v0 + M_Q?  ``elems`` must cover its grade."""
        S = self.semigroup
        return S.units.reduce(geo.sub(rep, self.v0)) in elems


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def face_context(poly: NewtonPolyhedron, face: Face, box: int,
                 v0: Optional[Sequence[int]] = None) -> FaceContext:
    S = difference_semigroup(poly, face, box)
    if v0 is None:
        v0 = face.points[0]
    functional = None if face.is_whole else face_functional(face)
    span = tuple(geo.qvec(v) for v in face.linear_span())
    return FaceContext(face, S, functional, span, tuple(v0), box)


def _residues_once(poly, face, cap, box, v0=None):
    ctx = face_context(poly, face, box, v0)
    if face.is_whole:
        return frozenset(), False
    elems, truncated = ctx.elements(cap)
    vals = set()
    for c in elems:
        if not geo.in_annihilated(ctx.normals, c):
            continue
        if ctx.in_primed(c, elems):
            continue
        val = geo.dot(ctx.functional, c)
        if val != ctx.semigroup.grade(c):
            raise AssertionError("functionals disagree on the linear span of the face")
        vals.add(-val)
    return frozenset(vals), truncated


def _certify(run, box: int, max_box: int):
    """Run ``run(box)`` at growing boxes until two consecutive results agree."""
    prev = run(box)
    while True:
        nxt_box = 2 * box
        cur = run(nxt_box)
        if prev[0] == cur[0] and not prev[1] and not cur[1]:
            return prev[0], Certificate(box, nxt_box, True)
        if nxt_box > max_box:
            raise StabilizationError(
                f"no stabilization up to box {nxt_box}", partial=cur[0])
        log.debug("no agreement at box %d, doubling", nxt_box)
        box, prev = nxt_box, cur


def residue_set(poly: NewtonPolyhedron, face: Face, cap: Optional[Fraction] = None,
                box: Optional[int] = None, v0=None, max_box: Optional[int] = None
                ) -> ResidueSet:
    """R_Q restricted to values in ``[-cap, 0)``, with a stabilization certificate."""
    cap = Fraction(poly.n if cap is None else cap)
    if cap <= 0:
        raise ValueError("cap must be positive")
    if face.in_coordinate_hyperplane:
        raise FaceError("face lies in a coordinate hyperplane")
    box = box or default_box(poly.ideal)
    if max_box is None:
        need = natural_box(difference_semigroup(poly, face, box), cap) if not face.is_whole else 0
        max_box = max(16 * box, 4 * need)
    vals, cert = _certify(lambda b: _residues_once(poly, face, cap, b, v0), box, max_box)
    return ResidueSet(face.index, vals, cert)


# ---------------------------------------------------------------------------
# whole root sets


@dataclass(frozen=True)
class RootSet:
    values: FrozenSet[Fraction]
    per_face: Tuple[Tuple[object, ResidueSet], ...]
    cap: Fraction

    @property
    def cap_hit(self) -> bool:
        return -self.cap in self.values

    def sorted(self) -> List[Fraction]:
        return sorted(self.values, reverse=True)


def _face_job(args):
    poly, face, cap, box = args
    return residue_set(poly, face, cap, box)


def roots(ideal_or_poly, cap: Optional[Fraction] = None, box: Optional[int] = None,
          jobs: int = 1) -> RootSet:
    """Root set of b_a: union of R_Q over faces off the coordinate hyperplanes."""
    poly = ideal_or_poly if isinstance(ideal_or_poly, NewtonPolyhedron) \
        else build_polyhedron(ideal_or_poly)
    cap = Fraction(poly.n if cap is None else cap)
    faces = [f for f in enumerate_faces(poly) if not f.in_coordinate_hyperplane]
    tasks = [(poly, f, cap, box) for f in faces]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_face_job, tasks))
    else:
        results = [_face_job(t) for t in tasks]
    allv = frozenset().union(*(r.values for r in results)) if results else frozenset()
    return RootSet(allv, tuple((r.face, r) for r in results), cap)


@dataclass(frozen=True)
class ModZClasses:
    moduli: Tuple[int, ...]
    classes: FrozenSet[Fraction]

    @property
    def generators(self) -> FrozenSet[Fraction]:
        return frozenset(Fraction(1, m) % 1 for m in self.moduli)


def classes_from_moduli(moduli) -> ModZClasses:
    ms = tuple(sorted(set(moduli)))
    cls = frozenset(Fraction(k, m) for m in ms for k in range(m))
    return ModZClasses(ms, cls)


def roots_mod_z(ideal_or_poly) -> ModZClasses:
    """Classes in Q/Z of the roots, from the m_Q of non-coordinate facets."""
    poly = ideal_or_poly if isinstance(ideal_or_poly, NewtonPolyhedron) \
        else build_polyhedron(ideal_or_poly)
    return classes_from_moduli(facet_m(f) for f in poly.facets if not f.is_coordinate)


def classes_of(values) -> FrozenSet[Fraction]:
    return frozenset(Fraction(v) % 1 for v in values)


# ---------------------------------------------------------------------------
# products of faces


def _product_span(c1: FaceContext, c2: FaceContext):
    f1, f2 = c1.face, c2.face
    n, m = f1.n, f2.n
    vecs = [f1.points[0] + f2.points[0]]
    vecs += [d + (0,) * m for d in f1.directions()]
    vecs += [(0,) * n + d for d in f2.directions()]
    return geo.linear_span(vecs)


def product_functional(c1: FaceContext, c2: FaceContext, t: Fraction = Fraction(1, 2)):
    """A form equal to 1 on Q1 x Q2, from the pencil t*L1 + (1-t)*L2."""
    n, m = c1.n, c2.n
    if c1.face.is_whole and c2.face.is_whole:
        return None
    if c2.face.is_whole:
        return tuple(c1.functional) + (Fraction(0),) * m
    if c1.face.is_whole:
        return (Fraction(0),) * n + tuple(c2.functional)
    t = Fraction(t)
    return tuple(t * x for x in c1.functional) + tuple((1 - t) * y for y in c2.functional)


def _value_buckets(ctx: FaceContext, cap: Fraction):
    """For each value L_Q on V_Q: a witness coset of M_Q and one of M_Q minus M'_Q."""
    elems, truncated = ctx.elements(cap)
    anyw: Dict[Fraction, tuple] = {}
    outw: Dict[Fraction, tuple] = {}
    for r in sorted(elems):
        if not geo.in_annihilated(ctx.normals, r):
            continue
        val = geo.dot(ctx.functional, r)
        anyw.setdefault(val, r)
        if val not in outw and not ctx.in_primed(r, elems):
            outw[val] = r
    return anyw, outw, truncated


def _product_residues_once(c1: FaceContext, c2: FaceContext, cap: Fraction, t):
    if c1.face.is_whole and c2.face.is_whole:
        return frozenset(), False
    if c1.face.is_whole or c2.face.is_whole:
        # M_P is the whole lattice, so only the other factor can leave M'
        ctx = c2 if c1.face.is_whole else c1
        _, outw, truncated = _value_buckets(ctx, cap)
        return frozenset(-v for v in outw if 0 < v <= cap), truncated
    # V_{Q1 x Q2} = {(u1, u2) : u_i in V_{Q_i}, L1(u1) = L2(u2)}, so a value
    # is a residue when one factor leaves M'_i at it and the other meets M_j
    any1, out1, tr1 = _value_buckets(c1, cap)
    any2, out2, tr2 = _value_buckets(c2, cap)
    span = _product_span(c1, c2)
    L = product_functional(c1, c2, t)
    vals = set()
    for v in set(any1) & set(any2):
        if not 0 < v <= cap:
            continue
        if v in out1:
            w = out1[v] + any2[v]
        elif v in out2:
            w = any1[v] + out2[v]
        else:
            continue
        if not geo.in_span(span, w) or geo.dot(L, w) != v:
            raise AssertionError("product witness left the span of the face")
        vals.add(-v)
    return frozenset(vals), tr1 or tr2


def product_face_residues(ctx1: FaceContext, ctx2: FaceContext, cap: Fraction,
                          t: Fraction = Fraction(1, 2), max_factor: int = 16) -> ResidueSet:
    """R_{Q1 x Q2} from the factor semigroups, via
    M \\ M' = (M1 \\ M1') x M2  union  M1 x (M2 \\ M2')."""
    if ctx1.face.in_coordinate_hyperplane or ctx2.face.in_coordinate_hyperplane:
        raise FaceError("product face lies in a coordinate hyperplane")
    cap = Fraction(cap)

    need = max(natural_box(c.semigroup, cap) / c.box for c in (ctx1, ctx2)
               if not c.face.is_whole) if not (ctx1.face.is_whole and ctx2.face.is_whole) else 0
    max_factor = max(max_factor, 4 * ceil(need))

    def run(scale):
        a = _rebox(ctx1, scale)
        b = _rebox(ctx2, scale)
        return _product_residues_once(a, b, cap, t)

    vals, cert = _certify(run, 1, max_factor)
    cert = Certificate(ctx1.box * cert.box, ctx1.box * cert.checked_box, cert.exact)
    return ResidueSet(-1, vals, cert)


def _rebox(ctx: FaceContext, scale: int) -> FaceContext:
    if scale == 1:
        return ctx
    return FaceContext(ctx.face, ctx.semigroup, ctx.functional, ctx.span, ctx.v0,
                       ctx.box * scale)


@dataclass(frozen=True)
class ProductRoots:
    product: ProductPolyhedron
    roots: RootSet


def product_roots(pa: NewtonPolyhedron, pb: NewtonPolyhedron, cap: Optional[Fraction] = None,
                  box: Optional[int] = None) -> ProductRoots:
    """Root set of b_{ab} through the face factorization of P_a x P_b."""
    prod = product_polyhedron(pa, pb)
    cap = Fraction(pa.n + pb.n if cap is None else cap)
    ba = box or default_box(pa.ideal)
    bb = box or default_box(pb.ideal)
    ctx_a = {f.index: face_context(pa, f, ba) for f in prod.left_faces
             if not f.in_coordinate_hyperplane}
    ctx_b = {f.index: face_context(pb, f, bb) for f in prod.right_faces
             if not f.in_coordinate_hyperplane}
    per = []
    for i, c1 in ctx_a.items():
        for j, c2 in ctx_b.items():
            r = product_face_residues(c1, c2, cap)
            k = prod.factor[(i, j)]
            per.append(((i, j), ResidueSet(k, r.values, r.certificate)))
    allv = frozenset().union(*(r.values for _, r in per)) if per else frozenset()
    return ProductRoots(prod, RootSet(allv, tuple(per), cap))

"""Brute-force reference computations for small instances.

Nothing here shares code with :mod:`bsroots.semigroup`.  Semigroups are
saturated densely on a box grid and residues are read off point by point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import FrozenSet, List, Sequence, Set, Tuple

import numpy as np

from . import geometry as geo
from .polyhedron import Face, MonomialIdeal, NewtonPolyhedron

MAX_DIM = 4
MAX_EXPONENT = 8


class OracleScaleError(ValueError):
    pass


def _check_scale(poly: NewtonPolyhedron, force: bool):
    if force:
        return
    if not 1 <= poly.n <= MAX_DIM or poly.ideal.max_exponent() > MAX_EXPONENT:
        raise OracleScaleError(
            f"oracle limited to n <= {MAX_DIM}, exponents <= {MAX_EXPONENT}; pass force=True")


def oracle_semigroup_points(generators: Sequence[Sequence[int]], base: Sequence[int],
                            B: int) -> Set[Tuple[int, ...]]:
    """Points of ``base + N{generators}`` reachable without leaving [-B, B]^n."""
    n = len(base)
    size = 2 * B + 1
    grid = np.zeros((size,) * n, dtype=bool)
    if max(abs(c) for c in base) > B:
        return set()
    grid[tuple(c + B for c in base)] = True
    gens = [tuple(g) for g in set(tuple(g) for g in generators) if any(g)]
    gens = [g for g in gens if max(abs(c) for c in g) < size]
    while True:
        before = int(grid.sum())
        for g in gens:
            dst = tuple(slice(max(0, c), size + min(0, c)) for c in g)
            src = tuple(slice(max(0, -c), size - max(0, c)) for c in g)
            # repeat the same step until it stops adding points
            while True:
                add = grid[src] & ~grid[dst]
                if not add.any():
                    break
                grid[dst] |= add
        if int(grid.sum()) == before:
            break
    return {tuple(int(c) - B for c in idx) for idx in zip(*np.nonzero(grid))}


def _gamma_box(ideal: MonomialIdeal, B: int) -> List[Tuple[int, ...]]:
    return [u for u in product(range(B + 1), repeat=ideal.n) if ideal.contains(u)]


def _dense_generators(ideal, face_pts, gamma):
    n = ideal.n
    gens = {geo.sub(u, v) for u in gamma for v in face_pts}
    units = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    gens.update(units)
    # g = (g - e_i) + e_i makes g redundant when g - e_i is also present
    slim = {g for g in gens
            if g in units or not any(geo.sub(g, e) in gens for e in units)}
    return slim


def oracle_residues(poly: NewtonPolyhedron, face: Face, B: int,
                    force: bool = False) -> FrozenSet[Fraction]:
    """R_Q by dense saturation of M_Q in [-B, B]^n.

    Only points ``u`` with both ``u`` and ``u - v0`` inside the inner box of
    radius ``B // 2`` are judged, so boundary effects of the saturation do
    not leak in.  Compare results across B to see stabilization.
    """
    _check_scale(poly, force)
    n = poly.n
    if face.is_whole:
        return frozenset()
    gamma = _gamma_box(poly.ideal, B)
    face_pts = [u for u in gamma if face.contains(poly, u)]
    if not face_pts:
        return frozenset()
    # L with L = 1 on face points, L = 0 on face rays
    rows = [list(p) for p in face_pts] + [[int(j == i) for j in range(n)] for i in face.rays]
    rhs = [1] * len(face_pts) + [0] * len(face.rays)
    sol = geo.solve_linear(rows, rhs)
    if sol is None:
        raise ValueError("no linear form is 1 on this face")
    L = sol[0]
    normals = geo.annihilator(geo.linear_span(rows), n)
    gens = _dense_generators(poly.ideal, face_pts, gamma)
    M = oracle_semigroup_points(gens, (1,) * n, B)
    v0 = face_pts[0]
    R = B // 2
    vals = set()
    for u in M:
        if max(abs(c) for c in u) > R:
            continue
        w = geo.sub(u, v0)
        if max(abs(c) for c in w) > R:
            continue
        if w in M:
            continue
        if not geo.in_annihilated(normals, u):
            continue
        vals.add(-geo.dot(L, u))
    return frozenset(vals)


def oracle_two_generator_region(a1: int, b1: int, a2: int, b2: int, s: int, t: int) -> bool:
    """Closed-form test for (s+1, t+1) + Z(a1-a2, b1-b2) lying in M_L minus M'_L.

    True iff no integer lies in [(t-b1)/(b2-b1), (s-a1)/(a2-a1)].
    """
    if not (a1 < a2 and b1 > b2):
        raise ValueError("need a1 < a2 and b1 > b2")
    lo = Fraction(t - b1, b2 - b1)
    hi = Fraction(s - a1, a2 - a1)
    return ceil(lo) > floor(hi)


# ---------------------------------------------------------------------------
# catalogs


def two_variable_catalog(max_exp: int = MAX_EXPONENT) -> List[MonomialIdeal]:
    """All proper ideals of k[x, y] with at most two minimal generators and
    exponents <= ``max_exp``."""
    from .polyhedron import minimalize_generators
    pts = [(a, b) for a in range(max_exp + 1) for b in range(max_exp + 1) if a or b]
    out = [minimalize_generators([p]) for p in pts]
    for (a1, b1), (a2, b2) in product(pts, repeat=2):
        if a1 < a2 and b1 > b2:
            out.append(minimalize_generators([(a1, b1), (a2, b2)]))
    return out

"""Bernstein-Sato polynomials as multisets of roots.

A :class:`BPoly` stands for the monic polynomial prod (s - r)^k.  Every closed
formula and product rule handled here is a statement about roots and
multiplicities, so coefficients are only produced for display.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple


class BPolyError(ValueError):
    pass


@dataclass(frozen=True)
class BPoly:
    roots: Tuple[Tuple[Fraction, int], ...]  # sorted by root, descending

    def __post_init__(self):
        for r, k in self.roots:
            if r >= 0:
                raise BPolyError(f"root {r} is not negative")
            if k <= 0:
                raise BPolyError(f"multiplicity {k} of root {r} is not positive")

    @classmethod
    def from_counts(cls, counts: Mapping) -> "BPoly":
        items = [(Fraction(r), int(k)) for r, k in counts.items() if k]
        return cls(tuple(sorted(items, key=lambda rk: rk[0], reverse=True)))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "BPoly":
        return cls.from_counts(Counter(Fraction(r) for r in roots))

    def counts(self) -> Dict[Fraction, int]:
        return dict(self.roots)

    def multiplicity(self, root) -> int:
        return self.counts().get(Fraction(root), 0)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.roots)

    @property
    def root_set(self) -> frozenset:
        return frozenset(r for r, _ in self.roots)

    def __mul__(self, other: "BPoly") -> "BPoly":
        return tensor(self, other)

    def coefficients(self) -> List[Fraction]:
        """Coefficients of the expanded monic polynomial, constant term first."""
        coeffs = [Fraction(1)]
        for r, k in self.roots:
            for _ in range(k):
                shifted = [Fraction(0)] + coeffs
                scaled = [-r * c for c in coeffs] + [Fraction(0)]
                coeffs = [a + b for a, b in zip(shifted, scaled)]
        return coeffs

    def factored(self) -> str:
        if not self.roots:
            return "1"
        parts = []
        for r, k in self.roots:
            f = f"(s+{-r})"
            parts.append(f if k == 1 else f"{f}^{k}")
        return "".join(parts)

    def to_records(self) -> List[dict]:
        return [{"root": str(r), "mult": k} for r, k in self.roots]

    @classmethod
    def from_records(cls, records: Sequence[Mapping]) -> "BPoly":
        c: Counter = Counter()
        for rec in records:
            c[Fraction(rec["root"])] += int(rec["mult"])
        return cls.from_counts(c)

    def __str__(self):
        return self.factored()


UNIT = BPoly(())


# ---------------------------------------------------------------------------
# closed forms


def _weighted_homogeneous(exponents: Sequence[int]) -> BPoly:
    # Milnor basis of x1^a1 + ... + xn^an: x^alpha with 0 <= alpha_i <= a_i - 2
    weights = [Fraction(1, a) for a in exponents]
    total = sum(weights, Fraction(0))
    delta = {sum((w * k for w, k in zip(weights, alpha)), Fraction(0))
             for alpha in product(*(range(a - 1) for a in exponents))}
    roots = [Fraction(-1)] + [-(total + rho) for rho in delta]
    return BPoly.from_roots(roots)


def from_univariate_power(a: int) -> BPoly:
    """b-function of x^a: prod_{i=1}^{a} (s + i/a)."""
    if a < 1:
        raise BPolyError("exponent must be >= 1")
    return _weighted_homogeneous([a])


def from_brieskorn(exponents: Sequence[int]) -> BPoly:
    """b-function of x1^a1 + ... + xn^an from its weights and Milnor basis.

    >>> from_brieskorn([2, 3]).factored()
    '(s+5/6)(s+1)(s+7/6)'
    """
    exponents = list(exponents)
    if not exponents:
        raise BPolyError("need at least one exponent")
    if any(a < 2 for a in exponents):
        raise BPolyError("Brieskorn-Pham exponents must all be >= 2")
    return _weighted_homogeneous(exponents)


def from_determinant(n: int) -> BPoly:
    """b-function of the generic n x n determinant: (s+1)...(s+n)."""
    if n < 1:
        raise BPolyError("matrix size must be >= 1")
    return BPoly.from_roots(-k for k in range(1, n + 1))


def from_generic_arrangement(n: int, l: int) -> BPoly:
    """Generic central arrangement of l >= n hyperplanes in n variables:
    (s+1)^(n-1) * prod_{j=0}^{2l-n-2} (s + (j+n)/l)."""
    if n < 1 or l < n:
        raise BPolyError("need l >= n >= 1")
    top = 2 * l - n - 2
    if top < 0:
        raise BPolyError(f"empty product range for n={n}, l={l}")
    roots = [Fraction(-1)] * (n - 1) + [-Fraction(j + n, l) for j in range(top + 1)]
    return BPoly.from_roots(roots)


# ---------------------------------------------------------------------------
# operations


def tensor(b1: BPoly, b2: BPoly) -> BPoly:
    """b_{f g} = b_f b_g for f, g in disjoint variables: add multiplicities."""
    c = Counter(b1.counts())
    c.update(b2.counts())
    return BPoly.from_counts(c)


def principal_product(b_ideal: BPoly, b_g: BPoly) -> BPoly:
    """b of a * (g) for g in separate variables; same as :func:`tensor`."""
    return tensor(b_ideal, b_g)


def lcm(b1: BPoly, b2: BPoly) -> BPoly:
    c1, c2 = b1.counts(), b2.counts()
    return BPoly.from_counts({r: max(c1.get(r, 0), c2.get(r, 0)) for r in set(c1) | set(c2)})


def ideal_union_combine(b1: BPoly, b2: BPoly) -> BPoly:
    """b of the ideal generated by both ideals, in disjoint variables.

    Root gamma = alpha + beta gets multiplicity max(n_alpha + m_beta - 1).
    """
    out: Dict[Fraction, int] = {}
    for r1, k1 in b1.roots:
        for r2, k2 in b2.roots:
            r = r1 + r2
            out[r] = max(out.get(r, 0), k1 + k2 - 1)
    return BPoly.from_counts(out)


def divide_linear(b: BPoly, root) -> BPoly:
    """Divide by (s - root); the division must be exact."""
    root = Fraction(root)
    c = b.counts()
    if c.get(root, 0) < 1:
        raise BPolyError(f"(s - ({root})) does not divide {b.factored()}")
    c[root] -= 1
    return BPoly.from_counts(c)

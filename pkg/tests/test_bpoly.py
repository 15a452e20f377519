from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsroots.bpoly import (UNIT, BPoly, BPolyError, divide_linear, from_brieskorn,
                           from_determinant, from_generic_arrangement,
                           from_univariate_power, ideal_union_combine, lcm,
                           principal_product, tensor)


def bp(*pairs):
    """BPoly from (root, multiplicity) pairs."""
    return BPoly.from_counts({F(r): k for r, k in pairs})


def poly_mul(p, q):
    out = [F(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def expand(factors):
    """Coefficients of prod (s + c), constant term first."""
    out = [F(1)]
    for c in factors:
        out = poly_mul(out, [F(c), F(1)])
    return out


# ---------------------------------------------------------------- constructors

@pytest.mark.parametrize("a, expected", [
    (1, bp((-1, 1))),
    (2, bp((F(-1, 2), 1), (-1, 1))),
    (3, bp((F(-1, 3), 1), (F(-2, 3), 1), (-1, 1))),
])
def test_univariate_power(a, expected):
    assert from_univariate_power(a) == expected


def test_brieskorn_examples():
    assert from_brieskorn([2, 3]) == bp((F(-5, 6), 1), (-1, 1), (F(-7, 6), 1))
    assert from_brieskorn([2, 2]) == bp((-1, 2))
    assert from_brieskorn([3, 3]) == bp((F(-2, 3), 1), (-1, 2), (F(-4, 3), 1))


def test_brieskorn_rejects_smooth_exponent():
    with pytest.raises(BPolyError):
        from_brieskorn([1, 3])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_determinant(n):
    assert from_determinant(n) == bp(*[(-k, 1) for k in range(1, n + 1)])
    assert from_determinant(n).coefficients() == expand(range(1, n + 1))


def test_arrangement_examples():
    # (s+1)^(n-1) * prod_{j=0}^{2l-n-2} (s + (j+n)/l)
    assert from_generic_arrangement(2, 3) == bp((F(-2, 3), 1), (-1, 2), (F(-4, 3), 1))
    # 2l-n-2 = 0 leaves the single factor j = 0
    assert from_generic_arrangement(2, 2) == bp((-1, 2))
    with pytest.raises(BPolyError):
        from_generic_arrangement(1, 1)
    with pytest.raises(BPolyError):
        from_generic_arrangement(3, 2)


@pytest.mark.parametrize("n, l", [(2, 3), (2, 4), (3, 3), (3, 5), (4, 6)])
def test_arrangement_matches_expansion(n, l):
    factors = [1] * (n - 1) + [F(j + n, l) for j in range(2 * l - n - 1)]
    assert from_generic_arrangement(n, l).coefficients() == expand(factors)


# ---------------------------------------------------------------- operations

def test_tensor_examples():
    assert tensor(from_univariate_power(2), from_univariate_power(3)) == \
        bp((F(-1, 2), 1), (F(-1, 3), 1), (F(-2, 3), 1), (-1, 2))
    b = from_brieskorn([2, 3])
    assert tensor(b, from_univariate_power(1)).multiplicity(-1) == b.multiplicity(-1) + 1
    assert tensor(from_determinant(2), from_determinant(2)) == bp((-1, 2), (-2, 2))


def test_lcm_examples():
    assert lcm(bp((-1, 2)), bp((-1, 1), (-2, 1))) == bp((-1, 2), (-2, 1))
    b = from_brieskorn([2, 3])
    assert lcm(b, b) == b
    assert lcm(bp((F(-1, 2), 1)), bp((F(-1, 3), 1))) == bp((F(-1, 2), 1), (F(-1, 3), 1))


def test_union_combine_examples():
    assert ideal_union_combine(bp((-1, 1)), bp((-1, 1))) == bp((-2, 1))
    assert ideal_union_combine(bp((-1, 2)), bp((F(-1, 2), 1), (-1, 1))) == \
        bp((F(-3, 2), 2), (-2, 2))
    assert ideal_union_combine(bp((-1, 1)), bp((-2, 1))) == bp((-3, 1))


def test_divide_examples():
    assert divide_linear(bp((-1, 2), (-2, 1)), -1) == bp((-1, 1), (-2, 1))
    with pytest.raises(BPolyError):
        divide_linear(bp((-2, 1)), -1)
    assert divide_linear(from_univariate_power(2), -1) == bp((F(-1, 2), 1))


def test_principal_product():
    x = from_univariate_power(1)
    assert principal_product(x, x) == bp((-1, 2))
    assert principal_product(UNIT, from_brieskorn([2, 3])) == from_brieskorn([2, 3])


def test_positive_root_rejected():
    with pytest.raises(BPolyError):
        BPoly.from_roots([F(1, 2)])


def test_records_round_trip():
    b = from_brieskorn([2, 3, 4])
    assert BPoly.from_records(b.to_records()) == b
    assert b.to_records()[0]["root"] == str(max(b.root_set))


def test_factored_string():
    assert from_brieskorn([2, 3]).factored() == "(s+5/6)(s+1)(s+7/6)"
    assert (from_univariate_power(2) * from_univariate_power(3)).factored() == \
        "(s+1/3)(s+1/2)(s+2/3)(s+1)^2"
    assert UNIT.factored() == "1"


# ---------------------------------------------------------------- properties

neg_root = st.fractions(max_value=F(-1, 12), min_value=F(-5), max_denominator=12)
bpolys = st.dictionaries(neg_root, st.integers(1, 3), max_size=5).map(BPoly.from_counts)


@given(bpolys, bpolys, bpolys)
def test_tensor_laws(a, b, c):
    assert tensor(a, b) == tensor(b, a)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
    assert tensor(a, UNIT) == a
    assert tensor(a, b).degree == a.degree + b.degree


@given(bpolys, bpolys, bpolys)
def test_lcm_laws(a, b, c):
    assert lcm(a, b) == lcm(b, a)
    assert lcm(lcm(a, b), c) == lcm(a, lcm(b, c))
    assert lcm(a, a) == a
    m = lcm(a, b)
    for r, k in a.roots:
        assert m.multiplicity(r) >= k


@given(bpolys, neg_root)
def test_divide_undoes_multiply(b, r):
    assert divide_linear(tensor(b, BPoly.from_roots([r])), r) == b


@given(bpolys)
def test_coefficients_vanish_at_roots(b):
    coeffs = b.coefficients()
    assert coeffs[-1] == 1
    for r in b.root_set:
        assert sum(c * r ** i for i, c in enumerate(coeffs)) == 0


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_brieskorn_negative_and_contains_minus_one(exps):
    b = from_brieskorn(exps)
    assert all(r < 0 for r in b.root_set)
    assert b.multiplicity(-1) >= 1
    # smallest root is the log canonical threshold sum 1/a_i, capped at 1
    assert -max(b.root_set) == min(F(1), sum(F(1, a) for a in exps))

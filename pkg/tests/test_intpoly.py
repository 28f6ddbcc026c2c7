import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polyradix.intpoly import (
    NEG_INF,
    IntPoly,
    PolyParseError,
    bareiss_det,
    coprime_over_Q,
    count_positive_roots,
    format_poly,
    gcd_over_q,
    is_expanding,
    parse_poly,
    resultant,
    sylvester_matrix,
)

coeffs = st.lists(st.integers(-20, 20), min_size=0, max_size=6)
nonzero = coeffs.filter(lambda c: any(c))
sx = sympy.Symbol("x")


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], sx)


def test_zero_polynomial():
    z = IntPoly()
    assert z.degree == NEG_INF
    assert z.is_zero()
    assert IntPoly((0, 0)) == z
    assert str(z) == "0"


def test_degree_and_leading_coefficient():
    p = IntPoly((6, 5, 1))
    assert p.degree == 2 and p.lc == 1 and p.is_monic()
    assert p(-2) == 0 and p(-3) == 0


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^2+5x+6", (6, 5, 1)),
        ("X^2 + 5*X + 6", (6, 5, 1)),
        ("-x+1", (1, -1)),
        ("[6,5,1]", (6, 5, 1)),
        ("3", (3,)),
        ("x - x", ()),
        ("2x^3-x", (0, -1, 0, 2)),
    ],
)
def test_parse(text, expected):
    assert parse_poly(text).coeffs == expected


@pytest.mark.parametrize("text, pos", [("x^2+x+", 6), ("x^2 x", 4), ("", 0), ("[1,a]", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolyParseError) as err:
        parse_poly(text)
    assert err.value.pos == pos
    assert "^" in str(err.value)


@given(coeffs)
def test_format_parse_round_trip(c):
    p = IntPoly(c)
    assert parse_poly(str(p)) == p
    assert parse_poly(format_poly(p.coeffs, "X")) == p


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    a, b, c = IntPoly(a), IntPoly(b), IntPoly(c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    for t in (-2, 0, 3):
        assert (a * b)(t) == a(t) * b(t)


@given(nonzero, st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_divmod_monic(a, m):
    a = IntPoly(a)
    m = IntPoly(m + [1])
    q, r = a.divmod_monic(m)
    assert q * m + r == a
    assert r.is_zero() or r.degree < m.degree


def test_compose_shift_substitutes_x_minus_a():
    p = IntPoly((1, 2, 3))
    assert p.compose_shift(1) == IntPoly((2, -4, 3))
    for t in range(-3, 4):
        assert p.compose_shift(5)(t) == p(t - 5)


def test_bareiss_matches_sympy():
    rows = [[2, -1, 0, 3], [1, 4, 2, 0], [0, 5, -3, 1], [7, 0, 1, 1]]
    assert bareiss_det(rows) == sympy.Matrix(rows).det()
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


def test_sylvester_shape():
    m = sylvester_matrix(IntPoly((4, 3, 1)), IntPoly((1, 3, 4)))
    assert len(m) == 4 and all(len(r) == 4 for r in m)


def test_resultant_examples():
    assert resultant(parse_poly("x^2+3x+4"), parse_poly("4x^2+3x+1")) == 144
    assert abs(resultant(parse_poly("x+2"), parse_poly("x+5"))) == 3
    assert abs(resultant(parse_poly("x+3"), parse_poly("x+5"))) == 2
    assert resultant(IntPoly.x(), IntPoly.x()) == 0
    assert resultant(parse_poly("2x+1"), parse_poly("2x+9")) == 16


@given(nonzero, nonzero)
@settings(max_examples=150)
def test_resultant_matches_sympy(a, b):
    p, q = IntPoly(a), IntPoly(b)
    if p.degree < 1 or q.degree < 1:
        return
    # sympy's sign convention differs; the sign is pinned by the tests below
    assert abs(resultant(p, q)) == abs(sympy.resultant(to_sympy(p).as_expr(), to_sympy(q).as_expr(), sx))
    assert resultant(q, p) == (-1) ** (p.degree * q.degree) * resultant(p, q)


@given(st.integers(-30, 30), nonzero)
def test_resultant_of_linear_is_evaluation(a, q):
    q = IntPoly(q)
    if q.degree < 1:
        return
    assert resultant(IntPoly((-a, 1)), q) == q(a)


@given(nonzero, nonzero)
def test_coprime_matches_sympy_gcd(a, b):
    p, q = IntPoly(a), IntPoly(b)
    g = sympy.gcd(to_sympy(p), to_sympy(q))
    assert coprime_over_Q(p, q) == (g.degree() == 0)
    assert gcd_over_q(p, q).degree == g.degree()


def test_coprime_rejects_zero():
    with pytest.raises(ValueError):
        coprime_over_Q(IntPoly(), IntPoly.x())


@given(st.lists(st.integers(-12, 12), min_size=1, max_size=5))
@settings(max_examples=200)
def test_is_expanding_matches_numpy(c):
    p = IntPoly(c + [1])
    roots = np.roots(list(reversed(p.coeffs)))
    mods = np.abs(roots)
    if np.any(np.abs(mods - 1) < 1e-6):
        return  # too close to call numerically
    assert is_expanding(p) == bool(np.all(mods > 1))


def test_is_expanding_examples():
    assert is_expanding(parse_poly("x^2+5x+6"))
    assert not is_expanding(parse_poly("x^2-1"))
    assert not is_expanding(parse_poly("x^2+x"))
    with pytest.raises(ValueError):
        is_expanding(IntPoly((3,)))


@given(st.lists(st.integers(-12, 12), min_size=1, max_size=5))
def test_positive_roots_match_sympy(c):
    p = IntPoly(c + [1])
    distinct = {r for r in sympy.real_roots(to_sympy(p)) if r > 0}
    assert count_positive_roots(p) == len(distinct)


def test_positive_roots_are_distinct():
    assert count_positive_roots(parse_poly("x^2-2x+1")) == 1
    assert count_positive_roots(parse_poly("x^3-x^2")) == 1
    assert count_positive_roots(parse_poly("x^2+5x+6")) == 0

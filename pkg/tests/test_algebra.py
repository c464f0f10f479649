from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.algebra import (
    DEGREVLEX,
    NEGDEGREVLEX,
    QQ,
    PolynomialRing,
    PrimeField,
    field_from_name,
    make_presentation,
    monomials_of_degree,
    parse_polynomials,
    parse_presentation,
)
from artifact.errors import ParseError, PreconditionError

R = PolynomialRing(QQ, ["x", "y", "z"])
F7 = PrimeField(7)
R7 = PolynomialRing(F7, ["x", "y", "z"])

exps = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.integers(-5, 5)


@st.composite
def polys(draw, ring=R):
    terms = draw(st.dictionaries(exps, coeffs, max_size=5))
    return ring.from_dict({m: ring.field(c) for m, c in terms.items()})


def to_sympy(f):
    x, y, z = sp.symbols("x y z")
    return sp.expand(sum(sp.Rational(int(c.numerator), int(c.denominator))
                         * x**m[0] * y**m[1] * z**m[2] for m, c in f.items()))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero()
    assert a * R.one() == a


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a + b) == sp.expand(to_sympy(a) + to_sympy(b))


@given(st.integers(1, 6))
def test_prime_field_inverse(a):
    assert F7.mul(a, F7.inv(a)) == 1
    assert F7.div(a, a) == 1


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(15)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ(0))
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_fraction_coercion():
    assert F7(Fraction(1, 2)) == 4
    assert QQ(Fraction(3, 4)) == QQ.from_ratio(3, 4)


def test_field_names():
    assert field_from_name("Q") == QQ
    assert field_from_name("Fp").char == 32003
    assert field_from_name("F101").char == 101
    with pytest.raises(ValueError):
        field_from_name("R")


def test_monomial_counts():
    from math import comb
    for n in range(1, 4):
        for d in range(5):
            ms = monomials_of_degree(n, d)
            assert len(ms) == comb(n + d - 1, d) == len(set(ms))
            assert all(sum(m) == d for m in ms)


def test_degrevlex_ordering():
    key = DEGREVLEX.key
    # x > y > z, and x*z < y^2 in degrevlex
    assert key((1, 0, 0)) > key((0, 1, 0)) > key((0, 0, 1))
    assert key((0, 2, 0)) > key((1, 0, 1))
    assert key((2, 0, 0)) > key((0, 0, 1))


def test_local_order_prefers_low_degree():
    S = PolynomialRing(QQ, ["x", "y"], NEGDEGREVLEX)
    f = S.parse("x^3 - y^2")
    assert f.lm == (0, 2)
    assert f.initial_form() == S.parse("-y^2")


def test_parse_roundtrip():
    f = R.parse("3*x^2*y - 1/2*z + 7")
    assert R.parse(str(f)) == f
    assert f.coefficient((0, 0, 1)) == QQ.from_ratio(-1, 2)


def test_compose_and_homogeneous_parts():
    f = R.parse("x^2 + x*y^2")
    g = f.compose([R.parse("y + z"), R.parse("y"), R.parse("z")])
    assert to_sympy(g) == sp.expand(sp.sympify("(y+z)**2 + (y+z)*y**2"))
    assert f.homogeneous_component(2) == R.parse("x^2")
    assert f.low_degree() == 2 and f.degree() == 3
    assert not f.is_homogeneous()


def test_prime_field_arithmetic():
    f = R7.parse("3*x + 5")
    assert f * f == R7.parse("2*x^2 + 2*x + 4")


def test_presentation_parser():
    P = parse_presentation("ring Q[x,y] local; ideal I = x*y, x^3 - y^2;")
    assert P.is_local and P.names == ("x", "y") and len(P.generators) == 2
    G = parse_presentation("ring F101[a,b,c] order degrevlex; ideal J = a^2, b*c;")
    assert G.field.char == 101 and G.ideal_name == "J" and G.is_homogeneous
    E = parse_presentation("ring Q[x];")
    assert E.generators == ()


@pytest.mark.parametrize("text, line, col", [
    ("ring Q[x,y] local; ideal I = x + y^2;", 1, 30),
    ("ring Q[x,x] local;", 1, 10),
    ("ring Q[x,y]\n order lex;", 2, 8),
    ("ring R[x];", 1, 6),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_generators_must_lie_in_m2():
    with pytest.raises(PreconditionError):
        make_presentation(QQ, ["x", "y"], ["x + y^2"])


def test_parse_polynomial_list():
    assert parse_polynomials(R, "") == []
    assert parse_polynomials(R, "x, y*z") == [R.parse("x"), R.parse("y*z")]

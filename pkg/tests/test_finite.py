import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.algebra import QQ, make_presentation, parse_presentation
from artifact.errors import UnsupportedError
from artifact.finite import build_finite_algebra
from artifact.groebner import ideal_gb

from oracle import quotient_data

CASES = [
    (["x", "y"], ["x^2", "y^2"]),
    (["x", "y"], ["x^3", "x*y", "y^2"]),
    (["x", "y"], ["x*y", "x^3 - y^2"]),
    (["x", "y", "z"], ["x^2", "y^2", "z^2", "x*y - y*z"]),
    (["x", "y", "z"], ["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"]),
]


@pytest.mark.parametrize("names, gens", CASES)
def test_dimension_matches_oracle(names, gens):
    A = build_finite_algebra(make_presentation(QQ, names, gens))
    _, basis, _, _ = quotient_data([g.replace("^", "**") for g in gens], names)
    assert A.dim == len(basis)
    assert A.check_associativity()
    assert sum(A.hilbert) == A.dim


@pytest.mark.parametrize("names, gens", CASES)
def test_products_agree_with_oracle(names, gens):
    R = make_presentation(QQ, names, gens)
    A = build_finite_algebra(R)
    xs, basis, mono, coords = quotient_data([g.replace("^", "**") for g in gens], names)
    rng = random.Random(3)
    for _ in range(6):
        i, j = rng.randrange(A.dim), rng.randrange(A.dim)
        prod = A.to_poly(A.mul(A.basis_vector(i), A.basis_vector(j)))
        lhs = sp.sympify(str(A.to_poly(A.basis_vector(i))).replace("^", "**")) * \
            sp.sympify(str(A.to_poly(A.basis_vector(j))).replace("^", "**"))
        diff = sp.expand(lhs - sp.sympify(str(prod).replace("^", "**")))
        assert all(c == 0 for c in coords(diff))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4),
       st.integers(2, 4), st.integers(2, 4))
def test_zero_in_algebra_iff_in_ideal(extra, a, b):
    gens = [f"x^{a}", f"y^{b}"] + [f"x^{i}*y^{j}" for i, j in extra if i + j >= 2]
    R = make_presentation(QQ, ["x", "y"], gens)
    A = build_finite_algebra(R)
    gb = ideal_gb(list(R.generators))
    for i in range(4):
        for j in range(4):
            f = R.ring.parse(f"x^{i}*y^{j} - 2*x^{j}*y^{i}")
            assert (not A.element(f)) == gb.contains(f.change_ring(gb.ring))


def test_socle_and_filtration():
    A = build_finite_algebra(parse_presentation("ring Q[x,y] order degrevlex; ideal I = x^3, x*y, y^2;"))
    assert A.socle().dim == 2
    assert A.hilbert == [1, 2, 1]
    assert A.socle_degree == 2
    B = build_finite_algebra(parse_presentation("ring Q[x,y] order degrevlex; ideal I = x^2, y^2;"))
    assert B.socle().dim == 1
    assert B.hilbert == [1, 2, 1]


def test_local_ring_filtration():
    A = build_finite_algebra(parse_presentation("ring Q[x,y] local; ideal I = x*y, x^3 - y^2;"))
    assert A.dim == 5
    assert A.hilbert == [1, 2, 1, 1]
    assert A.m_power(2) == A.ideal([A.ring.parse("x^2")])
    gr = A.assoc_graded()
    expected = make_presentation(QQ, ["x", "y"], ["x*y", "y^2", "x^4"])
    assert build_finite_algebra(gr).dim == 5
    gb = ideal_gb(list(expected.generators))
    assert all(gb.contains(g.change_ring(gb.ring)) for g in gr.generators)
    gb2 = ideal_gb(list(gr.generators))
    assert all(gb2.contains(g.change_ring(gb2.ring)) for g in expected.generators)


def test_ideal_operations():
    A = build_finite_algebra(parse_presentation("ring Q[x,y] order degrevlex; ideal I = x^2, y^2;"))
    p = A.ring.parse
    X, Y = A.ideal([p("x")]), A.ideal([p("y")])
    assert X.intersect(Y) == A.ideal([p("x*y")])
    assert A.zero_ideal().colon_element(A.element(p("x"))) == X
    assert (X + Y) == A.maximal_ideal()
    assert X.product(Y) == A.ideal([p("x*y")])
    assert len(A.maximal_ideal().minimal_generators()) == 2


def test_infinite_quotient_is_rejected():
    with pytest.raises(UnsupportedError):
        build_finite_algebra(make_presentation(QQ, ["x", "y"], ["x^2"]))

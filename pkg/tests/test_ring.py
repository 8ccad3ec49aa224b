from fractions import Fraction

import pytest

from trilinear.ring import (MultiDegree, MultiPoly, PolyParseError,
                            colon_graded_dim, format_poly, ideal_graded_dim,
                            monomials_of, parse_poly)

F = Fraction


def test_parse_format_round_trip():
    text = "-2/3*x0*y1*z1 + x1*y0*z0"
    p = parse_poly(text)
    assert p.degree == MultiDegree(1, 1, 1, 0)
    assert parse_poly(format_poly(p)) == p


def test_parse_rejects_mixed_degrees():
    with pytest.raises(PolyParseError):
        parse_poly("x0*y0 + x0*y0*z0")


def test_parse_powers_and_t_vars():
    p = parse_poly("t0^2 - t1*t2")
    assert p.degree == MultiDegree(0, 0, 0, 2)
    assert p.coeff((0, 0, 0, 0, 0, 0, 2, 0, 0, 0)) == 1


def test_monomials_of_count():
    # tri-linear slice: 2 * 2 * 2 monomials
    assert len(monomials_of(MultiDegree(1, 1, 1, 0))) == 8
    assert len(monomials_of(MultiDegree(2, 0, 0, 0))) == 3


def test_arithmetic_preserves_declared_degree():
    a = parse_poly("x0*y0*z0")
    b = parse_poly("x1*y1*z1")
    s = a + b
    assert s.degree == a.degree
    prod = a * b
    assert prod.degree == MultiDegree(2, 2, 2, 0)
    assert (a - a).is_zero


def test_derivative_and_eval():
    p = parse_poly("x0*y0*z0 + 3*x1*y1*z1")
    d = p.derivative("x1")
    assert d == parse_poly("3*y1*z1", d.degree)
    v = p.eval_groups({"x": (1, 2), "y": (1, 1), "z": (0, 1)})
    # x0 y0 z0 -> 0, 3 x1 y1 z1 -> 3 * 2
    assert v.coeff((0,) * 10) == 6


def test_substitute_t_composition():
    entries = tuple(parse_poly(e) for e in
                    ("x0*y0*z0", "x1*y0*z0", "x0*y1*z0", "x0*y0*z1"))
    p = parse_poly("t1")
    assert p.substitute_t(entries) == entries[1]


def test_permute_factors_moves_groups():
    p = parse_poly("x0*y1*z1")
    q = p.permute_factors((1, 2, 0))
    assert q.degree.tri == (1, 1, 1)
    # group 0 of the result reads from group 1 of the source
    assert q == parse_poly("x1*y1*z0", q.degree)


def test_ideal_graded_dim_line():
    gens = [parse_poly("y1"), parse_poly("z1")]
    assert ideal_graded_dim(gens, MultiDegree(1, 1, 1, 0)) == 6


def test_colon_graded_dim_saturates_irrelevant_factor():
    # x0 * (y0, y1) saturates to (x0): the colon picks up x0 at depth 1
    gens = [parse_poly("x0*y0"), parse_poly("x0*y1")]
    assert ideal_graded_dim(gens, MultiDegree(1, 0, 0, 0)) == 0
    assert colon_graded_dim(gens, MultiDegree(1, 0, 0, 0), 1) == 1
    # a principal ideal with square-free entry is already saturated
    only = [parse_poly("x0*y0")]
    assert colon_graded_dim(only, MultiDegree(0, 1, 0, 0), 1) == 0

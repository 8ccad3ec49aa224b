from fractions import Fraction

from trilinear.linalg import (BinaryForm, Echelon, gcd_binary_forms,
                              nullspace, rank, rational_linear_factor,
                              rational_roots, rref, squarefree_degree)

F = Fraction


def test_rref_identity():
    m = [[F(2), F(0)], [F(0), F(3)]]
    reduced, pivots = rref(m)
    assert reduced == [[F(1), F(0)], [F(0), F(1)]]
    assert pivots == [0, 1]


def test_rank_and_nullspace():
    # one dependent row, one free column
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert rank(m) == 2
    kernel = nullspace(m, 3)
    assert len(kernel) == 1
    v = kernel[0]
    for row in m:
        assert sum(a * b for a, b in zip(row, v)) == 0


def test_echelon_rank_and_nullspace():
    e = Echelon()
    e.add([F(1), F(1), F(0)])
    e.add([F(2), F(2), F(0)])  # dependent
    e.add([F(0), F(0), F(1)])
    assert e.rank == 2
    assert len(e.nullspace(3)) == 1


def _bf(group, coeffs):
    return BinaryForm(group, len(coeffs) - 1, tuple(F(c) for c in coeffs))


def test_gcd_binary_forms_shared_root():
    # both vanish at (1 : 1)
    a = _bf("x", [1, -1])
    b = _bf("x", [1, 0, -1])
    g = gcd_binary_forms([a, b])
    assert g.degree == 1
    assert g.evaluate(F(1), F(1)) == 0


def test_gcd_binary_forms_coprime():
    a = _bf("x", [1, -1])
    b = _bf("x", [1, 1])
    assert gcd_binary_forms([a, b]).degree == 0


def test_rational_roots_with_infinity():
    # x0 * (x0 - 2 x1): roots (0 : 1)? no -- (2 : 1) and (1 : 0) swapped in
    # the coefficient convention, checked by evaluation
    f = _bf("x", [1, -2, 0])
    roots = rational_roots(f)
    assert len(roots) == 2
    for r in roots:
        assert f.evaluate(*r) == 0


def test_squarefree_degree_counts_distinct_roots():
    # (x0 - x1)^2 has a single distinct root
    f = _bf("x", [1, -2, 1])
    assert squarefree_degree(f) == 1
    assert rational_linear_factor(f) is not None


def test_squarefree_degree_irrational_pair():
    # x0^2 - 2 x1^2: two distinct irrational roots, no rational factor
    f = _bf("x", [1, 0, -2])
    assert squarefree_degree(f) == 2
    assert rational_linear_factor(f) is None
    assert rational_roots(f) == []

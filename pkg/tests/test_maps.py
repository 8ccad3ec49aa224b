from fractions import Fraction

import pytest

from trilinear import MapValidationError, TriLinearMap, parse_poly
from conftest import make_map

F = Fraction


def test_validation_rejects_wrong_degree():
    with pytest.raises(MapValidationError):
        make_map("x0*y0", "x1*y1*z1", "x0*y1*z0", "x1*y0*z1")


def test_validation_rejects_dependent_entries():
    with pytest.raises(MapValidationError):
        make_map("x0*y0*z0", "2*x0*y0*z0", "x0*y1*z0", "x0*y0*z1")


def test_validation_rejects_common_factor():
    with pytest.raises(MapValidationError) as exc:
        make_map("x0*y0*z0", "x0*y1*z0", "x0*y0*z1", "x0*y1*z1")
    assert exc.value.witness is not None


def test_evaluate_projective_point():
    phi = make_map("x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0")
    image = phi.evaluate((1, 1), (1, 1), (1, 1))
    assert image == [F(1)] * 4


def test_left_compose_mixes_entries():
    phi = make_map("x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0")
    m = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    psi = phi.left_compose(m)
    assert psi.entries[0] == phi.entries[0] + phi.entries[1]
    assert psi.entries[1:] == phi.entries[1:]


def test_right_compose_permutation_moves_degrees():
    phi = make_map("x0*y0*z0", "x1*y0*z0", "x0*y1*z0", "x0*y0*z1")
    psi = phi.right_compose(permutation=(1, 2, 0))
    assert all(e.degree.tri == (1, 1, 1) for e in psi.entries)
    assert psi.entries[0] == parse_poly("x0*y0*z0")


def test_right_compose_gl2_is_invertible_change():
    phi = make_map("x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0")
    mats = [[[1, 2], [0, 1]], [[1, 0], [3, 1]], [[2, 0], [0, 1]]]
    psi = phi.right_compose(matrices=mats)
    inv = [[[1, -2], [0, 1]], [[1, 0], [-3, 1]], [[F(1, 2), 0], [0, 1]]]
    back = psi.right_compose(matrices=inv)
    assert back.entries == phi.entries

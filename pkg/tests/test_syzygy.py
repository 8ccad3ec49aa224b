import pytest

from trilinear import betti_fingerprint, new_syzygy_count, syzygy_space
from trilinear.atlas import record
from conftest import make_map

# a map with a Hilbert-Burch shaped resolution: one syzygy per unit degree
HB = ("x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0")


def test_unit_syzygies_of_monomial_map():
    phi = make_map(*HB)
    for d in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        basis = syzygy_space(phi, d)
        assert basis.dimension == 1
        a = basis.elements[0]
        # the defining relation holds exactly
        total = None
        for coeff, f in zip(a, phi.entries):
            term = coeff * f
            total = term if total is None else total + term
        assert total.is_zero


def test_syzygy_box_guard():
    phi = make_map(*HB)
    with pytest.raises(ValueError):
        syzygy_space(phi, (3, 0, 0))


def test_new_counts_ignore_monomial_multiples():
    phi = make_map(*HB)
    assert new_syzygy_count(phi, (1, 0, 0)) == 1
    # every (1,1,0) syzygy is a multiple of the unit ones here
    assert new_syzygy_count(phi, (1, 1, 0)) == 0


def test_fingerprint_tables_are_consistent():
    phi = record((2, 2, 2), 1).map
    fp = betti_fingerprint(phi)
    assert fp.box == (2, 2, 2)
    assert fp.nonzero_new_counts() == {
        (1, 1, 0): 2, (1, 0, 1): 2, (0, 1, 1): 2}
    hilbert = dict(fp.hilbert)
    assert hilbert[(1, 1, 1)] == 4  # the entries themselves
    assert hilbert[(0, 0, 0)] == 0

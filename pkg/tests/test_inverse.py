from trilinear import invert, parse_poly
from trilinear.inverse import jdc_slice, verify_inverse
from trilinear.atlas import record


def _proportional(pair, expected):
    a0, a1 = pair
    b0, b1 = (parse_poly(e) for e in expected)
    return (a0 * b1 - a1 * b0).is_zero


def test_hand_inverse_three_line_map():
    psi, cert = invert(record((1, 1, 1), 3).map)
    assert cert.all_true
    assert psi.phi_type == (1, 1, 1)
    expected = (("t1", "t0"), ("t3", "t2"), ("t2", "t0"))
    for pair, exp in zip(psi.components, expected):
        assert _proportional(pair, exp)


def test_hand_inverse_concurrent_line_map():
    psi, cert = invert(record((1, 1, 1), 4).map)
    assert cert.all_true
    expected = (("t1", "t0"), ("t2", "t0"), ("t3", "t0"))
    for pair, exp in zip(psi.components, expected):
        assert _proportional(pair, exp)


def test_component_degrees_match_type():
    rec = record((1, 2, 2), 1)
    psi, cert = invert(rec.map)
    assert cert.all_true
    assert sorted(psi.phi_type) == [1, 2, 2]


def test_certificate_cofactors_are_nonzero():
    phi = record((2, 2, 2), 2).map
    psi, cert = invert(phi)
    assert psi.phi_type == (2, 2, 2)
    for axis in ("x", "y", "z"):
        assert cert.checks[axis]
        assert not cert.cofactors[axis].is_zero
    # re-verification is deterministic
    again = verify_inverse(phi, psi)
    assert again.all_true


def test_jdc_slice_empty_below_minimal_degree():
    # a type-2 axis admits no certified degree-1 component
    from trilinear.inverse import _check_axis
    rec = record((2, 2, 2), 1)
    for axis in ("x", "y", "z"):
        for pair in jdc_slice(rec.map, axis, 1):
            assert _check_axis(rec.map, axis, pair) is None

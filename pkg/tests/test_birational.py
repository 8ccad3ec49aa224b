import pytest

from trilinear import decide
from trilinear.birational import (BIRATIONAL, NOT_BIRATIONAL,
                                  UPolyPreconditionError, condition_222,
                                  u_polynomial)
from trilinear.atlas import record
from conftest import make_map


def test_branch1_all_unit_syzygies():
    report = decide(record((1, 1, 1), 1).map)
    assert report.verdict == BIRATIONAL
    assert report.branch == 1
    assert report.phi_type == (1, 1, 1)
    assert report.unit_dims == (1, 1, 1)


def test_branch2_two_unit_syzygies():
    report = decide(record((1, 1, 2), 1).map)
    assert report.verdict == BIRATIONAL
    assert report.branch == 2
    assert sorted(report.phi_type) == [1, 1, 2]


def test_branch3_single_unit_with_fresh_pair():
    report = decide(record((1, 2, 2), 1).map)
    assert report.verdict == BIRATIONAL
    assert report.branch == 3
    assert sorted(report.phi_type) == [1, 2, 2]


def test_branch4_splitting_condition():
    report = decide(record((2, 2, 2), 1).map)
    assert report.verdict == BIRATIONAL
    assert report.branch == 4
    assert report.phi_type == (2, 2, 2)
    ok, us = condition_222(record((2, 2, 2), 1).map)
    assert ok
    assert sum(1 for u in us if u.has_linear_factor) >= 2


def test_negative_branch4(negative_222):
    report = decide(negative_222)
    assert report.verdict == NOT_BIRATIONAL
    assert report.branch == 4
    assert report.unit_dims == (0, 0, 0)
    assert all(n == 2 for n in report.pair_dims.values())
    assert all(not u.has_linear_factor for u in report.u_polys)


def test_u_polynomial_requires_no_unit_syzygies():
    with pytest.raises(UPolyPreconditionError):
        u_polynomial(record((1, 1, 1), 1).map, "xy")


def test_negative_verdict_carries_diagnostics(negative_222):
    report = decide(negative_222)
    assert report.diagnostics
    assert not report.is_birational

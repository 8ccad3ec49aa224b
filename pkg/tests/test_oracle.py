import random

import pytest

from trilinear.atlas import record
from trilinear.oracle import (dominance_sample, fiber, injectivity_sample,
                              random_point)


def _pushforward_target(phi, seed):
    rng = random.Random(seed)
    while True:
        p = random_point(rng)
        image = phi.evaluate(*p)
        if any(v != 0 for v in image):
            return p, image


def test_fiber_of_birational_map_is_one_point():
    phi = record((1, 1, 1), 1).map
    p, target = _pushforward_target(phi, seed=3)
    report = fiber(phi, target, seed=3)
    assert len(report.rational_points) == 1
    assert report.complex_lower_bound == 1
    q = report.rational_points[0]
    # the recovered preimage maps back to the target
    image = phi.evaluate(*q)
    assert _proportional(image, target)


def test_fiber_of_non_birational_map_is_larger(negative_222):
    p, target = _pushforward_target(negative_222, seed=5)
    report = fiber(negative_222, target, seed=5)
    assert not (len(report.rational_points) == 1
                and report.complex_lower_bound == 1)


def test_fiber_rejects_zero_target():
    phi = record((1, 1, 1), 1).map
    with pytest.raises(ValueError):
        fiber(phi, (0, 0, 0, 0))


def test_dominance_sample_passes_on_birational():
    phi = record((1, 2, 2), 4).map
    rep = dominance_sample(phi, seed=1, trials=3)
    assert rep.any_passed


def test_injectivity_sample_passes_on_birational():
    phi = record((2, 2, 2), 2).map
    rep = injectivity_sample(phi, seed=1, trials=3)
    assert rep.all_passed


def _proportional(a, b):
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True

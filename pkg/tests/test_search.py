import math

import pytest

from entwitness.search import threshold_scan


def test_locates_known_root():
    got = threshold_scan(lambda x: x**2 > 2.0, 0.0, 3.0, 1e-8)
    assert abs(got - math.sqrt(2)) < 1e-7


def test_direction_does_not_matter():
    got = threshold_scan(lambda x: x < 1.5, 0.0, 3.0, 1e-6)
    assert abs(got - 1.5) < 1e-5


def test_rejects_constant_predicate():
    with pytest.raises(ValueError):
        threshold_scan(lambda x: True, 0.0, 1.0, 1e-6)
    with pytest.raises(ValueError):
        threshold_scan(lambda x: False, 0.0, 1.0, 1e-6)


def test_rejects_bad_bracket_and_tolerance():
    with pytest.raises(ValueError):
        threshold_scan(lambda x: x > 0.5, 1.0, 0.0, 1e-6)
    with pytest.raises(ValueError):
        threshold_scan(lambda x: x > 0.5, 0.0, 1.0, 0.0)

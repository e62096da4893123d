import math
import random

import pytest

from ydilog.dilog import PI2_OVER_6, dilog_oracle, normalized_weighted_sum, rogers_dilog


def test_endpoints_exact():
    assert rogers_dilog(0.0) == 0.0
    assert rogers_dilog(1.0) == PI2_OVER_6
    assert dilog_oracle(0.0) == 0.0
    assert abs(dilog_oracle(1.0) - PI2_OVER_6) <= 1e-12


def test_special_values():
    # L(1/2) is forced by the reflection identity at the midpoint.
    assert abs(rogers_dilog(0.5) - math.pi**2 / 12) <= 1e-13
    # L at the inverse golden ratio squared; cross-checked by quadrature.
    x = (3.0 - math.sqrt(5.0)) / 2.0
    assert abs(rogers_dilog(x) - math.pi**2 / 15) <= 1e-13
    assert abs(dilog_oracle(x) - math.pi**2 / 15) <= 1e-12


@pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan"), 2.0, -1e-12])
def test_domain_rejection(bad):
    with pytest.raises(ValueError):
        rogers_dilog(bad)
    with pytest.raises(ValueError):
        dilog_oracle(bad)


def test_reflection_identity():
    rng = random.Random(7)
    for _ in range(1000):
        x = rng.uniform(1e-9, 1.0 - 1e-9)
        assert abs(rogers_dilog(x) + rogers_dilog(1.0 - x) - PI2_OVER_6) <= 1e-12


def test_monotone_on_grid():
    values = [rogers_dilog(i / 1000) for i in range(1001)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_oracle_agreement():
    assert abs(rogers_dilog(0.3) - dilog_oracle(0.3)) <= 1e-11
    rng = random.Random(3)
    for _ in range(50):
        x = rng.uniform(1e-6, 1.0 - 1e-6)
        assert abs(rogers_dilog(x) - dilog_oracle(x)) <= 1e-10


def test_normalized_weighted_sum():
    assert abs(normalized_weighted_sum([0.5], [1]) - 0.5) <= 1e-14
    rng = random.Random(11)
    for _ in range(20):
        x = rng.uniform(0.01, 0.99)
        assert abs(normalized_weighted_sum([x, 1.0 - x], [1, 1]) - 1.0) <= 1e-13
    golden = (3.0 - math.sqrt(5.0)) / 2.0
    assert abs(normalized_weighted_sum([golden], [1]) - 0.4) <= 1e-13


def test_normalized_weighted_sum_rejections():
    with pytest.raises(ValueError):
        normalized_weighted_sum([0.5, 0.5], [1])
    with pytest.raises(ValueError):
        normalized_weighted_sum([0.0], [1])
    with pytest.raises(ValueError):
        normalized_weighted_sum([0.5], [0])

from fractions import Fraction

import pytest

from ladderfib.core import (
    DopingState,
    LadderError,
    LadderSpec,
    OddRungsUndopedThreeLeg,
    UnsupportedLegs,
    are_neighbours,
    as_fraction,
    dimers_for_density,
    max_dimers,
    site_from_index,
    site_index,
    validate_spec,
)


@pytest.mark.parametrize("legs", [1, 5, 0, -2])
def test_unsupported_legs(legs):
    with pytest.raises(UnsupportedLegs):
        validate_spec(LadderSpec(legs, 4))


def test_odd_three_leg_rejected_only_when_undoped():
    with pytest.raises(OddRungsUndopedThreeLeg):
        LadderSpec(3, 5).validate()
    LadderSpec(3, 5, doped=True).validate()
    LadderSpec(3, 4).validate()


def test_negative_rungs():
    with pytest.raises(LadderError):
        validate_spec(LadderSpec(2, -1))


def test_errors_are_value_errors():
    assert issubclass(LadderError, ValueError)


def test_sites_and_max_dimers():
    spec = LadderSpec(3, 5, doped=True)
    assert spec.sites == 15
    assert max_dimers(spec) == 7


def test_doping_state():
    s = DopingState(2, 3, 2)
    assert s.holes == 2
    assert s.feasible
    assert s.hole_density == Fraction(1, 3)
    assert not DopingState(2, 3, 4).feasible


@pytest.mark.parametrize(
    "legs,rungs,n_h,k",
    [
        (2, 100, 0.0, 100),
        (2, 100, 1.0, 0),
        (2, 100, 0.1, 90),
        (3, 100, 0.02, 147),
        (3, 5, 0.0, 7),  # 7.5 capped to floor(15/2)
        (4, 100, 0.44, 112),
        (2, 1, 0.5, 1),  # 0.5 ties up
    ],
)
def test_dimers_for_density(legs, rungs, n_h, k):
    assert dimers_for_density(legs, rungs, n_h) == k


def test_dimers_for_density_range():
    with pytest.raises(LadderError):
        dimers_for_density(2, 10, 1.5)


def test_as_fraction_uses_shortest_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction(Fraction(2, 3)) == Fraction(2, 3)


def test_site_round_trip():
    for legs in (2, 3, 4):
        for i in range(1, 5 * legs + 1):
            assert site_index(*site_from_index(i, legs), legs) == i


def test_neighbours():
    assert are_neighbours((1, 1), (2, 1))
    assert are_neighbours((1, 1), (1, 2))
    assert not are_neighbours((1, 1), (2, 2))
    assert not are_neighbours((1, 1), (1, 3))

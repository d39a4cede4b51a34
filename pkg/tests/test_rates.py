import math

import mpmath
import pytest

from ladderfib.core import EmptyGrid, InsufficientN, LadderError, UnsupportedLegs
from ladderfib.rates import (
    DivergenceProfile,
    bracketed_root,
    closed_form_rate,
    constant_density_ratio,
    density_grid,
    doped_rate,
    doped_rate_profile,
    empirical_rate,
    rate_result,
)

PHI = (1 + 5**0.5) / 2


def test_closed_forms():
    assert float(closed_form_rate(2)) == pytest.approx(PHI, abs=1e-15)
    assert float(closed_form_rate(3)) == pytest.approx(2 + 3**0.5, abs=1e-15)
    x = closed_form_rate(4)
    with mpmath.workdps(50):
        assert abs(mpmath.polyval([1, -2, -3, 2], x)) < mpmath.mpf(10) ** -45
    assert round(float(x), 4) == 2.8136


def test_bracketed_root_rejects_bad_bracket():
    with pytest.raises(ValueError):
        bracketed_root([1, 0, -2], 2, 3)


@pytest.mark.parametrize("legs", [2, 3, 4])
def test_empirical_converges(legs):
    r = rate_result(legs, 100)
    assert r.deviation < 1e-6


def test_per_rung_normalization():
    assert float(rate_result(3).per_rung_normalized) == pytest.approx(math.sqrt(2 + 3**0.5))


def test_empirical_errors():
    with pytest.raises(InsufficientN):
        empirical_rate(3, 0)
    with pytest.raises(InsufficientN):
        empirical_rate(3, 7)
    with pytest.raises(UnsupportedLegs):
        empirical_rate(5, 10)


def test_two_leg_doped_endpoints():
    assert doped_rate(2, 100, 0.0) == pytest.approx(PHI, abs=1e-6)
    assert doped_rate(2, 100, 1.0) == 1.0


def test_doped_rate_full_packing_is_exact_ratio():
    # three legs at full packing: sqrt(Z_{100,150} / Z_{98,147})
    assert doped_rate(3, 100, 0.0) == pytest.approx(2.0, abs=1e-9)


def test_doped_rate_rejects_bad_density():
    with pytest.raises(LadderError):
        doped_rate(2, 50, 1.2)


def test_density_grid():
    g = density_grid()
    assert len(g) == 201 and g[0] == 0 and g[-1] == 1 and g[88] == 0.44
    with pytest.raises(EmptyGrid):
        density_grid(step=0)


def test_profile_needs_ten_rungs():
    with pytest.raises(InsufficientN):
        doped_rate_profile(2, 9)
    with pytest.raises(EmptyGrid):
        doped_rate_profile(2, 20, grid=[])


@pytest.mark.parametrize("legs,peak", [(2, 0.395), (3, 0.435), (4, 0.455)])
def test_profile_unimodal_with_frozen_peak(legs, peak):
    p = doped_rate_profile(legs, 100)
    assert p.is_unimodal()
    assert len(p.local_maxima()) == 1
    assert p.peak[0] == pytest.approx(peak)


def test_three_leg_dominates_two_leg():
    a2 = doped_rate_profile(2, 100).alphas
    a3 = doped_rate_profile(3, 100).alphas
    assert all(x > y for x, y in zip(a3[:-1], a2[:-1]))


@pytest.mark.parametrize("legs", [2, 3, 4])
def test_literal_ratio_is_not_unimodal(legs):
    # k is rounded independently at N and N-1, so the same-density ratio is ragged
    pts = tuple((x, float(constant_density_ratio(legs, 100, x))) for x in density_grid()[:-1])
    profile = DivergenceProfile(legs, 100, pts)
    assert not profile.is_unimodal()
    assert len(profile.local_maxima()) > 1


@pytest.mark.parametrize("legs", [2, 3, 4])
def test_empirical_error_shrinks(legs):
    errs = [rate_result(legs, n).deviation for n in (20, 40, 80, 160)]
    assert all(b < a for a, b in zip(errs, errs[1:]))

"""Valence bond entanglement entropy S_L from the covering sequences.

Every value is an exact :class:`~fractions.Fraction` in units of ln 2: the mean number
of singlets crossing the cut between rungs L and L+1, all coverings weighted equally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
import math

import mpmath

from ladderfib.core import BadCut, LadderSpec, check_legs, dimers_for_density, validate_spec
from ladderfib.rates import PRECISION, closed_form_rate
from ladderfib.sequences import CountTable, doped_table, undoped_sequence

log = logging.getLogger(__name__)


def _check_cut(legs, rungs, cut, undoped):
    if not 1 <= cut <= rungs - 1:
        raise BadCut(f"cut must lie in 1..{rungs - 1}, got {cut}")
    if undoped and legs == 3 and cut % 2 == 0:
        raise BadCut("undoped three-leg cuts must sit after an odd rung")


def admissible_cuts(legs: int, rungs: int, doped: bool = False) -> list[int]:
    cuts = range(1, rungs)
    if legs == 3 and not doped:
        return [c for c in cuts if c % 2]
    return list(cuts)


def undoped_crossings(legs: int, rungs: int, cut: int) -> int:
    """Total crossing singlets over all coverings, the numerator of S_L."""
    z = undoped_sequence(legs, rungs)

    def at(m):
        return z[m] if 0 <= m <= rungs else 0

    L, N = cut, rungs
    if legs == 2:
        return 2 * at(L - 1) * at(N - L - 1)
    if legs == 3:
        return 5 * at(L - 1) * at(N - L - 1) + 2 * sum(at(L - 2) * at(N - L - 1 - i) for i in range(1, N - L))
    return 10 * at(L - 1) * at(N - L - 1) + 2 * sum(at(L - 1) * at(N - L - 3 - i) for i in range(1, N - L - 2))


def vbe_undoped(legs: int, rungs: int, cut: int) -> Fraction:
    validate_spec(LadderSpec(legs, rungs))
    _check_cut(legs, rungs, cut, undoped=True)
    return Fraction(undoped_crossings(legs, rungs, cut), undoped_sequence(legs, rungs)[rungs])


def doped_crossings(legs: int, rungs: int, dimers: int, cut: int, table: CountTable | None = None) -> int:
    table = table or doped_table(legs, rungs)
    N, k, L = rungs, dimers, cut
    z = table
    left_max = legs * (L - 1) // 2  # Z_{L-1, j} vanishes beyond this
    if legs in (2, 3):
        # two- and three-leg expressions are identical
        first = sum(z(L - 1, k - 2 - i) * z(N - L - 1, i) for i in range(0, k - 1))
        second = 0
        for i in range(1, N - L + 1):
            for j in range(0, min(k - i, left_max) + 1):
                second += z(N - L - i, k - i - j) * z(L - 1, j)
        return 2 * first + 2 * second
    first = 0
    for j in (1, 2, 3):
        first += j * sum(z(L - 1, k - j - i) * z(N - 1 - L, i) for i in range(0, k - j + 1))
    second = 0
    for i in range(1, N // 4 + 1):
        for j in range(0, min(6 * i - 3, left_max) + 1):
            second += z(N - 4 * i - L - 1, k - 6 * i - j) * z(L - 1, j)
    return first + 4 * second


def vbe_doped(legs: int, rungs: int, dimers: int, cut: int, table: CountTable | None = None) -> Fraction:
    validate_spec(LadderSpec(legs, rungs, doped=True))
    _check_cut(legs, rungs, cut, undoped=False)
    if not 0 <= dimers <= legs * rungs // 2:
        raise BadCut(f"dimer count {dimers} infeasible on {legs}x{rungs}")
    table = table or doped_table(legs, rungs)
    return Fraction(doped_crossings(legs, rungs, dimers, cut, table), table(rungs, dimers))


@dataclass(frozen=True)
class EntropyCurve:
    legs: int
    rungs: int
    hole_density: float
    dimers: int | None  # None for the undoped sequences
    points: tuple[tuple[int, Fraction], ...]
    s_sat: Fraction
    l_sat: int

    def values(self) -> dict[int, Fraction]:
        return dict(self.points)


def _saturation(points, rungs):
    by_cut = dict(points)
    best = min(abs(2 * c - rungs) for c in by_cut)
    near = [c for c in by_cut if abs(2 * c - rungs) == best]
    if len(near) > 1:
        log.debug("saturation candidates %s", {c: float(by_cut[c]) for c in near})
    s_sat = max(by_cut[c] for c in near)
    # smallest cut from which the curve stays within 1% of S_sat up to the middle
    l_sat = min(near)
    for c in sorted((c for c in by_cut if c <= min(near)), reverse=True):
        if abs(by_cut[c] - s_sat) < s_sat / 100:
            l_sat = c
        else:
            break
    return s_sat, l_sat


def vbe_curve(legs: int, rungs: int, hole_density=0.0, doped: bool | None = None, cuts=None) -> EntropyCurve:
    """S_L over the admissible cuts; S_sat is taken at the cut nearest N/2.

    ``n_h = 0`` uses the undoped sequences unless ``doped=True`` forces the doped
    expressions at full packing (they coincide for two legs only).
    """
    check_legs(legs)
    if doped is None:
        doped = float(hole_density) != 0.0
    if doped:
        k = dimers_for_density(legs, rungs, hole_density)
        table = doped_table(legs, rungs)
        cuts = admissible_cuts(legs, rungs, doped=True) if cuts is None else cuts
        points = tuple((c, vbe_doped(legs, rungs, k, c, table)) for c in cuts)
    else:
        k = None
        cuts = admissible_cuts(legs, rungs) if cuts is None else cuts
        points = tuple((c, vbe_undoped(legs, rungs, c)) for c in cuts)
    s_sat, l_sat = _saturation(points, rungs)
    return EntropyCurve(legs, rungs, float(hole_density), k, points, s_sat, l_sat)


def saturation_value(legs: int, rungs: int, hole_density=0.0, doped: bool | None = None) -> Fraction:
    """S_sat only, evaluating just the cuts nearest N/2."""
    cuts = admissible_cuts(legs, rungs, doped=bool(doped) or float(hole_density) != 0.0)
    best = min(abs(2 * c - rungs) for c in cuts)
    near = [c for c in cuts if abs(2 * c - rungs) == best]
    return vbe_curve(legs, rungs, hole_density, doped, cuts=near).s_sat


@dataclass(frozen=True)
class SaturationConstants:
    legs: int
    rungs: int
    p_value: mpmath.mpf
    s_sat_closed: mpmath.mpf


SATURATION_PREFACTOR = {2: 2, 3: 5, 4: 10}


def saturation_closed_form(legs: int, rungs: int) -> SaturationConstants:
    """``prefactor * p / rate^2`` with ``p = Z_{N/2} / rate^{N/2}`` and the per-rung rate."""
    check_legs(legs)
    if rungs < 40 or rungs % 2:
        raise BadCut("closed-form saturation needs an even N >= 40")
    half = rungs // 2
    if legs == 3 and half % 2:
        raise BadCut("three-leg closed form needs N/2 even")
    z = undoped_sequence(legs, half)[half]
    with mpmath.workdps(PRECISION):
        rate = closed_form_rate(legs)
        if legs == 3:
            rate = mpmath.sqrt(rate)
        p = z / rate**half
        s = SATURATION_PREFACTOR[legs] * p / rate**2
    return SaturationConstants(legs, rungs, p, s)


def ebits(value: Fraction) -> float:
    """Presentation value ``S_L = ln 2 * mean crossings``."""
    return float(value) * math.log(2)

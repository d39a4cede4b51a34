"""Lattice geometry, doping bookkeeping and feasibility rules shared by every module.

Sites are addressed as ``(leg, rung)`` pairs, both 1-based, with open boundaries
along the legs and across the rungs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

SUPPORTED_LEGS = (2, 3, 4)


class LadderError(ValueError):
    """Base class for invalid ladder requests."""


class UnsupportedLegs(LadderError):
    pass


class OddRungsUndopedThreeLeg(LadderError):
    pass


class BadCut(LadderError):
    """Cut position outside 1..N-1, or of the wrong parity for an undoped three-leg ladder."""


class InsufficientN(LadderError):
    pass


class EmptyGrid(LadderError):
    pass


class TooLarge(LadderError):
    """Exhaustive search requested beyond the oracle's practical bound."""


class GeometryInconsistent(LadderError):
    """A block fragment violates the covering rules (overlap, non-neighbour dimer, gap)."""


@dataclass(frozen=True)
class LadderSpec:
    legs: int
    rungs: int
    doped: bool = False

    @property
    def sites(self) -> int:
        return self.legs * self.rungs

    def validate(self) -> "LadderSpec":
        validate_spec(self)
        return self


def validate_spec(spec: LadderSpec) -> None:
    if spec.legs not in SUPPORTED_LEGS:
        raise UnsupportedLegs(f"legs must be one of {SUPPORTED_LEGS}, got {spec.legs}")
    if spec.rungs < 0:
        raise LadderError(f"rungs must be non-negative, got {spec.rungs}")
    if spec.legs == 3 and not spec.doped and spec.rungs % 2:
        raise OddRungsUndopedThreeLeg(
            f"an undoped three-leg ladder needs an even number of rungs, got {spec.rungs}"
        )


def check_legs(legs: int) -> None:
    if legs not in SUPPORTED_LEGS:
        raise UnsupportedLegs(f"legs must be one of {SUPPORTED_LEGS}, got {legs}")


def max_dimers(spec: LadderSpec) -> int:
    return spec.legs * spec.rungs // 2


@dataclass(frozen=True)
class DopingState:
    """``dimers`` singlets on an ``legs x rungs`` ladder; every other site is a hole."""

    legs: int
    rungs: int
    dimers: int

    @property
    def holes(self) -> int:
        return self.legs * self.rungs - 2 * self.dimers

    @property
    def feasible(self) -> bool:
        return 0 <= self.dimers <= self.legs * self.rungs // 2

    @property
    def singlet_density(self) -> Fraction:
        return Fraction(2 * self.dimers, self.legs * self.rungs)

    @property
    def hole_density(self) -> Fraction:
        return 1 - self.singlet_density


def as_fraction(x) -> Fraction:
    """Exact value of a user-supplied density; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def dimers_for_density(legs: int, rungs: int, hole_density) -> int:
    """Dimer count closest to ``hole_density``; ties go to more dimers, clamped to the feasible range."""
    n_h = as_fraction(hole_density)
    if not 0 <= n_h <= 1:
        raise LadderError(f"hole density must lie in [0, 1], got {hole_density}")
    target = (1 - n_h) * legs * rungs / 2
    k = math.floor(target + Fraction(1, 2))
    return max(0, min(k, legs * rungs // 2))


def site_index(leg: int, rung: int, legs: int) -> int:
    return (rung - 1) * legs + leg


def site_from_index(index: int, legs: int) -> tuple[int, int]:
    rung, leg0 = divmod(index - 1, legs)
    return leg0 + 1, rung + 1


def are_neighbours(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (la, ra), (lb, rb) = a, b
    return (ra == rb and abs(la - lb) == 1) or (la == lb and abs(ra - rb) == 1)

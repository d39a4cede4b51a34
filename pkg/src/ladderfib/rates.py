"""Divergence rates of the covering sequences.

Undoped rates come from the characteristic polynomials of the compact recursions and
from exact ratios of large-N counts. Doped rates are per-rung growth factors at fixed
hole density, see :func:`doped_rate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

import mpmath
import numpy as np
from scipy.optimize import brentq

from ladderfib.core import EmptyGrid, InsufficientN, LadderError, as_fraction, check_legs, dimers_for_density
from ladderfib.sequences import CountTable, doped_table, undoped_sequence

PRECISION = 50  # decimal digits carried by mpmath results

CHARACTERISTIC = {
    2: (1, -1, -1),  # x^2 - x - 1, per rung
    3: (1, -4, 1),  # y^2 - 4y + 1 in y = rate per two rungs
    4: (1, -2, -3, 2),  # x^3 - 2x^2 - 3x + 2, per rung
}
BRACKETS = {2: (1, 2), 3: (3, 4), 4: (2, 3)}


def _step(legs: int) -> int:
    return 2 if legs == 3 else 1


def bracketed_root(coeffs, lo, hi, tol=None):
    """Root of a polynomial on ``[lo, hi]`` by bisection, then Newton polish."""
    with mpmath.workdps(PRECISION + 10):
        f = lambda x: mpmath.polyval(coeffs, x)
        deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
        df = lambda x: mpmath.polyval(deriv, x)
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        flo, fhi = f(lo), f(hi)
        if flo * fhi > 0:
            raise ValueError("bracket does not straddle a sign change")
        for _ in range(60):
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        x = (lo + hi) / 2
        tol = tol or mpmath.mpf(10) ** (-PRECISION)
        for _ in range(50):
            dx = f(x) / df(x)
            x -= dx
            if abs(dx) < tol:
                break
        return +x


def closed_form_rate(legs: int) -> mpmath.mpf:
    """Dominant root of the characteristic polynomial.

    Per rung for two and four legs; per *two* rungs for three legs, whose counts live
    on even rungs only.
    """
    check_legs(legs)
    with mpmath.workdps(PRECISION):
        if legs == 2:
            return (1 + mpmath.sqrt(5)) / 2
        if legs == 3:
            return 2 + mpmath.sqrt(3)
        return bracketed_root(CHARACTERISTIC[4], *BRACKETS[4])


def ratio_to_real(ratio: Fraction) -> mpmath.mpf:
    with mpmath.workdps(PRECISION):
        return mpmath.mpf(ratio.numerator) / ratio.denominator


def empirical_ratio(legs: int, rungs: int) -> Fraction:
    check_legs(legs)
    step = _step(legs)
    if legs == 3 and rungs % 2:
        raise InsufficientN("three-leg counts exist at even N only")
    if rungs - step < 0:
        raise InsufficientN(f"need N >= {step} to form a ratio, got {rungs}")
    z = undoped_sequence(legs, rungs)
    return Fraction(z[rungs], z[rungs - step])


def empirical_rate(legs: int, rungs: int) -> mpmath.mpf:
    """``Z_N / Z_{N-step}`` with step 2 for three legs, else 1."""
    return ratio_to_real(empirical_ratio(legs, rungs))


@dataclass(frozen=True)
class RateResult:
    legs: int
    rungs: int
    closed_form: mpmath.mpf
    empirical: mpmath.mpf
    per_rung_normalized: mpmath.mpf

    @property
    def deviation(self):
        return abs(self.closed_form - self.empirical)


def rate_result(legs: int, rungs: int = 100) -> RateResult:
    cf = closed_form_rate(legs)
    emp = empirical_rate(legs, rungs)
    with mpmath.workdps(PRECISION):
        per_rung = mpmath.sqrt(cf) if legs == 3 else cf
    return RateResult(legs, rungs, cf, emp, per_rung)


# ---------------------------------------------------------------------------
# doped


def constant_density_ratio(legs: int, rungs: int, hole_density, table: CountTable | None = None) -> Fraction:
    """``Z_{N,k(N)} / Z_{N-1,k(N-1)}`` with both k's rounded from the same density.

    Integer rounding makes this jump by large factors between neighbouring densities;
    it is kept for inspection, :func:`doped_rate` is the smooth estimator.
    """
    table = table or doped_table(legs, rungs)
    k1 = dimers_for_density(legs, rungs, hole_density)
    k0 = dimers_for_density(legs, rungs - 1, hole_density)
    den = table(rungs - 1, k0)
    if den == 0:
        raise InsufficientN(f"Z_{{{rungs - 1},{k0}}} vanishes")
    return Fraction(table(rungs, k1), den)


class _FixedDensity:
    """Per-rung free energy of the doped ensemble, taken as a two-rung difference.

    With ``F_M(t) = ln Σ_k Z_{M,k} e^{kt}`` the bulk per-rung quantities are
    ``f(t) = (F_N - F_{N-2}) / 2`` and ``ρ(t) = f'(t)`` (dimers per rung); the fixed-density
    growth factor is ``exp(f(t) - ρ t)`` at the t solving ``ρ(t) = (1 - n_h) l / 2``.
    """

    def __init__(self, legs: int, rungs: int, table: CountTable):
        if rungs < 3:
            raise InsufficientN("the fixed-density rate needs N >= 3")
        self.legs = legs
        self.rungs = rungs
        top_k, bottom_k = legs * rungs // 2, legs * (rungs - 2) // 2
        self.packed = Fraction(table(rungs, top_k), table(rungs - 2, bottom_k))
        self.top = self._logs(table, rungs)
        self.bottom = self._logs(table, rungs - 2)
        self.ktop = np.arange(len(self.top), dtype=float)
        self.kbot = np.arange(len(self.bottom), dtype=float)

    @staticmethod
    def _logs(table, n):
        row = [table(n, k) for k in range(table.legs * n // 2 + 1)]
        return np.array([math.log(v) if v > 0 else -np.inf for v in row])

    @staticmethod
    def _moments(logs, ks, t):
        w = logs + ks * t
        top = w.max()
        e = np.exp(w - top)
        s = e.sum()
        return top + math.log(s), float(e @ ks) / s

    def free_energy(self, t):
        a, ma = self._moments(self.top, self.ktop, t)
        b, mb = self._moments(self.bottom, self.kbot, t)
        return (a - b) / 2, (ma - mb) / 2

    def log_rate(self, per_rung_dimers: float) -> float:
        def g(t):
            return self.free_energy(t)[1] - per_rung_dimers

        lo, hi = -8.0, 8.0
        while g(lo) > 0:
            lo *= 2
            if lo < -1e4:
                raise LadderError("density too close to 1 for the fixed-density solver")
        while g(hi) < 0:
            hi *= 2
            if hi > 1e4:
                raise LadderError("density too close to 0 for the fixed-density solver")
        t = brentq(g, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
        f, _ = self.free_energy(t)
        return f - per_rung_dimers * t

    def full_packing(self) -> float:
        # t -> +inf limit, taken exactly on the integers
        return float(mpmath.log(ratio_to_real(self.packed)) / 2)


def doped_rate(legs: int, rungs: int, hole_density, table: CountTable | None = None) -> float:
    """Growth factor per rung of Z_{N,k} at fixed hole density ``n_h``.

    At ``n_h = 0`` this is ``sqrt(Z_{N,kmax(N)} / Z_{N-2,kmax(N-2)})`` exactly (the
    golden ratio for two legs); at ``n_h = 1`` it is 1.
    """
    return _rates(legs, rungs, [hole_density], table)[0]


def _rates(legs, rungs, grid, table=None):
    check_legs(legs)
    table = table or doped_table(legs, rungs)
    solver = _FixedDensity(legs, rungs, table)
    out = []
    for n_h in grid:
        x = as_fraction(n_h)
        if not 0 <= x <= 1:
            raise LadderError(f"hole density must lie in [0, 1], got {n_h}")
        if x == 0:
            out.append(math.exp(solver.full_packing()))
        elif x == 1:
            out.append(1.0)
        else:
            out.append(math.exp(solver.log_rate(float((1 - x) * legs / 2))))
    return out


@dataclass(frozen=True)
class DivergenceProfile:
    legs: int
    rungs: int
    points: tuple[tuple[float, float], ...]
    peak: tuple[float, float] = field(init=False)

    def __post_init__(self):
        if not self.points:
            raise EmptyGrid("empty density grid")
        best = max(self.points, key=lambda p: p[1])
        object.__setattr__(self, "peak", best)

    @property
    def densities(self):
        return [p[0] for p in self.points]

    @property
    def alphas(self):
        return [p[1] for p in self.points]

    def local_maxima(self) -> list[int]:
        a = self.alphas
        idx = []
        for i in range(len(a)):
            left = a[i - 1] if i > 0 else -math.inf
            right = a[i + 1] if i + 1 < len(a) else -math.inf
            if a[i] > left and a[i] >= right:
                idx.append(i)
        return idx

    def is_unimodal(self) -> bool:
        """Strictly up to the peak, strictly down after it."""
        a = self.alphas
        i = a.index(self.peak[1])
        return all(x < y for x, y in zip(a[:i], a[1 : i + 1])) and all(
            x > y for x, y in zip(a[i:], a[i + 1 :])
        )


def density_grid(start=0.0, stop=1.0, step=0.005) -> list[float]:
    if step <= 0:
        raise EmptyGrid("grid step must be positive")
    n = int(round((stop - start) / step))
    grid = [round(start + i * step, 12) for i in range(n + 1)]
    return [g for g in grid if start - 1e-12 <= g <= stop + 1e-12]


def doped_rate_profile(legs: int, rungs: int, grid=None, table: CountTable | None = None) -> DivergenceProfile:
    if rungs < 10:
        raise InsufficientN("doped rate profiles need N >= 10")
    grid = density_grid() if grid is None else sorted(grid)
    if not grid:
        raise EmptyGrid("empty density grid")
    alphas = _rates(legs, rungs, grid, table)
    return DivergenceProfile(legs, rungs, tuple(zip((float(g) for g in grid), alphas)))

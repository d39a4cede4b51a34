"""Generalized Fibonacci sequences Z_N (undoped) and Z_{N,k} (doped) for 2-, 3- and 4-leg ladders.

All counts are exact Python integers. Indices outside the feasible range count 0,
and the empty ladder counts 1 (``Z_0 = Z_{0,0} = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from ladderfib.core import LadderSpec, check_legs, validate_spec


class RecursionForm(str, Enum):
    SUMMED = "summed"
    COMPACT = "compact"


# ---------------------------------------------------------------------------
# undoped


def _undoped_summed(legs: int, n_max: int) -> list[int]:
    z = [0] * (n_max + 1)
    z[0] = 1

    def at(m):
        return z[m] if m >= 0 else 0

    for n in range(1, n_max + 1):
        if legs == 2:
            z[n] = at(n - 1) + at(n - 2)
        elif legs == 3:
            if n % 2:
                continue
            z[n] = 3 * at(n - 2) + 2 * sum(at(n - 2 * i - 2) for i in range(1, n // 2))
        else:
            z[n] = at(n - 1) + 4 * at(n - 2) + 2 * sum(at(n - i - 2) for i in range(1, n - 1))
    return z


def _undoped_compact(legs: int, n_max: int) -> list[int]:
    z = [0] * (n_max + 1)
    base = {2: (1, 1), 3: (1, 0, 3), 4: (1, 1, 5)}[legs]
    for n, v in enumerate(base[: n_max + 1]):
        z[n] = v
    for n in range(len(base), n_max + 1):
        if legs == 2:
            z[n] = z[n - 1] + z[n - 2]
        elif legs == 3:
            # only even rungs are populated; Z_{N-4} is absent for N = 2
            z[n] = 0 if n % 2 else 4 * z[n - 2] - z[n - 4]
        else:
            z[n] = 2 * z[n - 1] + 3 * z[n - 2] - 2 * z[n - 3]
    return z


@lru_cache(maxsize=None)
def _undoped_cached(legs: int, n_max: int, form: RecursionForm) -> tuple[int, ...]:
    if form is RecursionForm.SUMMED:
        return tuple(_undoped_summed(legs, n_max))
    return tuple(_undoped_compact(legs, n_max))


def undoped_sequence(legs: int, n_max: int, form: RecursionForm | str = RecursionForm.COMPACT) -> tuple[int, ...]:
    """``(Z_0, ..., Z_{n_max})``; odd entries are 0 for three legs."""
    check_legs(legs)
    form = RecursionForm(form)
    return _undoped_cached(legs, max(n_max, 0), form)


def undoped_count(legs: int, rungs: int, form: RecursionForm | str = RecursionForm.SUMMED) -> int:
    validate_spec(LadderSpec(legs, rungs))
    return undoped_sequence(legs, rungs, form)[rungs]


def undoped_value(legs: int, rungs: int) -> int:
    """Like :func:`undoped_count` but lenient: negative or odd three-leg indices give 0."""
    if rungs < 0:
        return 0
    return undoped_sequence(legs, rungs)[rungs]


# ---------------------------------------------------------------------------
# doped


def _doped_literal(legs: int, n_max: int) -> list[list[int]]:
    """Direct evaluation of the summed recursions, every Σ term expanded in full."""
    width = legs * n_max // 2 + 1
    z = [[0] * width for _ in range(n_max + 1)]
    z[0][0] = 1

    def at(n, k):
        if n < 0 or k < 0 or k >= width:
            return 0
        return z[n][k]

    for n in range(1, n_max + 1):
        for k in range(width):
            if legs == 2:
                v = at(n - 1, k - 1) + at(n - 2, k - 2) + at(n - 1, k)
                v += 2 * sum(at(n - i - 1, k - i) for i in range(1, min(k, n - 1) + 1))
            elif legs == 3:
                v = 2 * at(n - 1, k - 1) + at(n - 1, k)
                v += 3 * sum(
                    at(n - 2 * i, k - 3 * i + j)
                    for i in range(1, n // 2 + 1)
                    for j in range(3 * i)
                )
            else:
                v = at(n - 1, k - 2) + 3 * at(n - 1, k - 1) + at(n - 1, k)
                v += 2 * sum(
                    at(n - 2 * i, k - 4 * i + j)
                    for i in range(1, n // 2 + 1)
                    for j in range(4 * i)
                )
            z[n][k] = v
    return z


def _doped_accelerated(legs: int, n_max: int) -> list[list[int]]:
    """Same recursions with the Σ / ΣΣ terms carried as running sums.

    Two legs: ``D[n][k] = Z[n][k] + D[n-1][k-1]`` holds the diagonal sum needed by the χ term.
    Three/four legs (c = legs): with row prefix sums ``P[m][x] = Σ_{k'<=x} Z[m][k']``,
    ``ΣΣ = A[n][k] - B[n][k]`` where
    ``A[n][k] = P[n-2][k-1] + A[n-2][k]`` and ``B[n][k] = P[n-2][k-c-1] + B[n-2][k-c]``.
    """
    width = legs * n_max // 2 + 1
    z = [[0] * width for _ in range(n_max + 1)]
    z[0][0] = 1

    def at(n, k):
        if n < 0 or k < 0 or k >= width:
            return 0
        return z[n][k]

    if legs == 2:
        diag = [[0] * width for _ in range(n_max + 1)]

        def d(n, k):
            if n < 0 or k < 0:
                return 0
            return diag[n][k]

        diag[0][0] = 1
        for n in range(1, n_max + 1):
            row, drow = z[n], diag[n]
            for k in range(width):
                v = at(n - 1, k - 1) + at(n - 2, k - 2) + at(n - 1, k) + 2 * d(n - 2, k - 1)
                row[k] = v
                drow[k] = v + d(n - 1, k - 1)
        return z

    c = legs
    prefix = [[0] * width for _ in range(n_max + 1)]
    a_sum = [[0] * width for _ in range(n_max + 1)]
    b_sum = [[0] * width for _ in range(n_max + 1)]

    def p(n, x):
        if n < 0 or x < 0:
            return 0
        return prefix[n][min(x, width - 1)]

    def a(n, k):
        return a_sum[n][k] if n >= 0 else 0

    def b(n, k):
        if n < 0 or k < 0:
            return 0
        return b_sum[n][k]

    def fill_prefix(n):
        run = 0
        for k in range(width):
            run += z[n][k]
            prefix[n][k] = run

    fill_prefix(0)
    single = (2, 1, 0) if legs == 3 else (3, 1, 1)  # weights of Z_{n-1,k-1}, Z_{n-1,k}, Z_{n-1,k-2}
    block = 3 if legs == 3 else 2
    for n in range(1, n_max + 1):
        row = z[n]
        for k in range(width):
            if n >= 2:
                a_sum[n][k] = p(n - 2, k - 1) + a(n - 2, k)
                b_sum[n][k] = p(n - 2, k - c - 1) + b(n - 2, k - c)
            v = single[0] * at(n - 1, k - 1) + single[1] * at(n - 1, k) + single[2] * at(n - 1, k - 2)
            v += block * (a_sum[n][k] - b_sum[n][k])
            row[k] = v
        fill_prefix(n)
    return z


@dataclass(frozen=True)
class CountTable:
    """Frozen table of counts for one ladder family.

    ``entries`` is indexed ``[N]`` for undoped tables and ``[N][k]`` for doped ones.
    Lookups outside the stored range return 0.
    """

    spec: LadderSpec
    form: RecursionForm
    entries: tuple

    @property
    def n_max(self) -> int:
        return len(self.entries) - 1

    @property
    def legs(self) -> int:
        return self.spec.legs

    def __call__(self, n: int, k: int | None = None) -> int:
        if n < 0 or n > self.n_max:
            return 0
        if self.spec.doped:
            if k is None:
                raise TypeError("doped tables are indexed by (N, k)")
            row = self.entries[n]
            return row[k] if 0 <= k < len(row) else 0
        if k is not None:
            raise TypeError("undoped tables are indexed by N only")
        return self.entries[n]

    def row(self, n: int) -> tuple[int, ...]:
        return self.entries[n]

    def items(self):
        if self.spec.doped:
            for n, row in enumerate(self.entries):
                for k in range(min(len(row), self.spec.legs * n // 2 + 1)):
                    yield (n, k), row[k]
        else:
            for n, v in enumerate(self.entries):
                if self.spec.legs == 3 and n % 2:
                    continue
                yield n, v


def build_table(
    spec: LadderSpec, n_max: int, form: RecursionForm | str = RecursionForm.SUMMED, accelerate: bool = True
) -> CountTable:
    """Fill all N <= n_max (and all feasible k when ``spec.doped``).

    Doped tables always use the summed recursions; ``accelerate=False`` evaluates every
    sum term by term instead of through running sums, which is O(N^3 k) and meant for checks.
    """
    validate_spec(LadderSpec(spec.legs, 0, spec.doped))
    form = RecursionForm(form)
    if spec.doped:
        if form is RecursionForm.COMPACT:
            if spec.legs != 2:
                raise ValueError("a compact doped recursion exists for two legs only")
            rows = _doped_compact_rows(n_max)
        elif accelerate:
            rows = _doped_accelerated(spec.legs, n_max)
        else:
            rows = _doped_literal(spec.legs, n_max)
        entries = tuple(tuple(r) for r in rows)
    else:
        entries = undoped_sequence(spec.legs, n_max, form)
    return CountTable(LadderSpec(spec.legs, n_max, spec.doped), form, entries)


@lru_cache(maxsize=None)
def _doped_table_cached(legs: int, n_max: int) -> CountTable:
    return build_table(LadderSpec(legs, n_max, doped=True), n_max)


def doped_table(legs: int, n_max: int) -> CountTable:
    """Shared accelerated table covering at least ``n_max`` rungs."""
    check_legs(legs)
    # round up so nearby requests reuse one table
    size = 128 if n_max <= 128 else 1 << (n_max - 1).bit_length()
    return _doped_table_cached(legs, size)


def doped_count(legs: int, rungs: int, dimers: int) -> int:
    validate_spec(LadderSpec(legs, rungs, doped=True))
    if dimers < 0 or 2 * dimers > legs * rungs:
        return 0
    return doped_table(legs, rungs)(rungs, dimers)


def _doped_compact_rows(n_max: int) -> list[list[int]]:
    width = n_max + 1
    z = [[0] * width for _ in range(n_max + 1)]

    def at(n, k):
        if n < 0 or k < 0 or k >= width:
            return 0
        return z[n][k]

    z[0][0] = 1
    if n_max >= 1:
        z[1][0] = z[1][1] = 1
    for n in range(2, n_max + 1):
        for k in range(width):
            z[n][k] = 2 * at(n - 1, k - 1) + at(n - 1, k) + at(n - 2, k - 1) - at(n - 3, k - 3)
    return z


def doped_count_compact(rungs: int, dimers: int) -> int:
    """Two-leg doped count from the rearranged four-term recursion."""
    validate_spec(LadderSpec(2, rungs, doped=True))
    if dimers < 0 or dimers > rungs:
        return 0
    return _doped_compact_rows(rungs)[rungs][dimers]

"""Cross-checks of every recursion against exhaustive enumeration and against its other form.

Each check yields one row ``case, expected, actual, status`` with status ``ok``,
``known-deviation`` (a documented gap of the recursion ansatz) or ``mismatch``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ladderfib import oracle
from ladderfib.core import LadderSpec
from ladderfib.sequences import RecursionForm, build_table, doped_count, doped_count_compact, undoped_sequence
from ladderfib.vbe import admissible_cuts, vbe_doped, vbe_undoped

OK = "ok"
KNOWN = "known-deviation"
MISMATCH = "mismatch"

FIBONACCI_TABLE = (1, 2, 3, 5, 8, 13, 21, 34, 55)

# default oracle sizes and hard ceilings (rungs) per leg count
UNDOPED_DEFAULT = {2: 12, 3: 8, 4: 6}
DOPED_DEFAULT = {2: 6, 3: 3, 4: 3}
DOPED_CEILING = {2: 8, 3: 4, 4: 3}
VBE_DOPED_DEFAULT = 6


@dataclass(frozen=True)
class Check:
    case: str
    expected: object
    actual: object
    status: str


def _status(equal: bool, deviation_allowed: bool) -> str:
    if equal:
        return OK
    return KNOWN if deviation_allowed else MISMATCH


def run_verification(
    max_rungs: int | None = None,
    legs: int | None = None,
    doped_counts: Callable[[int, int, int], int] = doped_count,
) -> list[Check]:
    """Run the suite; ``doped_counts`` can be swapped to exercise the failure path."""
    leg_set = (legs,) if legs else (2, 3, 4)
    checks: list[Check] = []

    def cap(default, ceiling=None):
        n = default if max_rungs is None else max_rungs
        if ceiling is not None:
            n = min(n, ceiling)
        return n

    if 2 in leg_set:
        z = undoped_sequence(2, 9)
        for n, want in enumerate(FIBONACCI_TABLE, start=1):
            checks.append(Check(f"fibonacci-Z{n}", want, z[n], _status(z[n] == want, False)))

    for l in leg_set:
        summed = undoped_sequence(l, 200, RecursionForm.SUMMED)
        compact = undoped_sequence(l, 200, RecursionForm.COMPACT)
        ns = [n for n in range(201) if l != 3 or n % 2 == 0]
        agree = sum(summed[n] == compact[n] for n in ns)
        checks.append(Check(f"form-equivalence-{l}leg-N200", len(ns), agree, _status(agree == len(ns), False)))

        n_lit = 16 if l == 4 else 20
        fast = build_table(LadderSpec(l, n_lit, True), n_lit)
        slow = build_table(LadderSpec(l, n_lit, True), n_lit, accelerate=False)
        cells = [(n, k) for n in range(n_lit + 1) for k in range(l * n // 2 + 1)]
        agree = sum(fast(n, k) == slow(n, k) for n, k in cells)
        checks.append(
            Check(f"doped-accelerated-{l}leg-N{n_lit}", len(cells), agree, _status(agree == len(cells), False))
        )

    if 2 in leg_set:
        cells = [(n, k) for n in range(61) for k in range(n + 1)]
        agree = sum(doped_count_compact(n, k) == doped_counts(2, n, k) for n, k in cells)
        checks.append(Check("doped-compact-2leg-N60", len(cells), agree, _status(agree == len(cells), False)))
        for n in range(0, 51, 10):
            want, got = undoped_sequence(2, n)[n], doped_counts(2, n, n)
            checks.append(Check(f"zero-hole-2x{n}", want, got, _status(want == got, False)))

    # full packing of the doped recursion is not the undoped sequence beyond two legs
    for l, n in ((3, 4), (4, 2)):
        if l in leg_set:
            want, got = undoped_sequence(l, n)[n], doped_counts(l, n, l * n // 2)
            checks.append(Check(f"zero-hole-{l}x{n}", want, got, _status(want == got, True)))

    for l in leg_set:
        limit = cap(UNDOPED_DEFAULT[l], oracle.MAX_SITES // l)
        for n in range(1, limit + 1):
            if l * n % 2:
                continue
            exhaustive = oracle.enumerate_dimer_covers(l, n)
            z = undoped_sequence(l, n)[n]
            # the 4-leg irreducible blocks of even width >= 4 come in three shapes, the recursion keeps two
            allowed = l == 4 and n >= 4 and z < len(exhaustive)
            checks.append(Check(f"dimer-covers-{l}x{n}", len(exhaustive), z, _status(len(exhaustive) == z, allowed)))

            expansion = oracle.expand_recursion(l, n)
            ex_set, xp_set = set(exhaustive), set(expansion)
            subset = xp_set <= ex_set and len(xp_set) == len(expansion) == z
            allowed = l == 4 and subset
            checks.append(
                Check(f"expansion-{l}x{n}", len(ex_set), len(xp_set & ex_set), _status(subset and xp_set == ex_set, allowed))
            )

        limit = cap(DOPED_DEFAULT[l], DOPED_CEILING[l])
        for n in range(1, limit + 1):
            for k in range(l * n // 2 + 1):
                want = oracle.count_monomer_dimer(l, n, k)
                got = doped_counts(l, n, k)
                checks.append(Check(f"monomer-dimer-{l}x{n}-k{k}", want, got, _status(want == got, l > 2)))
                top_down = oracle.expansion_count_doped(l, n, k)
                checks.append(Check(f"ket-expansion-{l}x{n}-k{k}", top_down, got, _status(top_down == got, False)))
                if l == 2:
                    geometric = set(oracle.expand_recursion(2, n, k))
                    exhaustive = set(oracle.enumerate_monomer_dimer(2, n, k))
                    checks.append(
                        Check(
                            f"expansion-doped-2x{n}-k{k}",
                            len(exhaustive),
                            len(geometric & exhaustive),
                            _status(geometric == exhaustive, False),
                        )
                    )

    if 2 in leg_set:
        limit = cap(10, 12)
        for n in range(2, limit + 1):
            covers = oracle.enumerate_dimer_covers(2, n)
            for cut in range(1, n):
                _, mean = oracle.crossing_stats(covers, cut)
                s = vbe_undoped(2, n, cut)
                checks.append(Check(f"vbe-2x{n}-L{cut}", str(mean), str(s), _status(mean == s, False)))

    # the three- and four-leg entropy expressions undercount crossings; reported, not fixed
    for l, default in ((3, 8), (4, 5)):
        if l not in leg_set:
            continue
        for n in range(2, cap(default, UNDOPED_DEFAULT[l]) + 1):
            if l == 3 and n % 2:
                continue
            covers = oracle.enumerate_dimer_covers(l, n)
            for cut in admissible_cuts(l, n):
                _, mean = oracle.crossing_stats(covers, cut)
                s = vbe_undoped(l, n, cut)
                checks.append(Check(f"vbe-{l}x{n}-L{cut}", str(mean), str(s), _status(mean == s, True)))

    if 2 in leg_set:
        # the printed doped entropy expressions are not exact averages either
        limit = cap(VBE_DOPED_DEFAULT, DOPED_CEILING[2])
        for n in range(2, limit + 1):
            for k in range(n + 1):
                covers = oracle.enumerate_monomer_dimer(2, n, k)
                for cut in range(1, n):
                    _, mean = oracle.crossing_stats(covers, cut)
                    s = vbe_doped(2, n, k, cut)
                    checks.append(Check(f"vbe-doped-2x{n}-k{k}-L{cut}", str(mean), str(s), _status(mean == s, True)))
    return checks


def exit_status(checks) -> int:
    return 0 if all(c.status in (OK, KNOWN) for c in checks) else 2


def tampered(legs: int, rungs: int, dimers: int) -> int:
    """Doped counts with one deliberately corrupted entry, for the negative control."""
    value = doped_count(legs, rungs, dimers)
    return value + 1 if (legs, rungs, dimers) == (2, 3, 2) else value


def summary(checks) -> dict[str, int]:
    out = {OK: 0, KNOWN: 0, MISMATCH: 0}
    for c in checks:
        out[c.status] += 1
    return out

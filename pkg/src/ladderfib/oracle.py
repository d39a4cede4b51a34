"""Brute-force ground truth on small ladders.

* exhaustive dimer and monomer-dimer enumeration by backtracking,
* literal expansion of the ket recursions into explicit coverings, block by block,
* a top-down (unmemoized) evaluation of the doped count recursions,
* crossing statistics across a cut.

Backtracking always extends the lowest-index free site, so every covering is produced
exactly once and in an order fixed by the site linearization.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import re

from ladderfib.core import (
    BadCut,
    GeometryInconsistent,
    LadderError,
    LadderSpec,
    TooLarge,
    are_neighbours,
    check_legs,
    site_from_index,
    site_index,
)
from ladderfib.sequences import doped_count, undoped_value

Site = tuple[int, int]  # (leg, rung), 1-based
Dimer = tuple[Site, Site]

MAX_SITES = 40
MAX_NODES = 10**7
MAX_EXPANSION = 10**6


def _canon_dimer(a: Site, b: Site, legs: int) -> Dimer:
    return (a, b) if site_index(*a, legs) < site_index(*b, legs) else (b, a)


@dataclass(frozen=True)
class Covering:
    legs: int
    rungs: int
    dimers: frozenset
    holes: frozenset = frozenset()

    @property
    def spec(self) -> LadderSpec:
        return LadderSpec(self.legs, self.rungs, doped=bool(self.holes))

    @property
    def k(self) -> int:
        return len(self.dimers)

    def validate(self) -> "Covering":
        seen = set()
        for a, b in self.dimers:
            if not are_neighbours(a, b):
                raise GeometryInconsistent(f"{a}-{b} is not a nearest-neighbour pair")
            for s in (a, b):
                if s in seen:
                    raise GeometryInconsistent(f"site {s} covered twice")
                seen.add(s)
        for s in self.holes:
            if s in seen:
                raise GeometryInconsistent(f"hole {s} also covered by a dimer")
            seen.add(s)
        everything = {(l, r) for l in range(1, self.legs + 1) for r in range(1, self.rungs + 1)}
        if seen != everything:
            raise GeometryInconsistent(f"sites {sorted(everything ^ seen)} not partitioned")
        return self

    def crossings(self, cut: int) -> int:
        return sum(1 for (_, ra), (_, rb) in self.dimers if min(ra, rb) <= cut < max(ra, rb))

    def sort_key(self):
        legs = self.legs
        return (
            tuple(sorted((site_index(*a, legs), site_index(*b, legs)) for a, b in self.dimers)),
            tuple(sorted(site_index(*s, legs) for s in self.holes)),
        )

    def oriented(self) -> list[Dimer]:
        """Dimers directed from sublattice A (even leg + rung) to B; display only."""
        return sorted(
            ((a, b) if (a[0] + a[1]) % 2 == 0 else (b, a) for a, b in self.dimers),
            key=lambda d: site_index(*d[0], self.legs),
        )

    def to_line(self) -> str:
        legs = self.legs
        dimers = sorted(self.dimers, key=lambda d: (site_index(*d[0], legs), site_index(*d[1], legs)))
        holes = sorted(self.holes, key=lambda s: site_index(*s, legs))
        tokens = [f"({a[0]},{a[1]})-({b[0]},{b[1]})" for a, b in dimers]
        tokens += [f"({s[0]},{s[1]})*" for s in holes]
        return " ".join(tokens)


_TOKEN = re.compile(r"\((\d+),(\d+)\)(?:-\((\d+),(\d+)\)|(\*))")


def parse_covering(line: str, legs: int, rungs: int) -> Covering:
    dimers, holes = set(), set()
    for tok in line.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad covering token {tok!r}")
        a = (int(m[1]), int(m[2]))
        if m[5]:
            holes.add(a)
        else:
            dimers.add(_canon_dimer(a, (int(m[3]), int(m[4])), legs))
    return Covering(legs, rungs, frozenset(dimers), frozenset(holes))


def dump_coverings(coverings) -> str:
    return "".join(c.to_line() + "\n" for c in coverings)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _neighbours_forward(legs, rungs):
    """For each 0-based site, the higher-index neighbours (same rung first)."""
    out = []
    for i in range(legs * rungs):
        leg0, r0 = i % legs, i // legs
        nb = []
        if leg0 + 1 < legs:
            nb.append(i + 1)
        if r0 + 1 < rungs:
            nb.append(i + legs)
        out.append(nb)
    return out


def _to_covering(legs, rungs, pairs, hole_ids) -> Covering:
    dimers = frozenset((site_from_index(a + 1, legs), site_from_index(b + 1, legs)) for a, b in pairs)
    holes = frozenset(site_from_index(h + 1, legs) for h in hole_ids)
    return Covering(legs, rungs, dimers, holes)


def _guard(legs, rungs):
    check_legs(legs)
    if legs * rungs > MAX_SITES:
        raise TooLarge(f"{legs}x{rungs} exceeds the {MAX_SITES}-site oracle bound")


def enumerate_dimer_covers(legs: int, rungs: int) -> list[Covering]:
    _guard(legs, rungs)
    n = legs * rungs
    if n % 2:
        return []
    nbrs = _neighbours_forward(legs, rungs)
    out: list[Covering] = []
    pairs: list[tuple[int, int]] = []

    def rec(i, used):
        while i < n and used >> i & 1:
            i += 1
        if i == n:
            out.append(_to_covering(legs, rungs, pairs, ()))
            return
        for j in nbrs[i]:
            if not used >> j & 1:
                pairs.append((i, j))
                rec(i + 1, used | 1 << i | 1 << j)
                pairs.pop()

    rec(0, 0)
    return out


def _monomer_dimer_search(legs, rungs, dimers, emit, max_nodes=MAX_NODES):
    n = legs * rungs
    holes_allowed = n - 2 * dimers
    nbrs = _neighbours_forward(legs, rungs)
    pairs: list[tuple[int, int]] = []
    hole_ids: list[int] = []
    nodes = 0

    def rec(i, used, placed):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise TooLarge(f"monomer-dimer search on {legs}x{rungs} exceeded {max_nodes} nodes")
        while i < n and used >> i & 1:
            i += 1
        if i == n:
            emit(pairs, hole_ids)
            return
        if len(hole_ids) < holes_allowed:
            hole_ids.append(i)
            rec(i + 1, used | 1 << i, placed)
            hole_ids.pop()
        if placed < dimers:
            for j in nbrs[i]:
                if not used >> j & 1:
                    pairs.append((i, j))
                    rec(i + 1, used | 1 << i | 1 << j, placed + 1)
                    pairs.pop()

    rec(0, 0, 0)


def enumerate_monomer_dimer(legs: int, rungs: int, dimers: int, max_nodes: int = MAX_NODES) -> list[Covering]:
    """All placements of exactly ``dimers`` disjoint NN dimers; other sites are holes."""
    _guard(legs, rungs)
    if dimers < 0 or 2 * dimers > legs * rungs:
        return []
    out: list[Covering] = []
    _monomer_dimer_search(
        legs, rungs, dimers, lambda p, h: out.append(_to_covering(legs, rungs, p, h)), max_nodes
    )
    return out


def count_monomer_dimer(legs: int, rungs: int, dimers: int, max_nodes: int = MAX_NODES) -> int:
    _guard(legs, rungs)
    if dimers < 0 or 2 * dimers > legs * rungs:
        return 0
    total = 0

    def bump(p, h):
        nonlocal total
        total += 1

    _monomer_dimer_search(legs, rungs, dimers, bump, max_nodes)
    return total


# ---------------------------------------------------------------------------
# recursion building blocks


class BlockKind(str, Enum):
    RUNG1 = "1"
    BAR2 = "2bar"
    THREE_PRIME = "3'"
    THREE_DOUBLE_PRIME = "3''"
    ETA = "eta"
    BAR4 = "4bar"
    XI = "xi"
    RUNG_DIMER = "1,1"
    RUNG_HOLE = "1,0"
    CHI = "chi"


@dataclass(frozen=True)
class Block:
    """A resonant block spanning ``span`` rungs, with every geometric variant it stands for.

    Each variant is ``(dimers, holes)`` in block-relative rungs 1..span.
    """

    kind: BlockKind
    legs: int
    span: int
    variants: tuple
    index: int | None = None

    @property
    def multiplicity(self) -> int:
        return len(self.variants)

    def placed(self, offset: int):
        """Variants shifted so that the block starts after rung ``offset``."""
        for dimers, holes in self.variants:
            yield (
                tuple(((a[0], a[1] + offset), (b[0], b[1] + offset)) for a, b in dimers),
                tuple((s[0], s[1] + offset) for s in holes),
            )

    def fragment(self, variant: int = 0) -> Covering:
        dimers, holes = self.variants[variant]
        return Covering(self.legs, self.span, frozenset(dimers), frozenset(holes))

    def validate(self) -> "Block":
        for v in range(len(self.variants)):
            self.fragment(v).validate()
        return self


def _h(leg, r):
    return ((leg, r), (leg, r + 1))


def _v(leg, r):
    return ((leg, r), (leg + 1, r))


def _leg_run(leg, first, last):
    """Horizontal dimers on ``leg`` tiling rungs first..last (inclusive, even length)."""
    return [_h(leg, r) for r in range(first, last, 2)]


def _framed(pair_top, span):
    """Vertical dimers on legs (t, t+1) at both ends, horizontals on both legs in between."""
    t = pair_top
    return [_v(t, 1), _v(t, span)] + _leg_run(t, 2, span - 1) + _leg_run(t + 1, 2, span - 1)


def rung_block(legs: int) -> Block:
    dimers = tuple(_v(l, 1) for l in range(1, legs, 2))
    return Block(BlockKind.RUNG1, legs, 1, ((dimers, ()),))


def bar2() -> Block:
    return Block(BlockKind.BAR2, 2, 2, (((_h(1, 1), _h(2, 1)), ()),))


def three_prime() -> Block:
    return Block(BlockKind.THREE_PRIME, 3, 2, (((_h(1, 1), _h(2, 1), _h(3, 1)), ()),))


def three_double_prime() -> Block:
    return Block(
        BlockKind.THREE_DOUBLE_PRIME,
        3,
        2,
        (
            ((_v(1, 1), _v(1, 2), _h(3, 1)), ()),
            ((_v(2, 1), _v(2, 2), _h(1, 1)), ()),
        ),
    )


def eta(i: int) -> Block:
    """Irreducible 3 x (2i+2) block: one leg pair framed, the free leg tiled by horizontals."""
    span = 2 * i + 2
    a = _framed(1, span) + _leg_run(3, 1, span)
    b = _framed(2, span) + _leg_run(1, 1, span)
    return Block(BlockKind.ETA, 3, span, ((tuple(a), ()), (tuple(b), ())), index=i)


def bar4() -> Block:
    variants = (
        (_v(1, 1), _v(1, 2), _h(3, 1), _h(4, 1)),
        (_v(2, 1), _v(2, 2), _h(1, 1), _h(4, 1)),
        (_v(3, 1), _v(3, 2), _h(1, 1), _h(2, 1)),
        (_h(1, 1), _h(2, 1), _h(3, 1), _h(4, 1)),
    )
    return Block(BlockKind.BAR4, 4, 2, tuple((v, ()) for v in variants))


def xi(i: int) -> Block:
    """Irreducible 4 x (i+2) block built from the two outer leg pairs.

    Odd width: the pairs are staggered (vertical dimer at opposite ends). Even width:
    one outer pair is framed and the other tiled by horizontals. The third even-width
    block, framed on the middle pair (2, 3), is not part of this family.
    """
    span = i + 2
    if span % 2:
        a = [_v(1, 1)] + _leg_run(1, 2, span) + _leg_run(2, 2, span)
        a += _leg_run(3, 1, span - 1) + _leg_run(4, 1, span - 1) + [_v(3, span)]
        b = [_v(3, 1)] + _leg_run(3, 2, span) + _leg_run(4, 2, span)
        b += _leg_run(1, 1, span - 1) + _leg_run(2, 1, span - 1) + [_v(1, span)]
    else:
        a = _framed(1, span) + _leg_run(3, 1, span) + _leg_run(4, 1, span)
        b = _framed(3, span) + _leg_run(1, 1, span) + _leg_run(2, 1, span)
    return Block(BlockKind.XI, 4, span, ((tuple(a), ()), (tuple(b), ())), index=i)


def rung_dimer() -> Block:
    return Block(BlockKind.RUNG_DIMER, 2, 1, (((_v(1, 1),), ()),))


def rung_hole() -> Block:
    return Block(BlockKind.RUNG_HOLE, 2, 1, (((), ((1, 1), (2, 1))),))


def chi(i: int) -> Block:
    """2 x (i+1) block with i staggered horizontal dimers and one hole at each end."""
    span = i + 1

    def variant(first, second):
        dimers = [_h(first, r) for r in range(1, span, 2)] + [_h(second, r) for r in range(2, span, 2)]
        holes = [(second, 1)]
        holes.append((first, span) if span % 2 else (second, span))
        return tuple(dimers), tuple(holes)

    return Block(BlockKind.CHI, 2, span, (variant(1, 2), variant(2, 1)), index=i)


def blocks_ending_at(legs: int, rungs: int) -> list[Block]:
    """Blocks that may close an undoped ``rungs``-rung ladder, as in the ket recursion."""
    if legs == 2:
        return [b for b in (rung_block(2), bar2()) if b.span <= rungs]
    if legs == 3:
        if rungs < 2:
            return []
        return [three_prime(), three_double_prime()] + [eta(i) for i in range(1, rungs // 2)]
    out = [rung_block(4)]
    if rungs >= 2:
        out.append(bar4())
    out += [xi(i) for i in range(1, rungs - 1)]
    return out


# ---------------------------------------------------------------------------
# expansion


def _assemble(legs, rungs, prefix, block: Block, offset):
    for dimers, holes in block.placed(offset):
        for pd, ph in prefix:
            yield pd + dimers, ph + holes


def expand_recursion(legs: int, rungs: int, dimers: int | None = None, validate: bool = True) -> list[Covering]:
    """Coverings produced by literally expanding the ket recursion into blocks.

    Undoped for 2, 3 and 4 legs; with ``dimers`` given, the doped two-leg recursion.
    """
    check_legs(legs)
    if dimers is None:
        expected = undoped_value(legs, rungs)
    else:
        if legs != 2:
            raise LadderError("doped block geometry is only defined for two legs")
        expected = doped_count(2, rungs, dimers)
    if expected > MAX_EXPANSION:
        raise TooLarge(f"expansion would produce {expected} coverings")

    if dimers is None:
        memo = {0: [((), ())]}

        def gen(m):
            if m < 0:
                return []
            if m not in memo:
                acc = []
                for block in blocks_ending_at(legs, m):
                    acc.extend(_assemble(legs, m, gen(m - block.span), block, m - block.span))
                memo[m] = acc
            return memo[m]

        raw = gen(rungs)
    else:
        dmemo = {(0, 0): [((), ())]}

        def dgen(m, k):
            if m < 0 or k < 0 or k > m:
                return []
            key = (m, k)
            if key not in dmemo:
                acc = []
                terms = [(rung_dimer(), 1), (bar2(), 2), (rung_hole(), 0)]
                terms += [(chi(i), i) for i in range(1, min(k, m - 1) + 1)]
                for block, used in terms:
                    if block.span <= m:
                        acc.extend(_assemble(2, m, dgen(m - block.span, k - used), block, m - block.span))
                dmemo[key] = acc
            return dmemo[key]

        raw = dgen(rungs, dimers)

    out = [Covering(legs, rungs, frozenset(d), frozenset(h)) for d, h in raw]
    if validate:
        for c in out:
            c.validate()
        if len(set(out)) != len(out):
            raise GeometryInconsistent("expansion produced duplicate coverings")
    return out


# weights of the single-rung terms and of the resonant double sum, per legs:
# (((rung offset, dimer offset, multiplicity), ...), block dimers per two rungs, block multiplicity)
_KET_TERMS = {
    3: (((1, 1, 2), (1, 0, 1)), 3, 3),
    4: (((1, 2, 1), (1, 1, 3), (1, 0, 1)), 4, 2),
}


def expansion_count_doped(legs: int, rungs: int, dimers: int, max_nodes: int = MAX_NODES) -> int:
    """Top-down evaluation of the ket-level doped recursion, multiplying block counts.

    No memoization: each ket is expanded afresh, so this is independent of the table DP.
    """
    check_legs(legs)
    nodes = 0

    def z(n, k):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise TooLarge(f"top-down expansion exceeded {max_nodes} nodes")
        if n < 0 or k < 0 or 2 * k > legs * n:
            return 0
        if n == 0:
            return 1
        if legs == 2:
            # |N-1,k-1>|1,1> + |N-2,k-2>|2bar> + |N-1,k>|1,0> + Σ_i |N-i-1,k-i>|chi_i>
            total = z(n - 1, k - 1) + z(n - 2, k - 2) + z(n - 1, k)
            for i in range(1, k + 1):
                total += 2 * z(n - i - 1, k - i)
            return total
        singles, per, mult = _KET_TERMS[legs]
        total = sum(m * z(n - dn, k - dk) for dn, dk, m in singles)
        for i in range(1, n // 2 + 1):
            for j in range(per * i):
                total += mult * z(n - 2 * i, k - per * i + j)
        return total

    return z(rungs, dimers)


def crossing_stats(coverings, cut: int) -> tuple[int, Fraction]:
    coverings = list(coverings)
    if not coverings:
        raise LadderError("no coverings to average over")
    rungs = coverings[0].rungs
    if not 1 <= cut <= rungs - 1:
        raise BadCut(f"cut must lie in 1..{rungs - 1}, got {cut}")
    total = sum(c.crossings(cut) for c in coverings)
    return total, Fraction(total, len(coverings))

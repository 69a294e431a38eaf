"""Brute-force references and random minorant samplers.

Nothing here goes through the layered sweeps of :mod:`graphenv.envelopes`:
monotone envelopes scan every super/subgraph directly, and the cover
envelopes branch over explicit covers (a small exact set-cover search).
Agreement between the two routes is what the test-suite relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .envelopes import is_monotone_increasing, is_subadditive
from .errors import OracleCapExceeded
from .lattice import Lattice
from .weights import WeightTable, _seed_words

DEFAULT_ORACLE_CAP = 20


def monotone_minorant_bruteforce(w: WeightTable) -> WeightTable:
    lat = w.lattice
    return WeightTable(lat, [min(w[j] for j in lat.supergraphs_of(h)) for h in range(len(lat))])


def monotone_majorant_bruteforce(w: WeightTable) -> WeightTable:
    lat = w.lattice
    return WeightTable(lat, [max(w[j] for j in lat.subgraphs_of(h)) for h in range(len(lat))])


def _nonempty_parts(lat: Lattice, h: int, cap: int) -> list[int]:
    parts = [j for j in lat.subgraphs_of(h) if j != 0]
    if len(parts) > cap:
        raise OracleCapExceeded(h, len(parts), cap)
    return parts


def _cheapest_cover(lat: Lattice, w: WeightTable, h: int, parts: list[int]) -> Fraction:
    """Branch and bound over the same recursion as ``Lattice.covers_of``.

    Branch on the lowest uncovered element; candidates are the parts that
    contain it.  Nonnegative weights make pruning on the partial sum exact.
    """
    target = lat.elements(h)
    masks = {p: lat.elements(p) for p in parts}
    order = sorted(parts, key=lambda p: w[p])
    best = w[h]

    def rec(covered: int, cost: Fraction):
        nonlocal best
        if cost >= best:
            return
        if covered == target:
            best = cost
            return
        todo = target & ~covered
        low = todo & -todo
        for p in order:
            if masks[p] & low:
                rec(covered | masks[p], cost + w[p])

    rec(0, Fraction(0))
    return best


def subadditive_minorant_bruteforce(w: WeightTable, cap: int = DEFAULT_ORACLE_CAP) -> WeightTable:
    """Minimum part-sum over explicit covers, subgraph by subgraph."""
    lat = w.lattice
    out = [w[0]]
    for h in range(1, len(lat)):
        out.append(_cheapest_cover(lat, w, h, _nonempty_parts(lat, h, cap)))
    return WeightTable(lat, out)


def superadditive_majorant_bruteforce(w: WeightTable, cap: int = DEFAULT_ORACLE_CAP) -> WeightTable:
    """Maximum part-sum over explicit element-disjoint partitions."""
    lat = w.lattice
    out = [w[0]]
    for h in range(1, len(lat)):
        _nonempty_parts(lat, h, cap)
        out.append(max(sum((w[p] for p in c), Fraction(0)) for c in lat.partitions_of(h)))
    return WeightTable(lat, out)


@dataclass(frozen=True)
class SampleSet:
    seed: int
    prop: str
    tables: tuple[WeightTable, ...]

    def __len__(self) -> int:
        return len(self.tables)

    def __iter__(self):
        return iter(self.tables)


class SamplerError(AssertionError):
    """A sampler produced a table that does not have its declared property."""


def draw_below(w: WeightTable, seed: int, sample: int) -> WeightTable:
    """Random table ``u <= w``: entry p/q becomes k/q with k uniform in [0, p].

    Randomness is keyed by (seed, sample), then consumed in index order, so a
    given sample never depends on which other samples were drawn.
    """
    rng = np.random.default_rng(np.random.SeedSequence(_seed_words(seed, sample)))
    draws = [int(rng.integers(0, v.numerator, endpoint=True)) for v in w]
    return WeightTable(w.lattice, [Fraction(k, v.denominator) for k, v in zip(draws, w)])


def sample_monotone_minorants(w: WeightTable, seed: int, count: int) -> SampleSet:
    if count < 1:
        raise ValueError("count must be >= 1")
    tables = []
    for i in range(count):
        g = monotone_minorant_bruteforce(draw_below(w, seed, i))
        if not (g <= w and is_monotone_increasing(g)):
            raise SamplerError(f"sample {i} is not a monotone minorant")
        tables.append(g)
    return SampleSet(seed, "monotone-below-w", tuple(tables))


def sample_subadditive_minorants(
    w: WeightTable, seed: int, count: int, cap: int = DEFAULT_ORACLE_CAP
) -> SampleSet:
    if count < 1:
        raise ValueError("count must be >= 1")
    tables = []
    for i in range(count):
        s = subadditive_minorant_bruteforce(draw_below(w, seed, i), cap=cap)
        if not (s <= w and is_subadditive(s)):
            raise SamplerError(f"sample {i} is not a subadditive minorant")
        tables.append(s)
    return SampleSet(seed, "subadditive-below-w", tuple(tables))

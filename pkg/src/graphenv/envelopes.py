"""Monotone and additive envelopes of a weight table, and their checkers.

All four constructions sweep the lattice in canonical order (or its
reverse), which is a linear extension of containment:

* monotone minorant: smallest weight over supergraphs (reverse sweep over
  covering successors);
* monotone majorant: largest weight over subgraphs (forward sweep over
  covering predecessors);
* subadditive minorant: cheapest cover, via binary splits into two proper
  subgraphs whose union is the target;
* superadditive majorant: dearest partition into element-disjoint parts,
  via bipartitions of connected components.

The empty subgraph has no cover or partition and keeps its input value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import LatticeMismatch
from .lattice import Cover
from .weights import WeightTable


class EnvelopeKind(str, Enum):
    MONOTONE_MIN = "monotone_min"
    MONOTONE_MAJ = "monotone_maj"
    SUBADD_MIN = "subadd_min"
    SUPERADD_MAJ = "superadd_maj"

    @property
    def uses_covers(self) -> bool:
        return self in (EnvelopeKind.SUBADD_MIN, EnvelopeKind.SUPERADD_MAJ)


Witness = Union[int, Cover]


@dataclass(frozen=True)
class EnvelopeResult:
    """Output table plus one optimizer per index.

    Monotone kinds store the attaining supergraph/subgraph index; cover kinds
    store the attaining :class:`Cover` (empty for the empty subgraph).
    """

    kind: EnvelopeKind
    input: WeightTable
    output: WeightTable
    witness: tuple[Witness, ...]

    def witness_value(self, h: int) -> Fraction:
        """Re-evaluate the witness at ``h`` against the input table."""
        wit = self.witness[h]
        if isinstance(wit, Cover):
            if not wit.parts:
                return self.input[h]
            return sum((self.input[p] for p in wit.parts), Fraction(0))
        return self.input[wit]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a property check; truthy when the property holds."""

    holds: bool
    violation: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _covering_pairs(w: WeightTable):
    lat = w.lattice
    for i in range(len(lat)):
        for j in lat.successors(i):
            yield i, j


def is_monotone_increasing(w: WeightTable) -> Verdict:
    """Check ``w(H1) <= w(H2)`` whenever ``H1 ⊂ H2``.

    Checking covering pairs (one added element) suffices by transitivity;
    the reported violation is the lexicographically first covering pair.
    """
    for i, j in _covering_pairs(w):
        if w[i] > w[j]:
            return Verdict(False, (i, j))
    return Verdict(True)


def is_monotone_decreasing(w: WeightTable) -> Verdict:
    for i, j in _covering_pairs(w):
        if w[i] < w[j]:
            return Verdict(False, (i, j))
    return Verdict(True)


def is_subadditive(w: WeightTable) -> Verdict:
    """Check ``w(H1 ∪ H2) <= w(H1) + w(H2)`` over all unordered pairs, i <= j."""
    lat = w.lattice
    n = len(lat)
    for i in range(n):
        for j in range(i, n):
            if w[lat.union(i, j)] > w[i] + w[j]:
                return Verdict(False, (i, j))
    return Verdict(True)


def is_superadditive_disjoint(w: WeightTable) -> Verdict:
    """Check ``w(H1 ∪ H2) >= w(H1) + w(H2)`` for nonempty element-disjoint pairs."""
    lat = w.lattice
    n = len(lat)
    for i in range(1, n):
        for j in range(i + 1, n):
            if lat.elements(i) & lat.elements(j):
                continue
            if w[lat.union(i, j)] < w[i] + w[j]:
                return Verdict(False, (i, j))
    return Verdict(True)


def monotone_minorant(w: WeightTable) -> EnvelopeResult:
    """Largest monotone increasing table below ``w``: min over supergraphs."""
    lat = w.lattice
    n = len(lat)
    out: list[Fraction] = [Fraction(0)] * n
    wit: list[int] = [0] * n
    for h in range(n - 1, -1, -1):
        best, arg = w[h], h
        for s in lat.successors(h):
            if out[s] < best or (out[s] == best and wit[s] < arg):
                best, arg = out[s], wit[s]
        out[h], wit[h] = best, arg
    return EnvelopeResult(EnvelopeKind.MONOTONE_MIN, w, WeightTable(lat, out), tuple(wit))


def monotone_majorant(w: WeightTable) -> EnvelopeResult:
    """Smallest monotone increasing table above ``w``: max over subgraphs."""
    lat = w.lattice
    n = len(lat)
    out: list[Fraction] = [Fraction(0)] * n
    wit: list[int] = [0] * n
    for h in range(n):
        best, arg = w[h], h
        for p in lat.predecessors(h):
            if out[p] > best or (out[p] == best and wit[p] < arg):
                best, arg = out[p], wit[p]
        out[h], wit[h] = best, arg
    return EnvelopeResult(EnvelopeKind.MONOTONE_MAJ, w, WeightTable(lat, out), tuple(wit))


def _flatten(h: int, choice: list, acc: set[int]) -> None:
    stack = [h]
    while stack:
        x = stack.pop()
        split = choice[x]
        if split is None:
            acc.add(x)
        else:
            stack.extend(split)


def _split_dp(w: WeightTable, kind: EnvelopeKind) -> EnvelopeResult:
    lat = w.lattice
    n = len(lat)
    minimize = kind is EnvelopeKind.SUBADD_MIN
    d: list[Fraction] = [Fraction(0)] * n
    choice: list[tuple[int, int] | None] = [None] * n
    for h in range(n):
        best = w[h]
        pairs = lat.split_pairs(h) if minimize else lat.disjoint_split_pairs(h)
        for a, b in pairs:
            val = d[a] + d[b]
            if (val < best) if minimize else (val > best):
                best, choice[h] = val, (a, b)
        d[h] = best
    witness = [Cover(())]
    for h in range(1, n):
        parts: set[int] = set()
        _flatten(h, choice, parts)
        witness.append(Cover(tuple(sorted(parts))))
    return EnvelopeResult(kind, w, WeightTable(lat, d), tuple(witness))


def subadditive_minorant(w: WeightTable) -> EnvelopeResult:
    """Largest subadditive table below ``w``: cheapest cover by subgraphs.

    An irredundant cover with two or more parts folds into one part plus the
    union of the rest, both proper, so binary splits reach every optimum.
    On ties the whole subgraph is kept, then the first split in index order.

    >>> from graphenv.lattice import build_graph, enumerate_lattice
    >>> lat = enumerate_lattice(build_graph(["a", "b"], [("a", "b")]))
    >>> subadditive_minorant(WeightTable(lat, [0, 3, 5, 9, 4])).output
    WeightTable([0, 3, 5, 8, 4])
    """
    return _split_dp(w, EnvelopeKind.SUBADD_MIN)


def superadditive_majorant(w: WeightTable) -> EnvelopeResult:
    """Smallest table above ``w`` that is superadditive on disjoint pairs.

    Value at H is the best part-sum over partitions of H into element-disjoint
    parts, i.e. over groupings of its connected components.
    """
    return _split_dp(w, EnvelopeKind.SUPERADD_MAJ)


ENVELOPES = {
    EnvelopeKind.MONOTONE_MIN: monotone_minorant,
    EnvelopeKind.MONOTONE_MAJ: monotone_majorant,
    EnvelopeKind.SUBADD_MIN: subadditive_minorant,
    EnvelopeKind.SUPERADD_MAJ: superadditive_majorant,
}


def envelope(kind: EnvelopeKind | str, w: WeightTable) -> EnvelopeResult:
    return ENVELOPES[EnvelopeKind(kind)](w)


@dataclass(frozen=True)
class SandwichResult:
    """Decision of a separation question.

    ``separator`` is always the computed envelope of ``w2``.  On failure
    ``index`` is the first H with ``w1(H) > separator(H)`` and ``witness`` is
    the envelope's optimizer there (supergraph index or refuting cover).
    """

    success: bool
    separator: WeightTable
    index: int | None = None
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.success


def _sandwich(w1: WeightTable, w2: WeightTable, build) -> SandwichResult:
    if not w1.same_lattice(w2):
        raise LatticeMismatch("sandwich bounds index different lattices")
    env = build(w2)
    bad = w1.first_exceeding(env.output)
    if bad is None:
        return SandwichResult(True, env.output)
    return SandwichResult(False, env.output, bad, env.witness[bad])


def sandwich_monotone(w1: WeightTable, w2: WeightTable) -> SandwichResult:
    """Is there a monotone increasing f with ``w1 <= f <= w2``?

    Exactly when ``w1`` lies below the monotone minorant of ``w2``, which is
    then a separator.
    """
    return _sandwich(w1, w2, monotone_minorant)


def sandwich_subadditive(w1: WeightTable, w2: WeightTable) -> SandwichResult:
    """Is there a subadditive f with ``w1 <= f <= w2``?"""
    return _sandwich(w1, w2, subadditive_minorant)

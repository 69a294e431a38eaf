"""Exact nonnegative weight tables over a subgraph lattice."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DuplicateEntry,
    LatticeMismatch,
    MalformedNumber,
    MissingSubgraph,
    NegativeWeight,
    UnknownSubgraph,
    WeightFileError,
)
from .lattice import Lattice

DEFAULT_VERTEX_CAP = 16


def parse_rational(raw) -> Fraction:
    """Parse ``"p/q"``, an integer, or a terminating decimal, exactly.

    JSON floats are converted through their shortest repr so ``0.1`` means
    1/10, not the nearest binary double.
    """
    if isinstance(raw, bool):
        raise MalformedNumber(raw)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raw = repr(raw)
    if isinstance(raw, Fraction):
        return raw
    if not isinstance(raw, str):
        raise MalformedNumber(raw)
    try:
        return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise MalformedNumber(raw) from None


def format_rational(q: Fraction) -> str:
    """Reduced rendering: ``"7"`` or ``"3/2"``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class WeightTable:
    """Dense exact weights, one per canonical lattice index.

    Comparison operators ``<=`` and ``>=`` are pointwise; ``==`` requires
    the same lattice and identical values.
    """

    __slots__ = ("lattice", "values")

    def __init__(self, lattice: Lattice, values: Iterable):
        vals = tuple(v if isinstance(v, Fraction) else parse_rational(v) for v in values)
        if len(vals) != len(lattice):
            raise LatticeMismatch(f"{len(vals)} values for a lattice of {len(lattice)}")
        for i, v in enumerate(vals):
            if v < 0:
                raise NegativeWeight(i, f"negative weight {v} at index {i}")
        self.lattice = lattice
        self.values = vals

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def same_lattice(self, other: "WeightTable") -> bool:
        return self.lattice is other.lattice or self.lattice.graph == other.lattice.graph

    def _require(self, other: "WeightTable") -> None:
        if not self.same_lattice(other):
            raise LatticeMismatch("weight tables index different lattices")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightTable):
            return NotImplemented
        return self.same_lattice(other) and self.values == other.values

    __hash__ = None

    def __le__(self, other: "WeightTable") -> bool:
        self._require(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: "WeightTable") -> bool:
        self._require(other)
        return all(a >= b for a, b in zip(self.values, other.values))

    def first_exceeding(self, other: "WeightTable") -> int | None:
        """Lowest index where ``self > other``, or None."""
        self._require(other)
        for i, (a, b) in enumerate(zip(self.values, other.values)):
            if a > b:
                return i
        return None

    def __repr__(self) -> str:
        return f"WeightTable([{', '.join(format_rational(v) for v in self.values)}])"


def constant_table(lattice: Lattice, c=0) -> WeightTable:
    return WeightTable(lattice, [parse_rational(c)] * len(lattice))


class BuiltinWeight(str, Enum):
    EDGE_COUNT = "edge_count"
    VERTEX_COUNT = "vertex_count"
    MAX_DEGREE = "max_degree"
    COMPONENT_COUNT = "component_count"
    CLIQUE_NUMBER = "clique_number"
    CHROMATIC_NUMBER = "chromatic_number"


def _adjacency(lat: Lattice, h: int) -> dict[int, int]:
    s = lat[h]
    adj = {v: 0 for v in range(lat.graph.vertex_count) if s.vertex_mask >> v & 1}
    for e, (u, v) in enumerate(lat.graph.edges):
        if s.edge_mask >> e & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def _clique_number(adj: dict[int, int]) -> int:
    best = 0

    def grow(size: int, candidates: int):
        nonlocal best
        if candidates == 0:
            best = max(best, size)
            return
        if size + candidates.bit_count() <= best:
            return
        while candidates:
            v = candidates.bit_length() - 1
            candidates &= ~(1 << v)
            grow(size + 1, candidates & adj[v])
            if size + 1 + candidates.bit_count() <= best:
                return

    grow(0, sum(1 << v for v in adj))
    return best


def _colorable(adj: dict[int, int], order: list[int], k: int) -> bool:
    color: dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {color[u] for u in color if adj[v] >> u & 1}
        # colors beyond the first unused one are symmetric
        limit = min(k, max(color.values(), default=-1) + 2)
        for c in range(limit):
            if c not in taken:
                color[v] = c
                if place(i + 1):
                    return True
                del color[v]
        return False

    return place(0)


def _chromatic_number(adj: dict[int, int]) -> int:
    if not adj:
        return 0
    order = sorted(adj, key=lambda v: -adj[v].bit_count())
    k = 1
    while not _colorable(adj, order, k):
        k += 1
    return k


def eval_builtin(
    b: BuiltinWeight | str, lat: Lattice, h: int, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> Fraction:
    """Exact value of a classical graph parameter on subgraph ``h``."""
    b = BuiltinWeight(b)
    s = lat[h]
    if b is BuiltinWeight.EDGE_COUNT:
        return Fraction(s.edge_mask.bit_count())
    if b is BuiltinWeight.VERTEX_COUNT:
        return Fraction(s.vertex_mask.bit_count())
    if b is BuiltinWeight.COMPONENT_COUNT:
        return Fraction(len(lat.components(h)) if h else 0)
    adj = _adjacency(lat, h)
    if b is BuiltinWeight.MAX_DEGREE:
        return Fraction(max((m.bit_count() for m in adj.values()), default=0))
    if len(adj) > vertex_cap:
        raise CapExceeded(f"{b.value} on {len(adj)} vertices exceeds cap {vertex_cap}")
    if b is BuiltinWeight.CLIQUE_NUMBER:
        return Fraction(_clique_number(adj))
    return Fraction(_chromatic_number(adj))


def tabulate(
    b: BuiltinWeight | str, lat: Lattice, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> WeightTable:
    return WeightTable(lat, [eval_builtin(b, lat, h, vertex_cap) for h in range(len(lat))])


def descriptor_key(lat: Lattice, vertices: Sequence[str], edges: Sequence[Sequence[str]]):
    """Resolve label sets to a lattice index, or raise UnknownSubgraph."""
    g = lat.graph
    pos = {label: i for i, label in enumerate(g.vertex_labels)}
    edge_pos = {frozenset(g.edge_label(e)): e for e in range(g.edge_count)}
    desc = {"vertices": list(vertices), "edges": [list(p) for p in edges]}
    vm = 0
    for label in vertices:
        if label not in pos:
            raise UnknownSubgraph(desc, f"unknown vertex {label!r} in {desc}")
        vm |= 1 << pos[label]
    em = 0
    for pair in edges:
        key = frozenset(pair)
        if len(pair) != 2 or key not in edge_pos:
            raise UnknownSubgraph(desc, f"unknown edge {list(pair)!r} in {desc}")
        em |= 1 << edge_pos[key]
    idx = lat.index_of.get((vm, em))
    if idx is None:
        raise UnknownSubgraph(desc, f"edges without their endpoints in {desc}")
    return idx


def load_table(lat: Lattice, document: Mapping) -> WeightTable:
    """Build a table from a parsed weight document.

    The document looks like ``{"weights": [{"vertices": [...], "edges":
    [[u, v], ...], "w": "3/2"}, ...]}`` and must name every subgraph once.
    """
    if not isinstance(document, Mapping) or not isinstance(document.get("weights"), list):
        raise WeightFileError("weights", 'weight document needs a "weights" list')
    values: dict[int, Fraction] = {}
    for entry in document["weights"]:
        if not isinstance(entry, Mapping) or "w" not in entry:
            raise WeightFileError(entry, f"malformed weight entry {entry!r}")
        vertices = entry.get("vertices", [])
        edges = entry.get("edges", [])
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise WeightFileError(entry, f"malformed weight entry {entry!r}")
        h = descriptor_key(lat, vertices, edges)
        if h in values:
            raise DuplicateEntry({"vertices": vertices, "edges": edges})
        w = parse_rational(entry["w"])
        if w < 0:
            raise NegativeWeight({"vertices": vertices, "edges": edges, "w": entry["w"]})
        values[h] = w
    for h in range(len(lat)):
        if h not in values:
            raise MissingSubgraph(describe(lat, h))
    return WeightTable(lat, [values[h] for h in range(len(lat))])


def describe(lat: Lattice, h: int) -> dict:
    """Label-level descriptor of subgraph ``h`` (sorted labels)."""
    g = lat.graph
    s = lat[h]
    vertices = [g.vertex_labels[v] for v in range(g.vertex_count) if s.vertex_mask >> v & 1]
    edges = [list(g.edge_label(e)) for e in range(g.edge_count) if s.edge_mask >> e & 1]
    return {"vertices": sorted(vertices), "edges": sorted(sorted(p) for p in edges)}


def table_to_document(table: WeightTable) -> dict:
    lat = table.lattice
    return {
        "weights": [
            {**describe(lat, h), "w": format_rational(table[h])} for h in range(len(lat))
        ]
    }


def _seed_words(*keys: int) -> list[int]:
    # SeedSequence wants nonnegative entropy; fold signed 64-bit seeds
    return [k & 0xFFFF_FFFF_FFFF_FFFF for k in keys]


def random_table(lat: Lattice, seed: int, max_numerator: int = 10) -> WeightTable:
    """Integers uniform in ``[0, max_numerator]``, reproducible from ``seed``."""
    if max_numerator < 0:
        raise ValueError("max_numerator must be nonnegative")
    rng = np.random.default_rng(np.random.SeedSequence(_seed_words(seed)))
    draws = rng.integers(0, max_numerator, size=len(lat), endpoint=True)
    return WeightTable(lat, [Fraction(int(x)) for x in draws])

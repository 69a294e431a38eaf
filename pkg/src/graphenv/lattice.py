"""Finite simple graphs and the lattice of all their subgraphs.

A subgraph is any closed pair (V', E'): a set of vertices plus a set of edges
whose endpoints all lie in V'.  Subgraphs are stored as two bitmasks.  For
enumeration a subgraph is also packed into a single *element mask* whose low
``n`` bits are the vertices and whose high bits are the edges, so that the
"elements" of a subgraph (vertices and edges alike) can be iterated as plain
bits.

The lattice lists every subgraph once, sorted by ``(size, vertex_mask,
edge_mask)``.  That order is a linear extension of containment, so sweeping
indices upwards visits every subgraph after all of its proper subgraphs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    DuplicateVertex,
    IndexOutOfRange,
    LatticeTooLarge,
    SelfLoop,
    UnknownEndpoint,
)

DEFAULT_MAX_LATTICE = 1 << 20
MAX_LATTICE_ENV = "ENVELOPE_MAX_LATTICE"


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Edges are index pairs ``(u, v)`` with ``u < v``, sorted.  Use
    :func:`build_graph` to construct one from labels.
    """

    vertex_labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.vertex_labels)) != len(self.vertex_labels):
            raise DuplicateVertex(_first_duplicate(self.vertex_labels))
        n = len(self.vertex_labels)
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"edge {(u, v)} is not a normalized pair below {n}")
        if len(set(self.edges)) != len(self.edges):
            raise DuplicateEdge(_first_duplicate(self.edges))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_label(self, e: int) -> tuple[str, str]:
        u, v = self.edges[e]
        return self.vertex_labels[u], self.vertex_labels[v]


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


def build_graph(labels: Sequence[str], edges: Iterable[Sequence[str]]) -> Graph:
    """Build a :class:`Graph` from vertex labels and label pairs.

    Vertex order defines vertex bit positions.  Edges are normalized to
    ``(min, max)`` index pairs and sorted, so edge bit positions follow the
    lexicographic order of index pairs.

    >>> build_graph(["a", "b"], [("b", "a")]).edges
    ((0, 1),)
    """
    labels = tuple(str(x) for x in labels)
    position: dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in position:
            raise DuplicateVertex(label)
        position[label] = i
    pairs: set[tuple[int, int]] = set()
    for pair in edges:
        a, b = pair
        for end in (a, b):
            if end not in position:
                raise UnknownEndpoint(end)
        if a == b:
            raise SelfLoop(a)
        u, v = sorted((position[a], position[b]))
        if (u, v) in pairs:
            raise DuplicateEdge((a, b))
        pairs.add((u, v))
    return Graph(labels, tuple(sorted(pairs)))


@dataclass(frozen=True)
class Subgraph:
    vertex_mask: int
    edge_mask: int
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "size", self.vertex_mask.bit_count() + self.edge_mask.bit_count()
        )


def union(a: Subgraph, b: Subgraph) -> Subgraph:
    return Subgraph(a.vertex_mask | b.vertex_mask, a.edge_mask | b.edge_mask)


def intersect(a: Subgraph, b: Subgraph) -> Subgraph:
    return Subgraph(a.vertex_mask & b.vertex_mask, a.edge_mask & b.edge_mask)


def is_contained(a: Subgraph, b: Subgraph) -> bool:
    """True when ``a`` is a (not necessarily proper) subgraph of ``b``."""
    return (a.vertex_mask & ~b.vertex_mask) == 0 and (a.edge_mask & ~b.edge_mask) == 0


@dataclass(frozen=True)
class Cover:
    """A set of distinct nonempty lattice indices, stored sorted."""

    parts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def predict_lattice_size(g: Graph, limit: int | None = None) -> int:
    """Count closed pairs as the sum over vertex sets S of 2**(edges inside S).

    With ``limit`` the count stops as soon as it exceeds the limit, and the
    partial value is returned; this keeps the guard cheap for huge graphs.
    """
    n = g.vertex_count
    if limit is not None and n >= limit.bit_length():
        # 2**n vertex subsets alone already exceed the limit
        return 1 << n
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    total = 0
    for s in range(1 << n):
        inside = sum(1 for m in ends if m & s == m)
        total += 1 << inside
        if limit is not None and total > limit:
            return total
    return total


def resolve_guard(flag: int | None = None) -> int:
    """Lattice guard: explicit value, else $ENVELOPE_MAX_LATTICE, else 2**20."""
    if flag is not None:
        guard = flag
    else:
        raw = os.environ.get(MAX_LATTICE_ENV)
        guard = int(raw) if raw else DEFAULT_MAX_LATTICE
    if guard < 1:
        raise ValueError(f"lattice guard must be >= 1, got {guard}")
    return guard


class Lattice:
    """Complete canonical enumeration of the subgraphs of ``graph``.

    Index 0 is the empty subgraph and the last index is the graph itself.
    Instances are immutable once built.
    """

    def __init__(self, graph: Graph, subgraphs: list[Subgraph]):
        self.graph = graph
        self.subgraphs: tuple[Subgraph, ...] = tuple(subgraphs)
        self.index_of: dict[tuple[int, int], int] = {
            (s.vertex_mask, s.edge_mask): i for i, s in enumerate(self.subgraphs)
        }
        layers: list[list[int]] = []
        for i, s in enumerate(self.subgraphs):
            while len(layers) <= s.size:
                layers.append([])
            layers[s.size].append(i)
        self.layers: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in layers)
        n = graph.vertex_count
        self._n = n
        self._edge_ends = tuple((1 << u) | (1 << v) for u, v in graph.edges)
        self._elements = tuple(s.vertex_mask | (s.edge_mask << n) for s in self.subgraphs)
        self._vmask_all = (1 << n) - 1

    def __len__(self) -> int:
        return len(self.subgraphs)

    def __getitem__(self, i: int) -> Subgraph:
        self._check(i)
        return self.subgraphs[i]

    def __iter__(self) -> Iterator[Subgraph]:
        return iter(self.subgraphs)

    @property
    def top(self) -> int:
        return len(self.subgraphs) - 1

    def _check(self, h: int) -> None:
        if not isinstance(h, int) or not 0 <= h < len(self.subgraphs):
            raise IndexOutOfRange(f"lattice index {h!r} not in [0, {len(self.subgraphs)})")

    def index(self, s: Subgraph) -> int:
        try:
            return self.index_of[(s.vertex_mask, s.edge_mask)]
        except KeyError:
            raise IndexOutOfRange(f"{s} is not a closed subgraph of this graph") from None

    def elements(self, h: int) -> int:
        """Packed element mask (vertices low, edges high) of subgraph ``h``."""
        self._check(h)
        return self._elements[h]

    def _lookup(self, packed: int) -> int | None:
        return self.index_of.get((packed & self._vmask_all, packed >> self._n))

    def contains(self, a: int, b: int) -> bool:
        """``subgraph[a] ⊆ subgraph[b]``."""
        self._check(a)
        self._check(b)
        return self._elements[a] & ~self._elements[b] == 0

    def union(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self._lookup(self._elements[a] | self._elements[b])

    def intersect(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self._lookup(self._elements[a] & self._elements[b])

    def supergraphs_of(self, h: int) -> list[int]:
        self._check(h)
        x = self._elements[h]
        return [j for j in range(h, len(self)) if x & ~self._elements[j] == 0]

    def subgraphs_of(self, h: int) -> list[int]:
        self._check(h)
        x = self._elements[h]
        return [j for j in range(h + 1) if self._elements[j] & ~x == 0]

    def successors(self, h: int) -> list[int]:
        """Covering supergraphs: add one vertex, or one edge between present vertices."""
        self._check(h)
        s = self.subgraphs[h]
        out = []
        for v in range(self._n):
            if not s.vertex_mask >> v & 1:
                out.append(self.index_of[(s.vertex_mask | (1 << v), s.edge_mask)])
        for e, ends in enumerate(self._edge_ends):
            if not s.edge_mask >> e & 1 and ends & s.vertex_mask == ends:
                out.append(self.index_of[(s.vertex_mask, s.edge_mask | (1 << e))])
        return sorted(out)

    def predecessors(self, h: int) -> list[int]:
        """Covered subgraphs: drop one edge, or one vertex with no edge at it."""
        self._check(h)
        s = self.subgraphs[h]
        used = 0
        out = []
        for e, ends in enumerate(self._edge_ends):
            if s.edge_mask >> e & 1:
                used |= ends
                out.append(self.index_of[(s.vertex_mask, s.edge_mask & ~(1 << e))])
        for v in range(self._n):
            if s.vertex_mask >> v & 1 and not used >> v & 1:
                out.append(self.index_of[(s.vertex_mask & ~(1 << v), s.edge_mask)])
        return sorted(out)

    def split_pairs(self, h: int) -> list[tuple[int, int]]:
        """All unordered pairs of proper subgraphs A, B of ``h`` with A ∪ B = h.

        Each element of ``h`` goes to A only, B only, or both; only closed
        assignments survive.  Assignments are pruned before the closure
        lookup: the lowest element always lies in A, and endpoints of B-only
        edges are forced into both.  Pairs come back as ``(i, j)`` with
        ``i < j``, sorted.
        """
        self._check(h)
        full = self._elements[h]
        if full == 0:
            return []
        n = self._n
        low = full & -full
        pairs = []
        # A takes the lowest element of h; B then either lacks it (pair seen
        # once) or has it too (pair seen twice, keep ia < ib)
        a = full
        while True:
            a = (a - 1) & full
            if not a & low:
                if a == 0:
                    break
                continue
            ia = self._lookup(a)
            if ia is not None:
                rest = full & ~a
                # endpoints that B's own edges force into the shared part
                need = 0
                em = rest >> n
                while em:
                    e = (em & -em).bit_length() - 1
                    need |= self._edge_ends[e]
                    em &= em - 1
                need &= ~rest
                if need & ~a == 0:
                    free = a & ~need
                    t = free
                    while True:
                        b = rest | need | t
                        if b != full:
                            ib = self._lookup(b)
                            if ib is not None and (not b & low or ia < ib):
                                pairs.append((ia, ib) if ia < ib else (ib, ia))
                        if t == 0:
                            break
                        t = (t - 1) & free
            if a == 0:
                break
        pairs.sort()
        return pairs

    def components(self, h: int) -> list[int]:
        """Connected components of ``h`` as lattice indices, ascending.

        An isolated vertex is its own component.
        """
        self._check(h)
        s = self.subgraphs[h]
        parent = {v: v for v in range(self._n) if s.vertex_mask >> v & 1}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, (u, v) in enumerate(self.graph.edges):
            if s.edge_mask >> e & 1:
                parent[find(u)] = find(v)
        groups: dict[int, list[int]] = {}
        for v in parent:
            groups.setdefault(find(v), []).append(v)
        comps = []
        for verts in groups.values():
            vm = sum(1 << v for v in verts)
            em = 0
            for e, ends in enumerate(self._edge_ends):
                if s.edge_mask >> e & 1 and ends & vm == ends:
                    em |= 1 << e
            comps.append(self.index_of[(vm, em)])
        return sorted(comps)

    def disjoint_split_pairs(self, h: int) -> list[tuple[int, int]]:
        """Unordered pairs of nonempty, element-disjoint A, B with A ∪ B = h.

        These are exactly the bipartitions of the components of ``h``.
        """
        comps = self.components(h)
        if len(comps) < 2:
            return []
        full = self._elements[h]
        masks = [self._elements[c] for c in comps]
        pairs = []
        # component 0 always on the first side; the other side must be nonempty
        for pick in range(0, 1 << (len(comps) - 1)):
            a = masks[0]
            for k in range(1, len(comps)):
                if pick >> (k - 1) & 1:
                    a |= masks[k]
            if a == full:
                continue
            ia, ib = self._lookup(a), self._lookup(full & ~a)
            pairs.append((min(ia, ib), max(ia, ib)))
        pairs.sort()
        return pairs

    def covers_of(self, h: int, exhaustive: bool = False) -> Iterator[Cover]:
        """Stream every cover of ``h`` by distinct nonempty subgraphs.

        The recursion always branches on the lowest uncovered element of
        ``h``.  By default only the covers reached that way are emitted
        (every part covered something new when it was picked), which is
        enough for minimizing nonnegative sums.  ``exhaustive=True`` also
        emits every superset of those covers, i.e. all covers.
        The empty subgraph has no cover.
        """
        self._check(h)
        target = self._elements[h]
        if target == 0:
            return
        parts = [j for j in self.subgraphs_of(h) if j != 0]
        masks = self._elements
        seen: set[frozenset[int]] = set()

        def emit(chosen: frozenset[int]):
            if chosen not in seen:
                seen.add(chosen)
                yield Cover(tuple(sorted(chosen)))

        def extend(chosen: frozenset[int]):
            unused = [p for p in parts if p not in chosen]
            for pick in range(1, 1 << len(unused)):
                extra = {unused[k] for k in range(len(unused)) if pick >> k & 1}
                yield from emit(chosen | extra)

        def rec(chosen: frozenset[int], covered: int):
            if covered == target:
                yield from emit(chosen)
                if exhaustive:
                    yield from extend(chosen)
                return
            low = (target & ~covered) & -(target & ~covered)
            for p in parts:
                if masks[p] & low and p not in chosen:
                    yield from rec(chosen | {p}, covered | masks[p])

        yield from rec(frozenset(), 0)

    def partitions_of(self, h: int) -> Iterator[Cover]:
        """Stream the covers of ``h`` whose parts share no vertex and no edge."""
        self._check(h)
        target = self._elements[h]
        if target == 0:
            return
        parts = [j for j in self.subgraphs_of(h) if j != 0]
        masks = self._elements

        def rec(chosen: tuple[int, ...], covered: int):
            if covered == target:
                yield Cover(tuple(sorted(chosen)))
                return
            low = (target & ~covered) & -(target & ~covered)
            for p in parts:
                if masks[p] & low and not masks[p] & covered:
                    yield from rec(chosen + (p,), covered | masks[p])

        yield from rec((), 0)


def enumerate_lattice(g: Graph, max_size: int | None = None) -> Lattice:
    """Enumerate all subgraphs of ``g`` in canonical order.

    ``max_size`` defaults to :func:`resolve_guard`; a graph whose lattice
    would exceed it raises :class:`LatticeTooLarge` before any enumeration.
    """
    guard = resolve_guard(max_size)
    predicted = predict_lattice_size(g, limit=guard)
    if predicted > guard:
        raise LatticeTooLarge(predicted, guard)
    n = g.vertex_count
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    subs = []
    for vm in range(1 << n):
        inside = [e for e, m in enumerate(ends) if m & vm == m]
        for pick in range(1 << len(inside)):
            em = 0
            for k, e in enumerate(inside):
                if pick >> k & 1:
                    em |= 1 << e
            subs.append(Subgraph(vm, em))
    subs.sort(key=lambda s: (s.size, s.vertex_mask, s.edge_mask))
    return Lattice(g, subs)

"""Orders, ordered graphs and their matrix views.

Vertices are arbitrary hashable ids (strings for transitions and places,
:class:`EdgeVertex` for the extra vertices of a total graph).  Orders are
sequences of disjoint *parts*; two vertices are comparable iff they share a
part, and positions are 1-based within a part.  Everything here is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

Vertex = Hashable


class GraphError(ValueError):
    """Raised for unknown vertices, malformed orders and size mismatches."""


class EdgeVertex(NamedTuple):
    """The vertex standing for edge ``{u, v}`` in a total graph (``u`` first in order)."""

    u: Vertex
    v: Vertex

    def __str__(self):
        return f"{{{self.u},{self.v}}}"


# ---------------------------------------------------------------------------
# orders and permutations


@dataclass(frozen=True)
class Permutation:
    """A bijection on ranks ``1..n``.

    ``ranks[k]`` is the 1-based *source* rank of the element placed at new
    rank ``k + 1``, which is also how permutations are printed.
    """

    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if sorted(self.ranks) != list(range(1, len(self.ranks) + 1)):
            raise GraphError(f"not a permutation of 1..{len(self.ranks)}: {self.ranks}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def size(self) -> int:
        return len(self.ranks)

    def __len__(self):
        return len(self.ranks)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.ranks)
        for new, src in enumerate(self.ranks, start=1):
            inv[src - 1] = new
        return Permutation(tuple(inv))

    def reversed(self) -> Permutation:
        return Permutation(self.ranks[::-1])

    def apply(self, seq: Sequence) -> tuple:
        """Reorder ``seq`` so that position ``k`` holds ``seq[ranks[k] - 1]``."""
        if len(seq) != len(self.ranks):
            raise GraphError(f"permutation of size {len(self.ranks)} applied to {len(seq)} items")
        return tuple(seq[r - 1] for r in self.ranks)


@dataclass(frozen=True)
class PartialOrder:
    """Disjoint, totally ordered parts; a total order has exactly one part."""

    parts: tuple[tuple[Vertex, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen = set()
        for part in parts:
            for v in part:
                if v in seen:
                    raise GraphError(f"vertex {v!r} occurs more than once in order")
                seen.add(v)

    @classmethod
    def total(cls, seq: Iterable[Vertex]) -> PartialOrder:
        return cls((tuple(seq),))

    @cached_property
    def _index(self) -> dict:
        return {v: (i, k + 1) for i, part in enumerate(self.parts) for k, v in enumerate(part)}

    @property
    def is_total(self) -> bool:
        return len(self.parts) <= 1

    @property
    def vertices(self) -> tuple:
        return tuple(v for part in self.parts for v in part)

    def __len__(self):
        return sum(len(p) for p in self.parts)

    def __contains__(self, v):
        return v in self._index

    def position(self, v: Vertex) -> int:
        try:
            return self._index[v][1]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def part_of(self, v: Vertex) -> int:
        try:
            return self._index[v][0]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def comparable(self, a: Vertex, b: Vertex) -> bool:
        return self.part_of(a) == self.part_of(b)

    def leq(self, a: Vertex, b: Vertex) -> bool:
        return self.comparable(a, b) and self.position(a) <= self.position(b)

    def sequence(self) -> tuple:
        """The single part of a total order."""
        if not self.is_total:
            raise GraphError("order is partial")
        return self.parts[0] if self.parts else ()

    def __str__(self):
        return " ; ".join(" < ".join(map(str, p)) for p in self.parts)


def position(order: PartialOrder, v: Vertex) -> int:
    return order.position(v)


def restrict(order: PartialOrder, subset: Iterable[Vertex]) -> PartialOrder:
    """Keep the vertices in ``subset`` in their relative order; empty parts vanish."""
    keep = set(subset)
    parts = (tuple(v for v in part if v in keep) for part in order.parts)
    return PartialOrder(tuple(p for p in parts if p))


def permute(order: PartialOrder, *perms: Permutation) -> PartialOrder:
    """Permute each part of ``order`` by the matching permutation.

    >>> str(permute(PartialOrder.total("abc"), Permutation((3, 2, 1))))
    'c < b < a'
    """
    if len(perms) == 1 and not isinstance(perms[0], Permutation):
        perms = tuple(perms[0])
    if len(perms) != len(order.parts):
        raise GraphError(f"{len(perms)} permutations for {len(order.parts)} parts")
    return PartialOrder(tuple(p.apply(part) for p, part in zip(perms, order.parts)))


def permutation_between(source: Sequence[Vertex], target: Sequence[Vertex]) -> Permutation:
    """The permutation taking sequence ``source`` to ``target``."""
    index = {v: k for k, v in enumerate(source, start=1)}
    if len(index) != len(target) or any(v not in index for v in target):
        raise GraphError("sequences are not rearrangements of each other")
    return Permutation(tuple(index[v] for v in target))


# ---------------------------------------------------------------------------
# graphs


def _edge(a, b) -> frozenset:
    if a == b:
        raise GraphError(f"self-loop on {a!r}")
    return frozenset((a, b))


@dataclass(frozen=True)
class OrderedGraph:
    """Undirected simple graph with an order on its vertices."""

    order: PartialOrder
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset(e if isinstance(e, frozenset) else _edge(*e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"malformed edge {set(e)}")
            for v in e:
                if v not in self.order:
                    raise GraphError(f"edge endpoint {v!r} not in order")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, vertices: Iterable[Vertex], edges: Iterable[tuple]) -> OrderedGraph:
        """Totally ordered graph, vertex order as given."""
        return cls(PartialOrder.total(vertices), frozenset(_edge(a, b) for a, b in edges))

    @property
    def vertices(self) -> tuple:
        return self.order.vertices

    def __len__(self):
        return len(self.order)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.order.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        try:
            return self.adjacency[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def with_order(self, order: PartialOrder) -> OrderedGraph:
        if set(order.vertices) != set(self.order.vertices) or len(order) != len(self.order):
            raise GraphError("new order must cover exactly the same vertices")
        return OrderedGraph(order, self.edges)


def neighbors(g: OrderedGraph, v: Vertex) -> frozenset:
    return g.neighbors(v)


@dataclass(frozen=True)
class BipartiteGraph:
    """Rows (transitions) and columns (variables) with row-column edges.

    The order is the two-part partial order ``rows ; cols``.
    """

    rows: tuple
    cols: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        rows, cols = set(self.rows), set(self.cols)
        if rows & cols:
            raise GraphError(f"vertices in both parts: {sorted(map(str, rows & cols))}")
        edges = frozenset((r, c) for r, c in self.edges)
        for r, c in edges:
            if r not in rows or c not in cols:
                raise GraphError(f"edge ({r!r}, {c!r}) does not join a row to a column")
        object.__setattr__(self, "edges", edges)
        PartialOrder((self.rows, self.cols))  # uniqueness check

    @classmethod
    def from_matrix(cls, matrix, rows=None, cols=None) -> BipartiteGraph:
        a = np.asarray(matrix)
        if a.ndim != 2:
            raise GraphError("biadjacency matrix must be two-dimensional")
        m, n = a.shape
        rows = tuple(rows) if rows is not None else tuple(f"t{i}" for i in range(1, m + 1))
        cols = tuple(cols) if cols is not None else tuple(f"p{j}" for j in range(1, n + 1))
        edges = {(rows[i], cols[j]) for i, j in zip(*np.nonzero(a))}
        return cls(rows, cols, frozenset(edges))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def order(self) -> PartialOrder:
        parts = tuple(p for p in (self.rows, self.cols) if p)
        return PartialOrder(parts)

    def as_graph(self) -> OrderedGraph:
        """The same graph under its two-part partial order."""
        return OrderedGraph(PartialOrder((self.rows, self.cols)), frozenset(_edge(r, c) for r, c in self.edges))

    def biadjacency(self) -> np.ndarray:
        ri = {r: i for i, r in enumerate(self.rows)}
        ci = {c: j for j, c in enumerate(self.cols)}
        a = np.zeros(self.shape, dtype=np.uint8)
        for r, c in self.edges:
            a[ri[r], ci[c]] = 1
        return a

    def row_neighbors(self, r) -> tuple:
        """Columns adjacent to ``r``, in column order."""
        return tuple(c for c in self.cols if (r, c) in self.edges)

    def permuted(self, sp: SplitPermutation) -> BipartiteGraph:
        return BipartiteGraph(sp.rows.apply(self.rows), sp.cols.apply(self.cols), self.edges)


# ---------------------------------------------------------------------------
# symmetrization and total graphs


def symmetrize(bg: BipartiteGraph) -> OrderedGraph:
    """Totally order rows before columns, keeping the edges."""
    return OrderedGraph(PartialOrder.total(bg.rows + bg.cols), frozenset(_edge(r, c) for r, c in bg.edges))


def total_graph(g: OrderedGraph) -> OrderedGraph:
    """The total graph on ``V + E``.

    Edge vertices come after all original vertices, sorted by the positions
    of their endpoints.
    """
    seq = g.order.sequence()
    pos = g.order.position
    keyed = []
    for e in g.edges:
        a, b = sorted(e, key=pos)
        keyed.append(((pos(a), pos(b)), EdgeVertex(a, b)))
    keyed.sort()
    edge_vertices = [ev for _, ev in keyed]

    edges = set(g.edges)
    incident = {v: [] for v in seq}
    for ev in edge_vertices:
        edges.add(frozenset((ev.u, ev)))
        edges.add(frozenset((ev.v, ev)))
        incident[ev.u].append(ev)
        incident[ev.v].append(ev)
    for evs in incident.values():
        for e1, e2 in combinations(evs, 2):
            edges.add(frozenset((e1, e2)))
    return OrderedGraph(PartialOrder.total(tuple(seq) + tuple(edge_vertices)), frozenset(edges))


def adjacency_matrix(g: OrderedGraph) -> np.ndarray:
    """Dense 0/1 adjacency matrix in the graph's total order."""
    seq = g.order.sequence()
    index = {v: i for i, v in enumerate(seq)}
    a = np.zeros((len(seq), len(seq)), dtype=np.uint8)
    for e in g.edges:
        i, j = (index[v] for v in e)
        a[i, j] = a[j, i] = 1
    return a


# ---------------------------------------------------------------------------
# split permutations


@dataclass(frozen=True)
class SplitPermutation:
    """One permutation for the rows and one for the columns."""

    rows: Permutation
    cols: Permutation

    @classmethod
    def identity(cls, m: int, n: int) -> SplitPermutation:
        return cls(Permutation.identity(m), Permutation.identity(n))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.size, self.cols.size

    def format(self) -> str:
        """``rows: ...`` / ``cols: ...`` lines of 1-based source positions."""
        return "\n".join(
            (f"{name}: " + " ".join(map(str, p.ranks))).rstrip()
            for name, p in (("rows", self.rows), ("cols", self.cols))
        ) + "\n"

    @classmethod
    def parse(cls, text: str) -> SplitPermutation:
        found = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, sep, rest = line.partition(":")
            if not sep:
                raise GraphError(f"malformed permutation line {line!r}")
            found[key.strip()] = Permutation(tuple(int(x) for x in rest.split()))
        try:
            return cls(found["rows"], found["cols"])
        except KeyError as exc:
            raise GraphError(f"permutation text lacks a {exc.args[0]!r} line") from None


def split_permutation(permuted: PartialOrder, rows: Sequence[Vertex], cols: Sequence[Vertex]) -> SplitPermutation:
    """Restrict a (possibly total-graph) order to ``rows`` and ``cols``.

    ``rows`` and ``cols`` are the original sequences; the result lists their
    source positions in the order ``permuted`` visits them.  Vertices of
    ``permuted`` outside both, such as edge vertices, are ignored.
    """
    flat = permuted.vertices
    row_set, col_set = set(rows), set(cols)
    new_rows = [v for v in flat if v in row_set]
    new_cols = [v for v in flat if v in col_set]
    return SplitPermutation(permutation_between(rows, new_rows), permutation_between(cols, new_cols))


def flip_horizontal(sp: SplitPermutation) -> SplitPermutation:
    """Invert the row (transition) permutation."""
    return SplitPermutation(sp.rows.reversed(), sp.cols)


def flip_vertical(sp: SplitPermutation) -> SplitPermutation:
    """Invert the column (variable) permutation."""
    return SplitPermutation(sp.rows, sp.cols.reversed())


# ---------------------------------------------------------------------------
# matrix text format


def format_matrix(a) -> str:
    a = np.asarray(a)
    m, n = a.shape
    lines = [f"{m} {n}"]
    lines += ["".join("1" if x else "0" for x in row) for row in a]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines:
        raise GraphError("empty matrix text")
    try:
        m, n = (int(x) for x in lines[0].split(" "))
    except ValueError:
        raise GraphError(f"bad matrix header {lines[0]!r}") from None
    body, extra = lines[1:m + 1], lines[m + 1:]
    if len(body) != m or any(line.strip() for line in extra):
        raise GraphError(f"expected {m} matrix rows, got {len(lines) - 1}")
    a = np.zeros((m, n), dtype=np.uint8)
    for i, row in enumerate(body):
        if len(row) != n or set(row) - {"0", "1"}:
            raise GraphError(f"matrix row {i + 1} is not {n} characters of 0/1")
        a[i] = [c == "1" for c in row]
    return a

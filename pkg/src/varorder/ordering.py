"""Nodal ordering algorithms on totally ordered undirected graphs.

Every algorithm returns a :class:`~varorder.graph.Permutation` of the input
order.  Ties are always broken by ascending position in the input order, so
results are deterministic.  Disconnected graphs are ordered component by
component, components taken in order of their first vertex.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Literal

from .graph import (
    BipartiteGraph,
    OrderedGraph,
    Permutation,
    SplitPermutation,
    flip_horizontal,
    flip_vertical,
    permutation_between,
    permute,
    split_permutation,
    symmetrize,
    total_graph,
)

ALGORITHMS = ("cuthill-mckee", "king", "sloan", "gps")
ALIASES = {"cm": "cuthill-mckee", "cuthill-mckee": "cuthill-mckee", "king": "king", "sloan": "sloan", "gps": "gps"}
SHORT_NAMES = {"cuthill-mckee": "cm", "king": "king", "sloan": "sloan", "gps": "gps"}
STARTS = ("min-degree", "pseudo-peripheral")
DEFAULT_START = {"cuthill-mckee": "min-degree", "king": "min-degree", "sloan": "pseudo-peripheral", "gps": "pseudo-peripheral"}


@dataclass(frozen=True)
class OrderingConfig:
    """Which algorithm to run and how.

    ``start=None`` picks the algorithm's default start policy.  Sloan weights
    are ``(distance weight, degree weight)``.
    """

    algorithm: str = "cuthill-mckee"
    start: str | None = None
    reverse: bool = False
    sloan_weights: tuple[int, int] = (1, 2)
    use_total_graph: bool = False

    def __post_init__(self):
        try:
            object.__setattr__(self, "algorithm", ALIASES[self.algorithm])
        except KeyError:
            raise ValueError(f"unknown algorithm {self.algorithm!r}") from None
        if self.start is not None and self.start not in STARTS:
            raise ValueError(f"unknown start policy {self.start!r}")
        w1, w2 = self.sloan_weights
        if w1 < 0 or w2 < 0 or w1 + w2 <= 0:
            raise ValueError(f"bad Sloan weights {self.sloan_weights}")

    @property
    def start_policy(self) -> str:
        return self.start or DEFAULT_START[self.algorithm]


# ---------------------------------------------------------------------------
# helpers


class _Ctx:
    """Positions and degrees of a totally ordered graph."""

    def __init__(self, g: OrderedGraph):
        self.g = g
        self.seq = g.order.sequence()
        self.pos = {v: k for k, v in enumerate(self.seq)}
        self.adj = g.adjacency
        self.deg = {v: len(ns) for v, ns in self.adj.items()}

    def key(self, v):
        return (self.deg[v], self.pos[v])

    def min_degree(self, vertices):
        return min(vertices, key=self.key)

    def levels(self, root) -> list[list]:
        """Rooted level structure (BFS layers) of root's component."""
        seen = {root}
        levels = [[root]]
        while True:
            nxt = []
            for v in levels[-1]:
                for w in sorted(self.adj[v], key=self.pos.__getitem__):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if not nxt:
                return levels
            levels.append(nxt)

    def components(self) -> list[list]:
        seen = set()
        comps = []
        for v in self.seq:
            if v in seen:
                continue
            comp = [lv for level in self.levels(v) for lv in level]
            seen.update(comp)
            comps.append(comp)
        return comps

    def pseudo_peripheral_pair(self, seed):
        root, levels = seed, self.levels(seed)
        while True:
            far = self.min_degree(levels[-1])
            far_levels = self.levels(far)
            if len(far_levels) <= len(levels):
                return root, far
            root, levels = far, far_levels

    def start(self, comp, policy):
        seed = self.min_degree(comp)
        if policy == "min-degree":
            return seed
        return self.pseudo_peripheral_pair(seed)[0]

    def result(self, order: list, reverse: bool) -> Permutation:
        if reverse:
            order = order[::-1]
        return permutation_between(self.seq, order)


def min_degree_start(g: OrderedGraph):
    """Earliest vertex of minimum degree."""
    if len(g) == 0:
        raise ValueError("empty graph has no start vertex")
    ctx = _Ctx(g)
    return ctx.min_degree(ctx.seq)


def pseudo_peripheral_pair(g: OrderedGraph, seed):
    """George-Liu iteration from ``seed``.

    Repeatedly re-roots at the earliest minimum-degree vertex of the deepest
    level while that makes the level structure deeper.  Returns the final
    root and the far vertex it was compared against.
    """
    g.neighbors(seed)
    return _Ctx(g).pseudo_peripheral_pair(seed)


# ---------------------------------------------------------------------------
# algorithms


def cuthill_mckee(g: OrderedGraph, cfg: OrderingConfig | None = None) -> Permutation:
    cfg = cfg or OrderingConfig("cuthill-mckee")
    ctx = _Ctx(g)
    order = []
    for comp in ctx.components():
        s = ctx.start(comp, cfg.start_policy)
        seen = {s}
        order.append(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in sorted(ctx.adj[v] - seen, key=ctx.key):
                seen.add(w)
                order.append(w)
                queue.append(w)
    return ctx.result(order, cfg.reverse)


def king(g: OrderedGraph, cfg: OrderingConfig | None = None) -> Permutation:
    """King's ordering: always number the candidate that grows the front least.

    Candidates are unnumbered vertices adjacent to numbered ones; a
    candidate's cost is the number of its neighbours that are neither
    numbered nor already candidates.
    """
    cfg = cfg or OrderingConfig("king")
    ctx = _Ctx(g)
    order = []
    for comp in ctx.components():
        s = ctx.start(comp, cfg.start_policy)
        numbered = {s}
        order.append(s)
        cand = set(ctx.adj[s])
        while cand:
            def cost(c):
                return (len(ctx.adj[c] - numbered - cand), ctx.deg[c], ctx.pos[c])

            c = min(cand, key=cost)
            cand.remove(c)
            numbered.add(c)
            order.append(c)
            cand |= ctx.adj[c] - numbered
    return ctx.result(order, cfg.reverse)


INACTIVE, PREACTIVE, ACTIVE, POSTACTIVE = range(4)


def sloan(g: OrderedGraph, cfg: OrderingConfig | None = None) -> Permutation:
    """Sloan's profile and wavefront reducing ordering.

    Priority of a vertex is ``W1 * dist(v, end) - W2 * (current degree + 1)``
    where the current degree drops as neighbours become active; the highest
    priority eligible vertex is numbered next.
    """
    cfg = cfg or OrderingConfig("sloan")
    w_dist, w_deg = cfg.sloan_weights
    ctx = _Ctx(g)
    order = []
    for comp in ctx.components():
        seed = ctx.min_degree(comp)
        if cfg.start_policy == "pseudo-peripheral":
            s, e = ctx.pseudo_peripheral_pair(seed)
        else:
            s = seed
            e = ctx.min_degree(ctx.levels(s)[-1])
        dist = {}
        for d, level in enumerate(ctx.levels(e)):
            for v in level:
                dist[v] = d
        prio = {v: w_dist * dist[v] - w_deg * (ctx.deg[v] + 1) for v in comp}
        status = dict.fromkeys(comp, INACTIVE)
        heap = []

        def push(v):
            heapq.heappush(heap, (-prio[v], ctx.pos[v], v))

        status[s] = PREACTIVE
        push(s)
        while heap:
            p, _, v = heapq.heappop(heap)
            if status[v] in (POSTACTIVE, INACTIVE) or -p != prio[v]:
                continue  # stale entry
            if status[v] == PREACTIVE:
                for w in ctx.adj[v]:
                    prio[w] += w_deg
                    if status[w] == INACTIVE:
                        status[w] = PREACTIVE
                    if status[w] in (PREACTIVE, ACTIVE):
                        push(w)
            status[v] = POSTACTIVE
            order.append(v)
            for w in ctx.adj[v]:
                if status[w] != PREACTIVE:
                    continue
                status[w] = ACTIVE
                prio[w] += w_deg
                push(w)
                for x in ctx.adj[w]:
                    if status[x] == POSTACTIVE:
                        continue
                    prio[x] += w_deg
                    if status[x] == INACTIVE:
                        status[x] = PREACTIVE
                    push(x)
    return ctx.result(order, cfg.reverse)


def _gps_diameter(ctx: _Ctx, comp):
    v = ctx.min_degree(comp)
    lv = ctx.levels(v)
    while True:
        last = sorted(lv[-1], key=ctx.key)
        shrunk, degs = [], set()
        for w in last:
            if ctx.deg[w] not in degs:
                degs.add(ctx.deg[w])
                shrunk.append(w)
        best = None
        for w in shrunk:
            lw = ctx.levels(w)
            if len(lw) > len(lv):
                v, lv = w, lw
                break
            width = max(len(level) for level in lw)
            if best is None or width < best[0]:
                best = (width, w, lw)
        else:
            return v, lv, best[1], best[2]


def gps(g: OrderedGraph, cfg: OrderingConfig | None = None) -> Permutation:
    """Gibbs-Poole-Stockmeyer: merge the level structures rooted at both ends
    of a pseudo-diameter into one narrow level structure, then number it level
    by level (by degree, then position, within a level)."""
    cfg = cfg or OrderingConfig("gps")
    ctx = _Ctx(g)
    order = []
    for comp in ctx.components():
        if len(comp) == 1:
            order.extend(comp)
            continue
        v, lv, u, lu = _gps_diameter(ctx, comp)
        k = len(lv) - 1
        from_v = {w: i for i, level in enumerate(lv) for w in level}
        from_u = {w: k - i for i, level in enumerate(lu) for w in level}
        level_of = {}
        width = [0] * (k + 1)
        for w in comp:
            if from_v[w] == from_u[w]:
                level_of[w] = from_v[w]
                width[from_v[w]] += 1
        rest = [w for w in comp if w not in level_of]
        rest_set = set(rest)
        parts, seen = [], set()
        for w in rest:
            if w in seen:
                continue
            part, stack = [], [w]
            seen.add(w)
            while stack:
                x = stack.pop()
                part.append(x)
                for y in ctx.adj[x]:
                    if y in rest_set and y not in seen:
                        seen.add(y)
                        stack.append(y)
            parts.append(part)
        parts.sort(key=lambda p: (-len(p), min(ctx.pos[x] for x in p)))
        v_narrower = max(len(level) for level in lv) <= max(len(level) for level in lu)
        for part in parts:
            hv, hu = _gps_growth(part, from_v, width), _gps_growth(part, from_u, width)
            use_v = hv < hu or (hv == hu and v_narrower)
            chosen = from_v if use_v else from_u
            for x in part:
                level_of[x] = chosen[x]
                width[chosen[x]] += 1
        levels = [[] for _ in range(k + 1)]
        for w in comp:
            levels[level_of[w]].append(w)
        if ctx.deg[u] < ctx.deg[v]:
            levels.reverse()
        for level in levels:
            order.extend(sorted(level, key=ctx.key))
    return ctx.result(order, cfg.reverse)


def _gps_growth(part, assign, width):
    extra = {}
    for x in part:
        extra[assign[x]] = extra.get(assign[x], 0) + 1
    return max(width[lvl] + c for lvl, c in extra.items())


_DISPATCH = {"cuthill-mckee": cuthill_mckee, "king": king, "sloan": sloan, "gps": gps}


def order_graph(g: OrderedGraph, cfg: OrderingConfig) -> Permutation:
    """Run the configured algorithm on ``g`` as given (no total graph step)."""
    return _DISPATCH[cfg.algorithm](g, cfg)


# ---------------------------------------------------------------------------
# pipeline

Flip = Literal["none", "horizontal", "vertical"]


@dataclass(frozen=True)
class Reordering:
    """Result of the reordering pipeline.

    ``graph`` is the reordered totally ordered graph (the total graph when
    one was built) and ``split`` the row/column permutation, flip applied.
    """

    graph: OrderedGraph
    split: SplitPermutation


def reorder(bg: BipartiteGraph, cfg: OrderingConfig, flip: Flip = "none") -> Reordering:
    g = symmetrize(bg)
    if cfg.use_total_graph:
        g = total_graph(g)
    perm = order_graph(g, cfg)
    permuted = permute(g.order, perm)
    sp = split_permutation(permuted, bg.rows, bg.cols)
    if flip in ("horizontal", "h", "hf"):
        sp = flip_horizontal(sp)
    elif flip in ("vertical", "v", "vf"):
        sp = flip_vertical(sp)
    elif flip not in ("none", None):
        raise ValueError(f"unknown flip {flip!r}")
    return Reordering(g.with_order(permuted), sp)


def reorder_pipeline(bg: BipartiteGraph, cfg: OrderingConfig, flip: Flip = "none") -> SplitPermutation:
    """Symmetrize, optionally build the total graph, order, split and flip."""
    return reorder(bg, cfg, flip).split

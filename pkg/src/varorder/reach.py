"""Symbolic reachability of 1-safe nets on list decision diagrams.

Each transition gets a *short* relation over only the places it writes; the
relational product copies all other variables unchanged.  Three fixpoint
strategies are offered (``bfs``, ``chaining`` and ``sat-like``), and the
number of live diagram nodes is sampled after every relational product and
every union to obtain the peak node count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .graph import Permutation
from .ldd import FALSE, LddStore
from .petri import PetriNet, SafetyViolation

STRATEGIES = ("bfs", "chaining", "sat-like")


@dataclass(frozen=True)
class ShortRelation:
    """Transition relation projected onto its write-dependent places.

    ``levels`` are the zero-based variable indices of ``places`` in the
    current variable order, ascending.  ``tuples`` pairs a current assignment
    of those places with the next one.  ``overflow`` lists partial current
    assignments (``None`` = any value) under which firing would put a second
    token in a place.
    """

    transition: str
    places: tuple[str, ...]
    levels: tuple[int, ...]
    tuples: frozenset
    overflow: tuple = ()


def build_relations(net: PetriNet, order: Permutation | None = None) -> list[ShortRelation]:
    """One short relation per transition, in net order.

    Input places must hold a token; output-only places are written blindly
    (their current value is unconstrained).  After firing, input-only places
    are empty and all output places are marked.
    """
    places = order.apply(net.places) if order is not None else net.places
    level_of = {p: k for k, p in enumerate(places)}
    rels = []
    for t in net.transitions:
        pre, post = net.pre[t], net.post[t]
        deps = sorted(pre | post, key=level_of.__getitem__)
        choices = [(1,) if p in pre else (0, 1) for p in deps]
        nxt = tuple(1 if p in post else 0 for p in deps)
        tuples = frozenset((cur, nxt) for cur in product(*choices))
        overflow = []
        for k, p in enumerate(deps):
            if p in post and p not in pre:
                overflow.append(tuple(1 if (q in pre or j == k) else None for j, q in enumerate(deps)))
        rels.append(ShortRelation(t, tuple(deps), tuple(level_of[p] for p in deps), tuples, tuple(overflow)))
    return rels


def relprod(store: LddStore, states: int, rel: ShortRelation) -> int:
    """Image of ``states`` under ``rel``; raises :class:`SafetyViolation`."""
    if states == FALSE:
        return FALSE
    levels = rel.levels
    depth = len(levels)
    if depth == 0:
        return states  # no dependencies: identity
    # overflow patterns ride along as entries without a next assignment
    entries = sorted(rel.tuples) + [(pattern, None) for pattern in rel.overflow]
    # results for unchanged sub-diagrams are reused across calls
    memo = store.op_cache.setdefault(("relprod", rel), {})

    value_of, down_of, right_of = store.value, store.down, store.right
    node, union = store.node, store.union

    def go(n, level, k, cands):
        if n == FALSE:
            return FALSE
        if k == depth:
            if entries[cands[-1]][1] is None:
                raise SafetyViolation(f"transition {rel.transition} would put a second token in a place")
            return n
        key = (n, k, cands)
        res = memo.get(key)
        if res is not None:
            return res
        if level < levels[k]:
            pairs = []
            while n != FALSE:
                d = go(down_of[n], level + 1, k, cands)
                if d != FALSE:
                    pairs.append((value_of[n], d))
                n = right_of[n]
            res = FALSE
            for value, d in reversed(pairs):
                res = node(value, d, res)
        else:
            buckets = {}
            while n != FALSE:
                value, down = value_of[n], down_of[n]
                by_next, checks = {}, []
                for i in cands:
                    cur, nxt = entries[i]
                    if cur[k] is None or cur[k] == value:
                        if nxt is None:
                            checks.append(i)
                        else:
                            by_next.setdefault(nxt[k], []).append(i)
                if checks and not by_next:
                    go(down, level + 1, k + 1, tuple(checks))
                for nv, idxs in by_next.items():
                    d = go(down, level + 1, k + 1, tuple(idxs + checks))
                    if d != FALSE:
                        buckets[nv] = union(buckets.get(nv, FALSE), d)
                n = right_of[n]
            res = store.make_list(sorted(buckets.items()))
        memo[key] = res
        return res

    return go(states, 0, 0, tuple(range(len(entries))))


@dataclass(frozen=True)
class ReachConfig:
    strategy: str = "bfs"
    sat_granularity: int = 10
    variable_order: Permutation | None = None
    transition_order: Permutation | None = None
    max_nodes: int | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.sat_granularity < 1:
            raise ValueError("sat granularity must be at least 1")


@dataclass(frozen=True)
class ReachResult:
    state_count: int
    final_node_count: int
    peak_node_count: int
    iterations: int
    places: tuple = field(default=(), repr=False)
    root: int = field(default=FALSE, repr=False, compare=False)
    store: LddStore | None = field(default=None, repr=False, compare=False)

    def markings(self) -> set[frozenset]:
        """Reachable markings as sets of marked places (enumerates every state)."""
        return {frozenset(p for p, x in zip(self.places, vec) if x) for vec in self.store.vectors(self.root)}

    def format(self) -> str:
        return (f"states {self.state_count}\nfinal_nodes {self.final_node_count}\n"
                f"peak_nodes {self.peak_node_count}\niterations {self.iterations}\n")


class NodeLimitExceeded(RuntimeError):
    """Live node count passed ``ReachConfig.max_nodes``; ``peak`` is what was seen."""

    def __init__(self, peak: int):
        super().__init__(f"live decision diagram nodes exceeded the limit ({peak} seen)")
        self.peak = peak


class _Peak:
    """Tracks roots currently held by the algorithm and the live-node maximum."""

    def __init__(self, store: LddStore, limit: int | None):
        self.store = store
        self.limit = limit
        self.held: list[int] = []
        self.peak = 0
        self._seen: dict[frozenset, int] = {}
        self._held_key: tuple = ()
        self._held_nodes: set[int] = set()

    def sample(self, *temps: int) -> None:
        roots = frozenset(self.held).union(temps)
        live = self._seen.get(roots)
        if live is None:
            if len(self._seen) > 4096:
                self._seen.clear()
            # held roots change rarely, so their closure is kept and only
            # the nodes private to the temporaries are walked
            held = tuple(self.held)
            if held != self._held_key:
                self._held_key, self._held_nodes = held, self.store.reachable(held)
            extra = self.store.reachable(temps, self._held_nodes)
            live = self._seen[roots] = len(self._held_nodes) + len(extra)
        if live > self.peak:
            self.peak = live
            if self.limit is not None and live > self.limit:
                raise NodeLimitExceeded(live)


def sat_groups(rels: list[ShortRelation], granularity: int) -> list[list[ShortRelation]]:
    """Sort relations by their deepest variable and cut into groups of ``granularity``.

    The last group touches the deepest variables.  The sort is stable, so
    relations with equal depth keep their given order.
    """
    ordered = sorted(rels, key=lambda r: max(r.levels, default=-1))
    return [ordered[i:i + granularity] for i in range(0, len(ordered), granularity)]


def reach(net: PetriNet, cfg: ReachConfig | None = None) -> ReachResult:
    """Least fixpoint of the configured strategy from the initial marking."""
    cfg = cfg or ReachConfig()
    places = cfg.variable_order.apply(net.places) if cfg.variable_order is not None else net.places
    rels = build_relations(net, cfg.variable_order)
    if cfg.transition_order is not None:
        rels = list(cfg.transition_order.apply(rels))

    store = LddStore(len(places))
    peak = _Peak(store, cfg.max_nodes)
    init = store.from_vectors([tuple(1 if p in net.marking else 0 for p in places)])
    peak.sample(init)

    def step(states: int, rel: ShortRelation) -> int:
        # t= : image united with its argument
        img = relprod(store, states, rel)
        peak.sample(states, img)
        res = store.union(states, img)
        peak.sample(res)
        return res

    def chain(states: int, group) -> int:
        for rel in group:
            states = step(states, rel)
        return states

    iterations = 0
    states = init
    if cfg.strategy == "bfs":
        while True:
            iterations += 1
            peak.held.append(states)
            new = states
            for rel in rels:
                img = relprod(store, states, rel)
                peak.sample(new, img)
                new = store.union(new, img)
                peak.sample(new)
            peak.held.pop()
            if new == states:
                break
            states = new
    elif cfg.strategy == "chaining":
        while True:
            iterations += 1
            peak.held.append(states)
            new = chain(states, rels)
            peak.held.pop()
            if new == states:
                break
            states = new
    else:
        groups = sat_groups(rels, cfg.sat_granularity)
        last = len(groups) - 1

        def saturate(k: int, states: int) -> int:
            # ((g_last . g_last-1)+ . ... . g_0)+ ; the outermost level is always closed
            nonlocal iterations
            if k == last and k != 0:
                return chain(states, groups[k])
            while True:
                if k == 0:
                    iterations += 1
                peak.held.append(states)
                inner = saturate(k + 1, states) if k < last else states
                new = chain(inner, groups[k])
                peak.held.pop()
                if new == states:
                    return states
                states = new

        if groups:
            states = saturate(0, states)
        else:
            iterations = 1

    peak.sample(states)
    return ReachResult(
        state_count=store.count(states),
        final_node_count=store.node_count(states),
        peak_node_count=peak.peak,
        iterations=iterations,
        places=tuple(places),
        root=states,
        store=store,
    )

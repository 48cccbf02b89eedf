"""Hash-consed list decision diagrams over fixed-length integer vectors.

A node is a ``(value, down, right)`` triple held in a unique table, so
structurally equal nodes are the same integer id and set equality is id
equality.  ``down`` leads to the next variable, ``right`` to the next
(larger) value for the same variable.  Ids 0 and 1 are the false and true
terminals.  Diagrams are quasi-reduced: every path to true visits every
variable.
"""
from __future__ import annotations

import sys
from collections.abc import Iterable, Iterator

FALSE = 0
TRUE = 1


def _ensure_recursion(depth: int) -> None:
    need = 4 * depth + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


class LddStore:
    """Unique table plus operation caches for one family of diagrams."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.value = [-1, -1]
        self.down = [FALSE, TRUE]
        self.right = [FALSE, FALSE]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._union_cache: dict[tuple[int, int], int] = {}
        self._count_cache: dict[int, int] = {FALSE: 0, TRUE: 1}
        self.op_cache: dict = {}  # per-operation memo tables owned by callers
        _ensure_recursion(nvars)

    def __len__(self):
        """Number of non-terminal nodes ever created."""
        return len(self.value) - 2

    def node(self, value: int, down: int, right: int = FALSE) -> int:
        if down == FALSE:
            return right
        key = (value, down, right)
        n = self._unique.get(key)
        if n is None:
            n = len(self.value)
            self.value.append(value)
            self.down.append(down)
            self.right.append(right)
            self._unique[key] = n
        return n

    def make_list(self, pairs: Iterable[tuple[int, int]]) -> int:
        """Sibling list from ``(value, down)`` pairs with ascending values."""
        n = FALSE
        for value, down in reversed(list(pairs)):
            n = self.node(value, down, n)
        return n

    def siblings(self, n: int) -> Iterator[tuple[int, int]]:
        while n != FALSE:
            yield self.value[n], self.down[n]
            n = self.right[n]

    # -- construction -----------------------------------------------------

    def from_vectors(self, vectors: Iterable[tuple[int, ...]]) -> int:
        vecs = sorted(set(map(tuple, vectors)))
        for v in vecs:
            if len(v) != self.nvars:
                raise ValueError(f"vector {v} does not have {self.nvars} entries")
        if not vecs:
            return FALSE
        return self._build(vecs, 0)

    def _build(self, vecs: list, level: int) -> int:
        if level == self.nvars:
            return TRUE
        pairs, start = [], 0
        for i in range(1, len(vecs) + 1):
            if i == len(vecs) or vecs[i][level] != vecs[start][level]:
                pairs.append((vecs[start][level], self._build(vecs[start:i], level + 1)))
                start = i
        return self.make_list(pairs)

    # -- set operations ---------------------------------------------------

    def union(self, a: int, b: int) -> int:
        if a == b or b == FALSE:
            return a
        if a == FALSE:
            return b
        if a > b:
            a, b = b, a
        key = (a, b)
        res = self._union_cache.get(key)
        if res is not None:
            return res
        va, vb = self.value[a], self.value[b]
        if va < vb:
            res = self.node(va, self.down[a], self.union(self.right[a], b))
        elif vb < va:
            res = self.node(vb, self.down[b], self.union(a, self.right[b]))
        else:
            res = self.node(va, self.union(self.down[a], self.down[b]), self.union(self.right[a], self.right[b]))
        self._union_cache[key] = res
        return res

    # -- inspection -------------------------------------------------------

    def count(self, n: int) -> int:
        """Number of vectors in the set rooted at ``n``."""
        c = self._count_cache.get(n)
        if c is None:
            c = self.count(self.down[n]) + self.count(self.right[n])
            self._count_cache[n] = c
        return c

    def node_count(self, *roots: int) -> int:
        """Distinct non-terminal nodes reachable from any of ``roots``."""
        return len(self.reachable(roots))

    def reachable(self, roots: Iterable[int], known: set | frozenset = frozenset()) -> set[int]:
        """Non-terminal nodes reachable from ``roots`` without entering ``known``."""
        seen = set()
        stack = [r for r in roots if r > TRUE and r not in known]
        down, right = self.down, self.right
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            d, r = down[n], right[n]
            if d > TRUE and d not in seen and d not in known:
                stack.append(d)
            if r > TRUE and r not in seen and r not in known:
                stack.append(r)
        return seen

    def vectors(self, n: int) -> Iterator[tuple[int, ...]]:
        if n == TRUE:
            yield ()
            return
        for value, down in self.siblings(n):
            for rest in self.vectors(down):
                yield (value,) + rest


def ldd_count(store: LddStore, root: int) -> int:
    return store.count(root)


def ldd_node_count(store: LddStore, root: int) -> int:
    return store.node_count(root)

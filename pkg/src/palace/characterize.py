"""Solvability by structure, and the leaf-reduction G -> G-minus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import NotATree, Palace

SOLVABLE = "solvable"
HAS_CYCLE = "has_cycle"
CONTAINS_T = "contains_t"


@dataclass(frozen=True)
class SpiderWitness:
    """A copy of the forbidden spider: center plus branches (a_i, b_i, c_i)."""

    center: str
    branches: tuple[tuple[str, str, str], ...]

    def vertices(self) -> list[str]:
        return [self.center] + [v for branch in self.branches for v in branch]

    def check(self, g: Palace) -> None:
        names = self.vertices()
        assert len(set(names)) == 10, names
        for a, b, c in self.branches:
            assert a in g.adjacency[self.center]
            assert b in g.adjacency[a] and c in g.adjacency[b]


@dataclass(frozen=True)
class SolvabilityVerdict:
    kind: str
    cycle: Optional[tuple[str, ...]] = None
    spider: Optional[SpiderWitness] = None

    @property
    def solvable(self) -> bool:
        return self.kind == SOLVABLE

    def to_json(self) -> dict:
        out = {"verdict": self.kind}
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        if self.spider is not None:
            out["spider"] = {"center": self.spider.center,
                             "branches": [list(b) for b in self.spider.branches]}
        return out


@dataclass(frozen=True)
class ReductionReport:
    removed: tuple[tuple[str, str], ...]
    result: Palace

    @property
    def m(self) -> int:
        return len(self.result)


def _rooted(g: Palace, root: str):
    order, parent = [root], {root: None}
    for u in order:
        for w in g.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    return order, parent


def branch_depths(g: Palace) -> dict[str, dict[str, int]]:
    """For each vertex v and neighbor u: the farthest distance from v inside
    the component of g - v containing u.

    Two-pass rerooting, linear in the size of the tree.
    """
    if not g.is_tree():
        raise NotATree("branch depths are defined on trees")
    order, parent = _rooted(g, g.vertices[0])
    down = {v: 0 for v in g.vertices}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            down[p] = max(down[p], down[v] + 1)
    up = {order[0]: 0}
    for v in order:
        kids = [w for w in g.adjacency[v] if w != parent[v]]
        # best two child heights, for excluding one child at a time
        heights = sorted((down[w] + 1 for w in kids), reverse=True)[:2]
        heights += [0, 0]
        for w in kids:
            sibling = heights[1] if down[w] + 1 == heights[0] else heights[0]
            up[w] = 1 + max(up[v], sibling)
    depths: dict[str, dict[str, int]] = {}
    for v in g.vertices:
        depths[v] = {}
        for w in g.adjacency[v]:
            depths[v][w] = up[v] if w == parent[v] else down[w] + 1
    return depths


def _least_leg(g: Palace, center: str, a: str) -> tuple[str, str, str]:
    for b in g.neighbors(a):
        if b == center:
            continue
        for c in g.neighbors(b):
            if c != a:
                return (a, b, c)
    raise AssertionError("branch depth promised a vertex at distance 3")


def contains_forbidden_spider(g: Palace) -> Optional[SpiderWitness]:
    depths = branch_depths(g)
    for v in g.vertices:
        deep = [u for u in g.neighbors(v) if depths[v][u] >= 3]
        if len(deep) >= 3:
            legs = tuple(_least_leg(g, v, a) for a in deep[:3])
            return SpiderWitness(v, legs)
    return None


def _normalize_cycle(g: Palace, cycle: list[str]) -> tuple[str, ...]:
    key = g.index.__getitem__
    i = min(range(len(cycle)), key=lambda j: key(cycle[j]))
    rotated = cycle[i:] + cycle[:i]
    if key(rotated[-1]) < key(rotated[1]):
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def find_cycle(g: Palace) -> Optional[tuple[str, ...]]:
    """A fundamental cycle from a depth-first spanning tree, or None."""
    parent: dict[str, Optional[str]] = {}
    depth: dict[str, int] = {}
    root = g.vertices[0]
    parent[root], depth[root] = None, 0
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if w == parent[u]:
                continue
            if w in depth:
                # back edge u-w with w an ancestor of u
                cycle = [u]
                while cycle[-1] != w:
                    cycle.append(parent[cycle[-1]])
                return _normalize_cycle(g, cycle)
            parent[w], depth[w] = u, depth[u] + 1
            stack.append((w, iter(g.neighbors(w))))
            break
        else:
            stack.pop()
    return None


def is_solvable(g: Palace) -> SolvabilityVerdict:
    if not g.is_tree():
        return SolvabilityVerdict(HAS_CYCLE, cycle=find_cycle(g))
    spider = contains_forbidden_spider(g)
    if spider is not None:
        return SolvabilityVerdict(CONTAINS_T, spider=spider)
    return SolvabilityVerdict(SOLVABLE)


def removable_leaves(g: Palace) -> list[str]:
    """Leaves whose neighbor has degree at least 3, in vertex order."""
    out = []
    for v in g.vertices:
        if g.degree(v) == 1:
            (u,) = g.adjacency[v]
            if g.degree(u) >= 3:
                out.append(v)
    return out


def reduce(g: Palace, order=None) -> ReductionReport:
    """Strip removable leaves one at a time until none remain.

    By default the lowest-ordered removable leaf goes first.  `order`, if
    given, is a callable picking one leaf from the current list; tests use it
    to try other removal orders.
    """
    removed = []
    while True:
        leaves = removable_leaves(g)
        if not leaves:
            return ReductionReport(tuple(removed), g)
        leaf = leaves[0] if order is None else order(leaves)
        (nbr,) = g.adjacency[leaf]
        removed.append((leaf, nbr))
        g = g.without(leaf)

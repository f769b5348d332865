"""Linear searches, linear strategies, and the closed-form optimum.

A linear search walks the interior of a longest path P from its second vertex
to its second-to-last, stepping off P to each non-leaf neighbor once and
straight back.  Run it forward and then backwards (repeating the turning
vertex once) and every princess is caught: the repeat flips the prince's
colour parity relative to the day count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import characterize
from .engine import verify_strategy
from .graph import Palace, PathDecomposition, bipartition, longest_path
from .walks import ProbeSequence


class Unsolvable(ValueError):
    def __init__(self, verdict):
        super().__init__(f"palace is not solvable ({verdict.kind})")
        self.verdict = verdict


class PreconditionError(ValueError):
    pass


def _require_solvable(g: Palace) -> None:
    verdict = characterize.is_solvable(g)
    if not verdict.solvable:
        raise Unsolvable(verdict)


def linear_search(g: Palace, p: Optional[PathDecomposition] = None) -> ProbeSequence:
    _require_solvable(g)
    if len(g) < 3:
        raise PreconditionError("a linear search needs at least 3 vertices")
    path = (p or longest_path(g)).path
    on_path = set(path)
    for v in g.vertices:
        if v not in on_path and g.degree(v) > 1 and not g.adjacency[v] & on_path:
            raise AssertionError(f"non-leaf vertex {v!r} is two or more steps from the longest path")
    probes = []
    for v in path[1:-1]:
        probes.append(v)
        for w in g.neighbors(v):
            if w not in on_path and g.degree(w) > 1:
                probes += [w, v]
    return ProbeSequence(probes)


def linear_strategy(g: Palace, p: Optional[PathDecomposition] = None) -> ProbeSequence:
    """Forward linear search, then the same walk reversed; checked before return."""
    forward = linear_search(g, p).probes
    strategy = ProbeSequence(forward + forward[::-1])
    result = verify_strategy(g, strategy)
    if not result.caught:
        raise AssertionError(f"linear strategy failed; escape walk {result.walk.rooms}")
    return strategy


def optimal_length(g: Palace) -> int:
    _require_solvable(g)
    if len(g) <= 2:
        return len(g)
    return 2 * characterize.reduce(g).m - 4


def prince_parities(g: Palace, probes) -> set[int]:
    """Values of (day + colour of probed vertex) mod 2 over the sequence."""
    color = bipartition(g)
    if color is None:
        raise ValueError("parity is defined on bipartite palaces only")
    return {(day + color[v]) % 2 for day, v in enumerate(probes, start=1)}


@dataclass(frozen=True)
class VertexPartition:
    """Leaf-neighbors (A), leaves (B), and the rest (Q) of a reduced tree."""

    A: frozenset[str]
    B: frozenset[str]
    Q: frozenset[str]


def _require_reduced(g: Palace) -> None:
    _require_solvable(g)
    if characterize.removable_leaves(g):
        raise PreconditionError("palace is not reduced")
    if len(g) <= 4:
        raise PreconditionError("partition bound needs more than 4 vertices")


def vertex_partition(g: Palace) -> VertexPartition:
    _require_reduced(g)
    leaves = frozenset(g.leaves())
    nearby = frozenset(w for v in leaves for w in g.adjacency[v])
    rest = frozenset(g.vertices) - leaves - nearby
    return VertexPartition(nearby, leaves, rest)


def lower_bound(g: Palace) -> int:
    """Two probes per leaf-neighbor plus 2d(v) - 2 per remaining non-leaf."""
    part = vertex_partition(g)
    return 2 * len(part.A) + sum(2 * g.degree(v) - 2 for v in part.Q)


def longest_paths(g: Palace) -> list[tuple[str, ...]]:
    """Every longest path of a tree, each in both orientations."""
    best, out = -1, []
    for s in g.leaves() or list(g.vertices):
        parent = {s: None}
        order = [s]
        for u in order:
            for w in g.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        dist = g.distances(s)
        for t in order:
            if dist[t] < best:
                continue
            if dist[t] > best:
                best, out = dist[t], []
            path = [t]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            out.append(tuple(reversed(path)))
    return out


def is_linear_search(g: Palace, probes, path: tuple[str, ...]) -> bool:
    """Whether `probes` is a linear search along `path`."""
    probes = list(probes)
    if len(path) < 3 or not probes or probes[0] != path[1] or probes[-1] != path[-2]:
        return False
    pos = {v: i for i, v in enumerate(path)}
    if any(b not in g.adjacency[a] for a, b in zip(probes, probes[1:])):
        return False
    off = [v for v in probes if v not in pos]
    if len(off) != len(set(off)):
        return False
    if any(a not in pos and b not in pos for a, b in zip(probes, probes[1:])):
        return False
    along = [pos[v] for v in probes if v in pos]
    if along != sorted(along):
        return False
    return {v for v in g.vertices if g.degree(v) > 1} <= set(probes)


def is_linear_strategy(g: Palace, probes) -> bool:
    """A linear search followed by a linear search of the opposite parity."""
    probes = list(probes.probes if isinstance(probes, ProbeSequence) else probes)
    color = bipartition(g)
    if color is None or len(g) < 3:
        return False
    paths = longest_paths(g)
    for cut in range(1, len(probes)):
        head, tail = probes[:cut], probes[cut:]
        if (1 + color[head[0]]) % 2 == (cut + 1 + color[tail[0]]) % 2:
            continue
        if any(is_linear_search(g, head, p) for p in paths) and \
                any(is_linear_search(g, tail, p) for p in paths):
            return True
    return False

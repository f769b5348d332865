"""Independent brute-force oracles.

Nothing here touches candidate sets: walks and probe sequences are
enumerated explicitly.
"""

from __future__ import annotations

import itertools

import networkx as nx

from palace.graph import Palace


def surviving_walk(g: Palace, probes) -> tuple | None:
    """First walk (depth-first, vertex order) dodging every probe, or None."""
    probes = list(probes)
    if not probes:
        return ()
    walk = []

    def extend(d):
        if d == len(probes):
            return True
        options = g.vertices if d == 0 else g.neighbors(walk[-1])
        for v in options:
            if v != probes[d]:
                walk.append(v)
                if extend(d + 1):
                    return True
                walk.pop()
        return False

    return tuple(walk) if extend(0) else None


def all_walks(g: Palace, length: int):
    def grow(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for w in (g.vertices if not prefix else g.neighbors(prefix[-1])):
            yield from grow(prefix + [w])
    yield from grow([])


def wins(g: Palace, probes) -> bool:
    return surviving_walk(g, probes) is None


def brute_min_days(g: Palace, max_days: int):
    """Shortest winning sequence by trying every sequence in order of length."""
    for n in range(1, max_days + 1):
        for seq in itertools.product(g.vertices, repeat=n):
            if wins(g, seq):
                return n, seq
    return None


def brute_winning(g: Palace, n: int) -> set:
    return {seq for seq in itertools.product(g.vertices, repeat=n) if wins(g, seq)}


def all_simple_paths_max(g: Palace) -> int:
    best = 0
    for s in g.vertices:
        stack = [(s, (s,))]
        while stack:
            u, path = stack.pop()
            best = max(best, len(path) - 1)
            for w in g.adjacency[u]:
                if w not in path:
                    stack.append((w, path + (w,)))
    return best


def to_nx(g: Palace) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges())
    return G


def from_nx(G) -> Palace:
    return Palace.from_edges(((str(u), str(v)) for u, v in G.edges()),
                             vertices=[str(v) for v in G.nodes()])


def isomorphic(g: Palace, h: Palace) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(h))

"""Named palaces and seeded random generators.

Random trees are decoded from Prüfer sequences drawn with ``random.Random(seed)``:
the sequence is ``[rng.randrange(n) for _ in range(n - 2)]`` over labels
``"0" .. str(n - 1)``.  The same seed gives the same tree within this package;
no compatibility with other generators is promised.
"""

from __future__ import annotations

import heapq
import random
from typing import Sequence

from .graph import Palace

_LEG_NAMES = "abcdefghijklmnopqrstuvwxyz"


def path_palace(n: int) -> Palace:
    if n == 1:
        return Palace.from_edges([], vertices=["0"])
    return Palace.from_edges((str(i), str(i + 1)) for i in range(n - 1))


def cycle_palace(n: int) -> Palace:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Palace.from_edges((str(i), str((i + 1) % n)) for i in range(n))


def spider_palace(legs: Sequence[int], center: str = "x") -> Palace:
    """Center `center` with one path per entry of `legs`.

    The vertex at depth j on leg i is named by the j-th letter and i, so the
    legs of the (3, 3, 3) spider are a1-b1-c1, a2-b2-c2, a3-b3-c3.
    """
    edges = []
    for i, length in enumerate(legs, start=1):
        prev = center
        for depth in range(length):
            v = f"{_LEG_NAMES[depth]}{i}"
            edges.append((prev, v))
            prev = v
    return Palace.from_edges(edges, vertices=[center])


def forbidden_tree() -> Palace:
    """The 10-vertex spider with three legs of three vertices."""
    return spider_palace((3, 3, 3))


def star_palace(k: int) -> Palace:
    """Center x with k paths of length 2 (x-a_i-b_i)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return spider_palace((2,) * k)


def figure2_palace() -> Palace:
    """A solvable palace whose longest path 0..7 has length 7.

    Off-path vertices 2a, 3a, 5a, 5a' each carry one pendant leaf; vertices 2
    and 5 carry one extra leaf each; vertex 6 has four leaves in total
    (7 and three more).
    """
    path = [(str(i), str(i + 1)) for i in range(7)]
    branches = [("2", "2a"), ("3", "3a"), ("5", "5a"), ("5", "5a'")]
    pendants = [(b, b + "-leaf") for _, b in branches]
    extra = [("2", "2-leaf"), ("5", "5-leaf")] + [("6", f"6-leaf{i}") for i in (1, 2, 3)]
    return Palace.from_edges(path + branches + pendants + extra)


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on range(n) with Prüfer sequence `seq`."""
    if n < 2:
        return []
    if len(seq) != n - 2:
        raise ValueError("Prüfer sequence must have length n - 2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return edges


def random_tree(n: int, seed=None) -> Palace:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n == 1:
        return path_palace(1)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    edges = prufer_decode(seq, n)
    return Palace.from_edges(((str(u), str(v)) for u, v in edges),
                             vertices=(str(i) for i in range(n)))


def random_connected_graph(n: int, extra_edges: int, seed=None) -> Palace:
    """A random spanning tree plus up to `extra_edges` random chords."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    tree = random_tree(n, rng)
    edges = set(tree.edges())
    missing = [(str(u), str(v)) for u in range(n) for v in range(u + 1, n)]
    missing = [e for e in missing if tuple(sorted(e)) not in edges]
    rng.shuffle(missing)
    chords = missing[:extra_edges]
    return Palace.from_edges(list(edges) + chords, vertices=tree.vertices)

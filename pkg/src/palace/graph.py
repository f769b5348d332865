"""Palace graphs: parsing, validation, and tree primitives.

A palace is a finite connected simple undirected graph whose vertices are
opaque string labels.  Vertex order is first-appearance order in the input
and is used for every deterministic tie-break in the package.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional


class PalaceError(ValueError):
    """Base class for malformed palace input."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyInput(PalaceError):
    pass


class MalformedLine(PalaceError):
    pass


class SelfLoop(PalaceError):
    pass


class DuplicateEdge(PalaceError):
    pass


class Disconnected(PalaceError):
    pass


class NotATree(ValueError):
    pass


WHITE = 0
BLACK = 1


@dataclass(frozen=True)
class Palace:
    vertices: tuple[str, ...]
    adjacency: dict[str, frozenset[str]] = field(repr=False)
    index: dict[str, int] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]],
                   vertices: Iterable[str] = ()) -> "Palace":
        """Build and validate a palace from an edge iterable.

        Raises the same diagnostics as `parse_palace`, without line numbers.
        """
        order: list[str] = []
        adj: dict[str, set[str]] = {}

        def add(v):
            if v not in adj:
                adj[v] = set()
                order.append(v)

        for v in vertices:
            add(str(v))
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            add(u)
            add(v)
            if v in adj[u]:
                raise DuplicateEdge(f"duplicate edge {u!r}-{v!r}")
            adj[u].add(v)
            adj[v].add(u)
        if not order:
            raise EmptyInput("palace has no vertices")
        g = cls._build(order, adj)
        if not g.is_connected():
            raise Disconnected("palace is not connected")
        return g

    @classmethod
    def _build(cls, order, adj) -> "Palace":
        return cls(
            vertices=tuple(order),
            adjacency={v: frozenset(adj[v]) for v in order},
            index={v: i for i, v in enumerate(order)},
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edges())))

    def neighbors(self, v: str) -> list[str]:
        """Neighbors of `v` in vertex order."""
        return sorted(self.adjacency[v], key=self.index.__getitem__)

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[str, str]]:
        """Edges in canonical order: each pair lexicographically sorted, then the list."""
        out = set()
        for u in self.vertices:
            for v in self.adjacency[u]:
                out.add((u, v) if u < v else (v, u))
        return sorted(out)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2

    def leaves(self) -> list[str]:
        return [v for v in self.vertices if self.degree(v) == 1]

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return len(self.distances(self.vertices[0])) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.edge_count() == len(self.vertices) - 1

    def distances(self, source: str) -> dict[str, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def without(self, *removed: str) -> "Palace":
        """Induced subgraph on the remaining vertices, order preserved.

        Connectivity is not re-checked; callers remove leaves only.
        """
        gone = set(removed)
        order = [v for v in self.vertices if v not in gone]
        adj = {v: set(self.adjacency[v]) - gone for v in order}
        return Palace._build(order, adj)

    def relabel(self, mapping: dict[str, str]) -> "Palace":
        return Palace.from_edges(((mapping[u], mapping[v]) for u, v in self.edges()),
                                 vertices=(mapping[v] for v in self.vertices))


@dataclass(frozen=True)
class PathDecomposition:
    path: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.path) - 1


_COMMENT = "#"


def parse_palace(text: str) -> Palace:
    """Parse the edge-list format.

    One edge per line as two whitespace-separated tokens; blank lines and
    ``#`` comments are ignored; a line with a single token declares a vertex.
    """
    order: list[str] = []
    adj: dict[str, set[str]] = {}
    first_line: dict[str, int] = {}
    edge_lines: list[tuple[int, str, str]] = []

    def add(v, lineno):
        if v not in adj:
            adj[v] = set()
            order.append(v)
            first_line[v] = lineno

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT):
            continue
        tokens = line.split()
        if len(tokens) == 1:
            add(tokens[0], lineno)
            continue
        if len(tokens) != 2:
            raise MalformedLine(f"expected two vertex tokens, got {len(tokens)}", lineno)
        u, v = tokens
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}", lineno)
        add(u, lineno)
        add(v, lineno)
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge {u!r}-{v!r}", lineno)
        adj[u].add(v)
        adj[v].add(u)
        edge_lines.append((lineno, u, v))

    if not order:
        raise EmptyInput("no vertices in input")
    g = Palace._build(order, adj)
    reached = g.distances(order[0])
    if len(reached) != len(order):
        stray = next(v for v in order if v not in reached)
        raise Disconnected(f"vertex {stray!r} is not connected to {order[0]!r}",
                           first_line[stray])
    return g


def serialize_palace(g: Palace) -> str:
    for v in g.vertices:
        if not v or any(c.isspace() for c in v) or v.startswith(_COMMENT):
            raise ValueError(f"label {v!r} cannot be written in edge-list format")
    if len(g) == 1:
        return g.vertices[0] + "\n"
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def bipartition(g: Palace, anchor: Optional[str] = None) -> Optional[dict[str, int]]:
    """Two-colouring with `anchor` (default: first vertex) coloured WHITE.

    Returns None when the graph has an odd cycle.
    """
    start = g.vertices[0] if anchor is None else anchor
    color = {start: WHITE}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                return None
    return color


def _require_tree(g: Palace) -> None:
    if not g.is_tree():
        raise NotATree(f"palace with {len(g)} vertices and {g.edge_count()} edges is not a tree")


def _farthest(g: Palace, source: str) -> tuple[str, dict[str, Optional[str]]]:
    parent: dict[str, Optional[str]] = {source: None}
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    best = max(dist.values())
    far = min((v for v in dist if dist[v] == best), key=g.index.__getitem__)
    return far, parent


def longest_path(g: Palace) -> PathDecomposition:
    """Diameter path by double BFS.

    The first sweep starts at the first vertex; ties among farthest vertices go
    to the earliest in vertex order.  The path is oriented so that its first
    vertex precedes its last in vertex order.
    """
    _require_tree(g)
    end_a, _ = _farthest(g, g.vertices[0])
    end_b, parent = _farthest(g, end_a)
    path = [end_b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    if g.index[path[0]] > g.index[path[-1]]:
        path.reverse()
    return PathDecomposition(tuple(path))


def tree_centers(g: Palace) -> list[str]:
    """Centroid vertices (one or two) of a tree."""
    _require_tree(g)
    n = len(g)
    if n <= 2:
        return list(g.vertices)
    root = g.vertices[0]
    order, parent = [root], {root: None}
    for u in order:
        for w in g.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = {v: 1 for v in g.vertices}
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    best, out = n, []
    for v in g.vertices:
        heaviest = n - size[v]
        for w in g.adjacency[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, out = heaviest, [v]
        elif heaviest == best:
            out.append(v)
    return out


def _ahu(g: Palace, root: str) -> str:
    order, parent = [root], {root: None}
    for u in order:
        for w in g.adjacency[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    code: dict[str, str] = {}
    for v in reversed(order):
        kids = sorted(code[w] for w in g.adjacency[v] if w != parent[v])
        code[v] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_form(g: Palace) -> str:
    """AHU encoding rooted at the centroid; equal iff the trees are isomorphic."""
    return min(_ahu(g, c) for c in tree_centers(g))


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Palace, name: str = "palace") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {_dot_quote(v)};" for v in g.vertices]
    lines += [f"  {_dot_quote(u)} -- {_dot_quote(v)};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_ID = r'"((?:[^"\\]|\\.)*)"'
_DOT_NODE = re.compile(rf"^\s*{_DOT_ID}\s*;\s*$")
_DOT_EDGE = re.compile(rf"^\s*{_DOT_ID}\s*--\s*{_DOT_ID}\s*;\s*$")


def _dot_unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def from_dot(text: str) -> Palace:
    """Read back the subset of DOT that `to_dot` writes."""
    nodes, edges = [], []
    for line in text.splitlines():
        if m := _DOT_EDGE.match(line):
            edges.append((_dot_unquote(m.group(1)), _dot_unquote(m.group(2))))
        elif m := _DOT_NODE.match(line):
            nodes.append(_dot_unquote(m.group(1)))
    return Palace.from_edges(edges, vertices=nodes)

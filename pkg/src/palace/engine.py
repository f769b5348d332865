"""Game semantics on possibility sets.

The candidate set for a day is every room the princess could be in at noon
that day, before the probe, given that she dodged all earlier probes and moved
along an edge every night.  One day of play maps a candidate set S and a probe
x to N(S - {x}).  The prince has won once the set is empty.

Candidate sets are bit masks over vertex order.  The exact solver searches the
subset lattice breadth first with numpy arrays of masks and is capped at
`EXACT_VERTEX_CAP` vertices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph import Palace
from .walks import EscapeWalk, ProbeSequence, UnknownVertex

EXACT_VERTEX_CAP = 22
DEFAULT_STATE_LIMIT = 2_000_000
_CHUNK = 8


class CapExceeded(RuntimeError):
    pass


class NoEscape(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class Board:
    """Bit-mask view of a palace with chunked neighborhood tables."""

    def __init__(self, g: Palace):
        self.g = g
        self.n = len(g)
        self.full = (1 << self.n) - 1
        self.nbr = [0] * self.n
        for v, i in g.index.items():
            for w in g.adjacency[v]:
                self.nbr[i] |= 1 << g.index[w]
        self.chunks = max(1, -(-self.n // _CHUNK))
        self.tables = []
        for k in range(self.chunks):
            table = [0] * (1 << _CHUNK)
            for bits in range(1, 1 << _CHUNK):
                low = bits & -bits
                j = k * _CHUNK + low.bit_length() - 1
                table[bits] = table[bits ^ low] | (self.nbr[j] if j < self.n else 0)
            self.tables.append(table)
        self._np_tables = None

    def mask(self, vertices: Iterable[str]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.g.index[v]
        return m

    def members(self, m: int) -> list[str]:
        return [v for i, v in enumerate(self.g.vertices) if m >> i & 1]

    def neighborhood(self, m: int) -> int:
        out = 0
        k = 0
        while m:
            out |= self.tables[k][m & 0xFF]
            m >>= _CHUNK
            k += 1
        return out

    def step(self, m: int, x: int) -> int:
        return self.neighborhood(m & ~(1 << x))

    def step_many(self, masks: np.ndarray, x: int) -> np.ndarray:
        if self._np_tables is None:
            self._np_tables = [np.array(t, dtype=np.uint32) for t in self.tables]
        m = masks & np.uint32(~(1 << x) & 0xFFFFFFFF)
        out = self._np_tables[0][m & 0xFF]
        for k in range(1, self.chunks):
            out |= self._np_tables[k][(m >> np.uint32(_CHUNK * k)) & 0xFF]
        return out


def board_of(g: Palace) -> Board:
    """The cached Board of a palace (palaces are immutable)."""
    board = g.__dict__.get("_board")
    if board is None:
        board = g.__dict__["_board"] = Board(g)
    return board


def step(s: Iterable[str], probe: str, g: Palace) -> frozenset[str]:
    """Next day's candidates: survivors of the probe, moved one edge."""
    board = board_of(g)
    return frozenset(board.members(board.step(board.mask(s), g.index[probe])))


@dataclass(frozen=True)
class VerificationResult:
    caught: bool
    day: Optional[int] = None
    walk: Optional[EscapeWalk] = None

    def to_json(self) -> dict:
        if self.caught:
            return {"result": "caught", "day": self.day}
        return {"result": "escape", "witness": self.walk.to_json()}


def _as_sequence(probes) -> ProbeSequence:
    return probes if isinstance(probes, ProbeSequence) else ProbeSequence(probes)


def trace(g: Palace, probes) -> list[frozenset[str]]:
    """Candidate sets before each day's probe, plus the set after the last day."""
    probes = _as_sequence(probes)
    probes.check(g)
    board = board_of(g)
    s = board.full
    out = [frozenset(g.vertices)]
    for p in probes:
        s = board.step(s, g.index[p])
        out.append(frozenset(board.members(s)))
    return out


def _indices(g: Palace, probes) -> list[int]:
    try:
        return [g.index[p] for p in probes]
    except KeyError as exc:
        raise UnknownVertex(f"probe names unknown vertex {exc.args[0]!r}") from None


def verify_strategy(g: Palace, probes) -> VerificationResult:
    """Does the probe sequence catch every princess?

    Caught carries the first day after which no candidate remains, which is
    the latest day any princess can hold out.
    """
    xs = _indices(g, probes)
    board = board_of(g)
    s = board.full
    masks = []
    for day, x in enumerate(xs, start=1):
        masks.append(s)
        s = board.step(s, x)
        if not s:
            return VerificationResult(True, day=day)
    return VerificationResult(False, walk=_escape_from_masks(board, xs, masks))


def _escape_from_masks(board: Board, xs: list[int], masks: list[int]) -> EscapeWalk:
    names = board.g.vertices
    rooms: list[int] = []
    for d in range(len(xs) - 1, -1, -1):
        alive = masks[d] & ~(1 << xs[d])
        if rooms:
            alive &= board.nbr[rooms[-1]]
        if not alive:
            raise NoEscape(f"no surviving room on day {d + 1}")
        rooms.append((alive & -alive).bit_length() - 1)
    return EscapeWalk(names[i] for i in reversed(rooms))


def extract_escape_walk(g: Palace, probes, states) -> EscapeWalk:
    """Walk back through a trace, picking the lowest-ordered viable room per day.

    `states` is the output of `trace`: candidate sets before each probe.
    """
    xs = _indices(g, probes)
    board = board_of(g)
    if len(states) > len(xs) and not states[len(xs)] and xs:
        raise NoEscape("candidate set is empty after the last day")
    return _escape_from_masks(board, xs, [board.mask(st) for st in states[:len(xs)]])


@dataclass(frozen=True)
class SolveResult:
    days: Optional[int]
    witness: Optional[ProbeSequence] = None
    states: int = 0

    @property
    def solvable(self) -> bool:
        return self.days is not None

    def to_json(self) -> dict:
        if not self.solvable:
            return {"result": "unsolvable", "states": self.states}
        return {"result": "finite", "days": self.days,
                "probes": list(self.witness.probes), "states": self.states}


def _check_cap(g: Palace) -> None:
    if len(g) > EXACT_VERTEX_CAP:
        raise CapExceeded(f"exact solver is limited to {EXACT_VERTEX_CAP} vertices; "
                          f"palace has {len(g)}")


def _dominated(masks: np.ndarray, seen: np.ndarray, n: int) -> np.ndarray:
    # S is dropped when S minus one vertex was already reached no later.
    out = np.zeros(masks.shape, dtype=bool)
    for i in range(n):
        bit = np.uint32(1 << i)
        has = (masks & bit) != 0
        out |= has & seen[masks & ~bit]
    return out


def min_days_exact(g: Palace, max_days: Optional[int] = None,
                   dominance: bool = True) -> SolveResult:
    """Minimum number of days that guarantees capture, with a witness.

    The witness is the lexicographically least (by vertex order) minimal
    sequence among those the search retained.
    """
    _check_cap(g)
    board = board_of(g)
    n = board.n
    seen = np.zeros(1 << n, dtype=bool)
    layers = [np.array([board.full], dtype=np.uint32)]
    seen[board.full] = True
    expanded = 1
    while not seen[0]:
        frontier = layers[-1]
        if frontier.size == 0:
            return SolveResult(None, states=expanded)
        if max_days is not None and len(layers) - 1 >= max_days:
            raise CapExceeded(f"no resolution within {max_days} days")
        succ = np.unique(np.concatenate([board.step_many(frontier, x) for x in range(n)]))
        succ = succ[~seen[succ]]
        seen[succ] = True
        if dominance and succ.size and not seen[0]:
            succ = succ[~_dominated(succ, seen, n)]
        layers.append(succ)
        expanded += int(succ.size)
    if layers[-1].size:
        layers[-1] = np.array([0], dtype=np.uint32)
    return SolveResult(len(layers) - 1, _lex_least(board, layers), states=expanded)


def _lex_least(board: Board, layers: list[np.ndarray]) -> ProbeSequence:
    days = len(layers) - 1
    level = np.full(1 << board.n, -1, dtype=np.int16)
    level[0] = days
    for j in range(days - 1, -1, -1):
        states = layers[j]
        good = np.zeros(states.shape, dtype=bool)
        for x in range(board.n):
            good |= level[board.step_many(states, x)] == j + 1
        level[states[good]] = j
    s = board.full
    probes = []
    for day in range(1, days + 1):
        for x in range(board.n):
            t = board.step(s, x)
            if level[t] == day:
                probes.append(board.g.vertices[x])
                s = t
                break
        else:
            raise AssertionError("witness reconstruction lost the optimal path")
    return ProbeSequence(probes)


def state_limit() -> int:
    return int(os.environ.get("PALACE_STATE_LIMIT", DEFAULT_STATE_LIMIT))


def clearing_distances(g: Palace, limit: Optional[int] = None) -> np.ndarray:
    """Fewest probes that empty each candidate set (indexed by mask); -1 if never."""
    limit = state_limit() if limit is None else limit
    _check_cap(g)
    if (1 << len(g)) > limit:
        raise BudgetExceeded(f"{1 << len(g)} candidate sets exceed the state limit {limit}")
    board = board_of(g)
    dist = np.full(1 << board.n, -1, dtype=np.int32)
    dist[0] = 0
    k = 0
    while True:
        open_ = np.flatnonzero(dist < 0).astype(np.uint32)
        if open_.size == 0:
            return dist
        reach = np.zeros(open_.shape, dtype=bool)
        for x in range(board.n):
            reach |= dist[board.step_many(open_, x)] == k
        if not reach.any():
            return dist
        k += 1
        dist[open_[reach]] = k


def enumerate_optimal(g: Palace, days: int, limit: Optional[int] = None) -> list[ProbeSequence]:
    """Every winning probe sequence of exactly `days` days, in lexicographic vertex order."""
    limit = state_limit() if limit is None else limit
    dist = clearing_distances(g, limit)
    board = board_of(g)
    names = g.vertices
    out: list[ProbeSequence] = []
    prefix: list[int] = []
    visited = 0

    def search(s: int, left: int) -> None:
        nonlocal visited
        visited += 1
        if visited > limit:
            raise BudgetExceeded(f"enumeration visited more than {limit} nodes")
        if left == 0:
            out.append(ProbeSequence(names[i] for i in prefix))
            return
        for x in range(board.n):
            t = board.step(s, x)
            if 0 <= dist[t] <= left - 1:
                prefix.append(x)
                search(t, left - 1)
                prefix.pop()

    if 0 <= dist[board.full] <= days:
        search(board.full, days)
    return out

"""Rule-following princesses that certify unsolvability.

Each evader knows the whole probe sequence in advance and returns the rooms
she occupies, day 1 first.  Probes outside the subgraph she is confined to are
misses.  The spider and star evaders keep a fixed colour class on even days;
probes on the wrong colour for the day cannot reach her and are treated as
misses as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import characterize
from .characterize import SpiderWitness
from .graph import Palace
from .walks import EscapeWalk


class RulesViolated(AssertionError):
    """A rule-following evader was caught where the rules promise escape."""


class EvaderCaught(Exception):
    def __init__(self, day: int, walk: Sequence[str]):
        super().__init__(f"evader caught on day {day}")
        self.day = day
        self.walk = tuple(walk)


def cycle_evader(g: Palace, cycle: Sequence[str], probes: Sequence[str],
                 start_parity: int = 0) -> EscapeWalk:
    """Stay on `cycle`, each night moving to a cycle-neighbor not probed next day.

    The first room is the lowest-ordered unprobed cycle vertex whose position
    on the cycle has parity `start_parity`, falling back to any unprobed one.
    """
    cycle = list(cycle)
    size = len(cycle)
    if size < 3 or any(cycle[(i + 1) % size] not in g.adjacency[cycle[i]] for i in range(size)):
        raise ValueError("not a cycle of the palace")
    probes = list(probes)
    if not probes:
        return EscapeWalk(())
    key = lambda i: g.index[cycle[i]]
    free = [i for i in range(size) if cycle[i] != probes[0]]
    preferred = [i for i in free if i % 2 == start_parity]
    pos = min(preferred or free, key=key)
    rooms = [cycle[pos]]
    for nxt in probes[1:]:
        options = [j % size for j in (pos - 1, pos + 1) if cycle[j % size] != nxt]
        pos = min(options, key=key)
        rooms.append(cycle[pos])
    return EscapeWalk(rooms)


def _project(probes: Sequence[str], keep_even: set, keep_odd: set, lead: int) -> list:
    # index t of the result is day t - lead; virtual lead days carry no probe
    out: list[Optional[str]] = [None] * lead
    for day, p in enumerate(probes, start=1):
        out.append(p if p in (keep_even if day % 2 == 0 else keep_odd) else None)
    return out


def spider_evader(w: SpiderWitness, probes: Sequence[str]) -> EscapeWalk:
    """Evade on the forbidden spider.

    On even days she is at the center or some b_i; day 0 is a virtual day at
    the center.  Moves follow four rules keyed on where she stands:
    c_i -> b_i; b_i -> a_i unless a_i is probed next (then c_i);
    a_i -> center unless the center is probed next (then b_i);
    center -> a_i for a branch that is neither probed next day nor the branch
    of the prince's next a_j, b_j pair on consecutive days.
    """
    center = w.center
    a = [br[0] for br in w.branches]
    b = [br[1] for br in w.branches]
    c = [br[2] for br in w.branches]
    branch_of = {v: i for i, br in enumerate(w.branches) for v in br}
    seq = _project(probes, {center, *b}, {*a, *c}, lead=1)
    horizon = len(seq)

    def probe(t):
        return seq[t] if t < horizon else None

    def next_pair_branch(t) -> Optional[int]:
        for e in range(t + 1, horizon - 1):
            p = seq[e]
            if p in a and seq[e + 1] == b[a.index(p)]:
                return a.index(p)
        return None

    room = center
    rooms = []
    for t in range(horizon - 1):
        nxt = probe(t + 1)
        if room == center:
            banned = {next_pair_branch(t)}
            if nxt is not None:
                banned.add(branch_of.get(nxt))
            i = min(i for i in range(len(a)) if i not in banned)
            room = a[i]
        elif room in a:
            i = a.index(room)
            room = b[i] if nxt == center else center
        elif room in b:
            i = b.index(room)
            room = c[i] if nxt == a[i] else a[i]
        else:
            room = b[c.index(room)]
        if room == nxt:
            raise RulesViolated(f"spider evader caught at {room!r} on day {t + 1}")
        rooms.append(room)
    return EscapeWalk(rooms)


@dataclass(frozen=True)
class StarInstance:
    """Center x with k branches B_i = {a_i, b_i} along paths x - a_i - b_i."""

    center: str
    branches: tuple[tuple[str, str], ...]

    @property
    def k(self) -> int:
        return len(self.branches)

    @classmethod
    def around(cls, g: Palace, center: str) -> "StarInstance":
        """The radius-2 star at `center`, taking the lowest-ordered b_i per branch."""
        branches = []
        for a in g.neighbors(center):
            outer = [v for v in g.neighbors(a) if v != center]
            if not outer:
                raise ValueError(f"branch at {a!r} has no second vertex")
            branches.append((a, outer[0]))
        if len(branches) < 2:
            raise ValueError("a star needs at least two branches")
        return cls(center, tuple(branches))


def star_evader(s: StarInstance, probes: Sequence[str], parity: str = "even") -> EscapeWalk:
    """Evade on a star, white (center and b_i) on `parity` days.

    Rules: b_i -> a_i; a_i -> center unless the center is probed next (then
    b_i); center -> a_i for the branch whose next visit comes last.
    Raises EvaderCaught when the sequence defeats her.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    a = [br[0] for br in s.branches]
    b = [br[1] for br in s.branches]
    branch_of = {v: i for i, br in enumerate(s.branches) for v in br}
    white, black = {s.center, *b}, set(a)
    lead = 1 if parity == "even" else 2
    # virtual day t=0 sits at the center on a white day
    if parity == "even":
        seq = _project(probes, white, black, lead)
    else:
        seq = _project(probes, black, white, lead)
    horizon = len(seq)

    def first_visit(i, t):
        for e in range(t + 1, horizon):
            if branch_of.get(seq[e]) == i:
                return e
        return horizon

    room = s.center
    rooms: list[str] = []
    for t in range(horizon - 1):
        nxt = seq[t + 1]
        if room == s.center:
            room = a[max(range(len(a)), key=lambda i: (first_visit(i, t), -i))]
        elif room in a:
            room = b[a.index(room)] if nxt == s.center else s.center
        else:
            room = a[b.index(room)]
        if t + 1 >= lead:
            rooms.append(room)
            if room == nxt:
                raise EvaderCaught(t + 2 - lead, rooms)
    return EscapeWalk(rooms)


def evade(g: Palace, probes: Sequence[str], start_parity: int = 0) -> EscapeWalk:
    """An escape walk from the structural witness of an unsolvable palace."""
    verdict = characterize.is_solvable(g)
    if verdict.kind == characterize.HAS_CYCLE:
        return cycle_evader(g, verdict.cycle, probes, start_parity)
    if verdict.kind == characterize.CONTAINS_T:
        return spider_evader(verdict.spider, probes)
    raise ValueError("palace is solvable; no evader exists")

"""Day-indexed vertex sequences: the prince's probes and the princess's walks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Palace


@dataclass(frozen=True)
class ProbeSequence:
    """Vertices the prince visits, day 1 first."""

    probes: tuple[str, ...]

    def __init__(self, probes: Iterable[str]):
        object.__setattr__(self, "probes", tuple(str(p) for p in probes))

    @property
    def days(self) -> int:
        return len(self.probes)

    def __len__(self) -> int:
        return len(self.probes)

    def __iter__(self):
        return iter(self.probes)

    def __getitem__(self, i):
        return self.probes[i]

    def to_json(self) -> dict:
        return {"days": self.days, "probes": list(self.probes)}

    def to_text(self) -> str:
        return "".join(p + "\n" for p in self.probes)

    @classmethod
    def from_text(cls, text: str) -> "ProbeSequence":
        return cls(line.strip() for line in text.splitlines()
                   if line.strip() and not line.lstrip().startswith("#"))

    def check(self, g: Palace) -> None:
        unknown = [p for p in self.probes if p not in g]
        if unknown:
            raise UnknownVertex(f"probe names unknown vertex {unknown[0]!r}")


class UnknownVertex(ValueError):
    pass


@dataclass(frozen=True)
class EscapeWalk:
    """Rooms the princess occupies at noon, day 1 first."""

    rooms: tuple[str, ...]

    def __init__(self, rooms: Iterable[str]):
        object.__setattr__(self, "rooms", tuple(rooms))

    def __len__(self) -> int:
        return len(self.rooms)

    def to_json(self) -> list:
        return list(self.rooms)

    def to_text(self) -> str:
        return "".join(r + "\n" for r in self.rooms)

    def violations(self, g: Palace, probes) -> list[str]:
        """Reasons this is not a surviving walk against `probes`; empty if it is."""
        out = []
        probes = list(probes)
        if len(self.rooms) != len(probes):
            out.append(f"walk has {len(self.rooms)} days, probes have {len(probes)}")
        for d, room in enumerate(self.rooms, start=1):
            if room not in g:
                out.append(f"day {d}: unknown room {room!r}")
                continue
            if d <= len(probes) and room == probes[d - 1]:
                out.append(f"day {d}: caught at {room!r}")
            if d > 1 and room not in g.adjacency.get(self.rooms[d - 2], ()):
                out.append(f"night {d - 1}: {self.rooms[d - 2]!r} -> {room!r} is not an edge")
        return out

    def survives(self, g: Palace, probes) -> bool:
        return not self.violations(g, probes)

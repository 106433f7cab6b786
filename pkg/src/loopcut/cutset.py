"""Cutset result type and its JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Tuple

ALGORITHMS = ("A1", "A2", "RANDOM", "EXACT")


@dataclass(frozen=True)
class Selection:
    """One greedy pick: the node, its degree and value count when picked, and what got pruned after."""

    picked: int
    degree: int
    values: int
    pruned: Tuple[int, ...] = ()
    fallback: bool = False

    def to_dict(self) -> dict:
        d = {"picked": self.picked, "degree": self.degree, "values": self.values, "pruned": list(self.pruned)}
        if self.fallback:
            d["fallback"] = True
        return d


@dataclass(frozen=True)
class Cutset:
    members: Tuple[int, ...]
    algorithm: str
    trace: Tuple[Selection, ...] = field(default=())
    optimal: Optional[bool] = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm tag {self.algorithm!r}")
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"duplicate cutset members {self.members}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def used_fallback(self) -> bool:
        return any(s.fallback for s in self.trace)

    def to_dict(self) -> dict:
        d = {
            "algorithm": self.algorithm,
            "members": list(self.members),
            "trace": [s.to_dict() for s in self.trace],
        }
        if self.algorithm == "EXACT":
            d["optimal"] = bool(self.optimal)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "Cutset":
        trace = tuple(
            Selection(s["picked"], s["degree"], s["values"], tuple(s["pruned"]), s.get("fallback", False))
            for s in d.get("trace", ())
        )
        return cls(tuple(d["members"]), d["algorithm"], trace, d.get("optimal"))

"""Outcome of a dimension computation, with a replayable trace.

A verdict is one of

* ``empty``         -- the system has no members (ell = -1),
* ``regular``       -- ell equals the expected dimension,
* ``special_known`` -- the system is special and ell is the computed value,
* ``unknown``       -- no sound conclusion within budget (never a wrong guess).

``trace`` is a JSON-serializable tree describing how the value was obtained;
``fatpoints check-certificate`` replays such trees using only the arithmetic
of the other modules, with no search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .core import LinearSystem, expected_dim, format_system

__all__ = ["DimVerdict", "EMPTY", "REGULAR", "SPECIAL", "UNKNOWN"]

EMPTY = "empty"
REGULAR = "regular"
SPECIAL = "special_known"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class DimVerdict:
    status: str
    ell: int | None
    system: LinearSystem
    trace: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (EMPTY, REGULAR, SPECIAL, UNKNOWN):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == EMPTY and self.ell != -1:
            raise ValueError("empty verdict must carry ell = -1")
        if self.status == REGULAR and self.ell != expected_dim(self.system):
            raise ValueError(
                f"regular verdict for {self.system} must carry ell = expected_dim")
        if self.status == UNKNOWN and self.ell is not None:
            raise ValueError("unknown verdict carries no ell")

    @property
    def conclusive(self) -> bool:
        return self.status != UNKNOWN

    def to_json(self) -> dict:
        return {
            "system": format_system(self.system),
            "status": self.status,
            "ell": self.ell,
            "trace": dict(self.trace),
        }

    def dumps(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json(), indent=indent)

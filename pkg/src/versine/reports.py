"""Sweep reports and their canonical serialization.

All numeric payloads serialize as decimal strings (midpoint plus an
explicit radius field), never as binary floats, so a report parsed and
re-serialized anywhere reproduces byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .ball import PiMultiple, PrecReal

__all__ = ["GridReport", "ball_json", "point_json", "canonical_json"]

_DIGITS = 30


def ball_json(b: Optional[PrecReal]) -> Optional[dict]:
    if b is None:
        return None
    return {"midpoint": b.mid_str(_DIGITS), "radius": b.rad_str(10)}


PointLike = Union[PiMultiple, float, int, Fraction, None]


def _coord_json(c: PointLike) -> Optional[dict]:
    if c is None:
        return None
    if isinstance(c, PiMultiple):
        return {"over_pi": str(c.ratio), "value": f"{float(c):.17g}"}
    return {"over_pi": None, "value": f"{float(c):.17g}"}


def point_json(pt) -> Optional[dict]:
    if pt is None:
        return None
    if isinstance(pt, tuple):
        out = {"x": _coord_json(pt[0])}
        if len(pt) > 1:
            out["y"] = _coord_json(pt[1])
        return out
    return {"x": _coord_json(pt)}


@dataclass
class GridReport:
    """Outcome of a grid sweep (simplex inequality or monotonicity)."""

    suite: str
    n: int
    points: int
    all_passed: bool
    worst_margin: Optional[PrecReal]
    worst_point: Optional[tuple]
    extremum_location: Optional[tuple]
    skipped_near_pole: int = 0
    failed: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    equality_points: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def status(self) -> int:
        """Process-exit semantics: 0 passed, 2 inconclusive, 3 failed."""
        if self.failed:
            return 3
        if self.inconclusive:
            return 2
        return 0

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "points": self.points,
            "all_passed": self.all_passed,
            "worst_margin": ball_json(self.worst_margin),
            "worst_point": point_json(self.worst_point),
            "extremum_location": point_json(self.extremum_location),
            "skipped_near_pole": self.skipped_near_pole,
            "failed": [point_json(p) for p in self.failed],
            "inconclusive": [point_json(p) for p in self.inconclusive],
            "equality_points": [point_json(p) for p in self.equality_points],
            "meta": {k: str(v) for k, v in sorted(self.meta.items())},
        }

    def to_text(self) -> str:
        lines = [
            f"suite:            {self.suite}",
            f"order n:          {self.n}",
            f"points checked:   {self.points}"
            + (f" (skipped near pole: {self.skipped_near_pole})" if self.skipped_near_pole else ""),
            f"all passed:       {self.all_passed}",
        ]
        if self.worst_margin is not None:
            lines.append(
                f"worst margin:     {self.worst_margin.mid_str(20)} "
                f"+/- {self.worst_margin.rad_str(6)}"
            )
        if self.worst_point is not None:
            lines.append(f"worst point:      {_point_text(self.worst_point)}")
        if self.extremum_location is not None:
            lines.append(f"extremum at:      {_point_text(self.extremum_location)}")
        if self.equality_points:
            lines.append(f"certified equality/zero points: {len(self.equality_points)}")
        if self.inconclusive:
            lines.append(f"INCONCLUSIVE:     {len(self.inconclusive)} point(s)")
        if self.failed:
            lines.append(f"FAILED:           {len(self.failed)} point(s)")
        return "\n".join(lines)

    def csv_rows(self) -> list[dict]:
        wm = self.worst_margin
        return [
            {
                "suite": self.suite,
                "n": self.n,
                "points": self.points,
                "all_passed": self.all_passed,
                "worst_margin_mid": wm.mid_str(_DIGITS) if wm is not None else "",
                "worst_margin_rad": wm.rad_str(10) if wm is not None else "",
                "worst_point": _point_text(self.worst_point),
                "extremum_location": _point_text(self.extremum_location),
                "skipped_near_pole": self.skipped_near_pole,
                "failed": len(self.failed),
                "inconclusive": len(self.inconclusive),
            }
        ]


def _point_text(pt) -> str:
    if pt is None:
        return ""
    if isinstance(pt, tuple):
        return "(" + ", ".join(str(c) for c in pt) + ")"
    return str(pt)


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"

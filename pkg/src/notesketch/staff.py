"""Staff line detection, staff assembly/beautification, and the staff
position system.

Positions index half-steps from the bottom line: bottom line = 0, the space
above it = 1, up to the top line = 8; lines are even, spaces odd. Ledger
territory extends the same enumeration beyond the staff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .config import RecognizerConfig, DEFAULT_CONFIG
from .errors import OverlappingLines, WrongLineCount
from .geometry import (Stroke, endpoint_slope_ratio, path_length,
                       straightness)


@dataclass(frozen=True)
class StaffLineCandidate:
    stroke_id: int
    mean_y: float
    straightness: float
    width_coverage: float
    slope: float


@dataclass(frozen=True)
class StaffModel:
    """Five beautified line y-coordinates (top to bottom) plus the step."""

    line_ys: tuple[float, float, float, float, float]
    step: float

    @property
    def top_y(self) -> float:
        return self.line_ys[0]

    @property
    def bottom_y(self) -> float:
        return self.line_ys[-1]

    @property
    def middle_y(self) -> float:
        return self.line_ys[2]

    def position_to_y(self, position: int) -> float:
        return self.bottom_y - position * self.step / 2.0

    def snap_position(self, y: float) -> int:
        """Nearest half-step position for a y coordinate.

        Banker's rounding sends exact midpoints to the even (line) position,
        where novice placement errors cluster.
        """
        return int(round((self.bottom_y - y) / (self.step / 2.0)))

    def line_y(self, line_number: int) -> float:
        """y of staff line `line_number`, counted 1 (bottom) to 5 (top)."""
        return self.line_ys[5 - line_number]


def classify_staff_line(s: Stroke, canvas_width: float,
                        config: RecognizerConfig = DEFAULT_CONFIG
                        ) -> Optional[StaffLineCandidate]:
    """Line test + width test + angle test; None means not a staff line."""
    if len(s.points) < 2:
        return None
    straight = straightness(s)
    box = s.bbox()
    coverage = box.width / canvas_width if canvas_width > 0 else 0.0
    slope = endpoint_slope_ratio(s)
    if straight < config.staff_straightness_min:
        return None
    if coverage < config.staff_width_coverage_min:
        return None
    if slope >= config.staff_slope_max:
        return None
    mean_y = sum(p.y for p in s.points) / len(s.points)
    return StaffLineCandidate(s.id, mean_y, straight, coverage, slope)


def assemble_staff(candidates: Sequence[StaffLineCandidate],
                   config: RecognizerConfig = DEFAULT_CONFIG) -> StaffModel:
    """Beautify five line candidates into an evenly spaced staff.

    The top and bottom lines keep their drawn mean y; the middle three are
    interpolated evenly in between.
    """
    if len(candidates) != 5:
        raise WrongLineCount(f"staff needs 5 lines, got {len(candidates)}")
    ys = sorted(c.mean_y for c in candidates)
    for a, b in zip(ys, ys[1:]):
        if b - a <= config.staff_min_line_separation:
            raise OverlappingLines(f"staff lines at y={a:.1f} and y={b:.1f} overlap")
    top, bottom = ys[0], ys[-1]
    step = (bottom - top) / 4.0
    line_ys = tuple(top + i * step for i in range(5))
    return StaffModel(line_ys, step)  # type: ignore[arg-type]

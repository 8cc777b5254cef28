"""Synthetic stroke capture for the bundled assets.

Each symbol class has a parametric prototype polyline (control vertices in
step units). Exemplars are produced by scaling to pixels, perturbing the
control vertices with Gaussian jitter, smoothing, and densifying — the
same process recorded both the template library and the evaluation corpus
(with independent random streams).

Hand jitter is applied at the control-vertex level before smoothing: real
pen wobble is low-frequency, and white noise on a dense polyline would
inflate path-length measurements in a way no human stroke does.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .geometry import Point, Stroke

# prototypes are (x, y) control vertices in step units, y downward,
# origin at the symbol's top-left anchor

TREBLE_CLEF = [
    (0.9, -1.2), (1.2, -0.6), (1.1, 0.2), (0.7, 1.0), (0.4, 1.8),
    (0.5, 2.6), (0.9, 3.1), (1.4, 3.0), (1.5, 2.4), (1.1, 2.0),
    (0.6, 2.3), (0.45, 3.0), (0.5, 3.8), (0.8, 4.6), (0.9, 5.0), (0.6, 5.2),
]

BASS_CLEF_BODY = [
    (0.2, 1.0), (0.3, 0.5), (0.7, 0.15), (1.2, 0.3), (1.5, 0.9),
    (1.4, 1.7), (1.0, 2.4), (0.5, 2.9), (0.2, 3.0),
]
BASS_CLEF_DOTS = [(1.9, 0.55), (1.9, 1.45)]

SHARP = [
    (0.3, 0.0), (0.25, 2.0), (0.7, 0.05), (0.65, 2.05),
    (0.0, 0.7), (1.0, 0.6), (0.0, 1.45), (1.0, 1.35),
]

FLAT = [
    (0.1, 0.0), (0.1, 2.2), (0.15, 1.9), (0.5, 1.45), (0.75, 1.55),
    (0.7, 1.85), (0.4, 2.1), (0.12, 2.2),
]

# digits in a unit box (width 1, height 1); drawn one stroke each
DIGITS = {
    0: [(0.5, 0.0), (0.82, 0.15), (0.95, 0.5), (0.82, 0.85), (0.5, 1.0),
        (0.18, 0.85), (0.05, 0.5), (0.18, 0.15), (0.5, 0.0)],
    1: [(0.3, 0.18), (0.5, 0.0), (0.5, 1.0)],
    2: [(0.1, 0.25), (0.3, 0.0), (0.7, 0.0), (0.9, 0.3), (0.5, 0.6),
        (0.1, 1.0), (0.9, 1.0)],
    3: [(0.1, 0.1), (0.5, 0.0), (0.85, 0.2), (0.5, 0.45), (0.85, 0.7),
        (0.5, 1.0), (0.1, 0.9)],
    4: [(0.7, 1.0), (0.7, 0.0), (0.1, 0.7), (0.95, 0.7)],
    5: [(0.85, 0.0), (0.15, 0.0), (0.12, 0.45), (0.6, 0.4), (0.9, 0.65),
        (0.6, 1.0), (0.1, 0.95)],
    6: [(0.8, 0.05), (0.4, 0.0), (0.15, 0.4), (0.1, 0.8), (0.45, 1.0),
        (0.8, 0.85), (0.75, 0.55), (0.4, 0.5), (0.15, 0.7)],
    7: [(0.1, 0.05), (0.9, 0.0), (0.5, 0.55), (0.3, 1.0)],
    8: [(0.5, 0.5), (0.2, 0.25), (0.5, 0.0), (0.8, 0.25), (0.5, 0.5),
        (0.2, 0.75), (0.5, 1.0), (0.8, 0.75), (0.5, 0.5)],
    9: [(0.85, 0.45), (0.5, 0.55), (0.15, 0.4), (0.2, 0.1), (0.55, 0.0),
        (0.85, 0.15), (0.85, 0.5), (0.7, 1.0)],
}
DIGIT_HEIGHT_STEPS = 2.2
DIGIT_WIDTH_STEPS = 1.2

QUARTER_REST = [
    (0.3, 0.0), (0.7, 0.6), (0.25, 1.2), (0.7, 1.8), (0.45, 2.0),
    (0.25, 2.2), (0.5, 2.5),
]

EIGHTH_REST = [
    (0.2, 0.3), (0.35, 0.15), (0.55, 0.3), (0.4, 0.45), (0.2, 0.3),
    (0.75, 0.1), (0.45, 1.1), (0.25, 2.0),
]


def chaikin(pts: list[tuple[float, float]], iterations: int = 2
            ) -> list[tuple[float, float]]:
    for _ in range(iterations):
        out = [pts[0]]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            out.append((0.75 * x0 + 0.25 * x1, 0.75 * y0 + 0.25 * y1))
            out.append((0.25 * x0 + 0.75 * x1, 0.25 * y0 + 0.75 * y1))
        out.append(pts[-1])
        pts = out
    return pts


def densify(pts: list[tuple[float, float]], spacing: float
            ) -> list[tuple[float, float]]:
    out = [pts[0]]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        d = math.hypot(x1 - x0, y1 - y0)
        n = max(1, int(d / spacing))
        for k in range(1, n + 1):
            f = k / n
            out.append((x0 + f * (x1 - x0), y0 + f * (y1 - y0)))
    return out


class StrokeSynth:
    """Draws jittered exemplars of the symbol prototypes."""

    def __init__(self, rng: random.Random, noise_sigma: float = 2.0,
                 scale_jitter: float = 0.10, smooth: bool = True):
        self.rng = rng
        self.noise_sigma = noise_sigma
        self.scale_jitter = scale_jitter
        self.smooth = smooth
        self._next_id = 1

    def _take_id(self) -> int:
        sid = self._next_id
        self._next_id += 1
        return sid

    def stroke(self, control: Sequence[tuple[float, float]], step: float,
               origin: tuple[float, float], scale: float = 1.0,
               smooth: bool | None = None, spacing: float = 4.0) -> Stroke:
        """Render control vertices (step units) into a captured stroke."""
        ox, oy = origin
        pts = [(ox + x * step * scale + self.rng.gauss(0, self.noise_sigma),
                oy + y * step * scale + self.rng.gauss(0, self.noise_sigma))
               for x, y in control]
        use_smooth = self.smooth if smooth is None else smooth
        if use_smooth and len(pts) > 2:
            pts = chaikin(pts)
        pts = densify(pts, spacing)
        return Stroke.captured((Point(x, y) for x, y in pts),
                               id=self._take_id())

    def size_factor(self) -> float:
        return 1.0 + self.rng.uniform(-self.scale_jitter, self.scale_jitter)

    # ----------------------------------------------------------- staff parts

    def staff_lines(self, top_y: float, step: float, x0: float, x1: float
                    ) -> list[Stroke]:
        lines = []
        for i in range(5):
            y = top_y + i * step + self.rng.gauss(0, 1.0)
            control = [((x0 + f * (x1 - x0) - x0) / step, (y - top_y) / step)
                       for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
            lines.append(self.stroke(control, step, (x0, top_y), smooth=False,
                                     spacing=8.0))
        return lines

    def vertical_line(self, x: float, y0: float, y1: float, step: float) -> Stroke:
        control = [(0.0, 0.0), (0.02, (y1 - y0) / (2 * step)), (0.0, (y1 - y0) / step)]
        return self.stroke(control, step, (x, y0), smooth=False, spacing=6.0)

    def horizontal_line(self, x0: float, x1: float, y: float, step: float) -> Stroke:
        control = [(0.0, 0.0), ((x1 - x0) / (2 * step), 0.02), ((x1 - x0) / step, 0.0)]
        return self.stroke(control, step, (x0, y), smooth=False, spacing=6.0)

    # -------------------------------------------------------------- note bits

    def ellipse(self, cx: float, cy: float, rx: float, ry: float,
                points: int = 14) -> Stroke:
        phase = self.rng.uniform(0, 2 * math.pi)
        control = []
        for k in range(points + 1):
            a = phase + 2 * math.pi * k / points
            control.append(((rx * math.cos(a)) / 1.0, (ry * math.sin(a)) / 1.0))
        # ellipse control is already in pixels; use step=1 scale
        pts = [(cx + x + self.rng.gauss(0, self.noise_sigma * 0.4),
                cy + y + self.rng.gauss(0, self.noise_sigma * 0.4))
               for x, y in control]
        pts = chaikin(pts, 1)
        pts = densify(pts, 3.0)
        return Stroke.captured((Point(x, y) for x, y in pts), id=self._take_id())

    def zigzag_fill(self, min_x: float, min_y: float, max_x: float,
                    max_y: float, sweeps: int = 4) -> Stroke:
        inset_x = 0.12 * (max_x - min_x)
        inset_y = 0.15 * (max_y - min_y)
        x0, x1 = min_x + inset_x, max_x - inset_x
        y0, y1 = min_y + inset_y, max_y - inset_y
        pts = []
        for k in range(sweeps + 1):
            y = y0 + (y1 - y0) * k / sweeps
            xs = (x0, x1) if k % 2 == 0 else (x1, x0)
            pts.append((xs[0], y))
            pts.append((xs[1], y))
        pts = [(x + self.rng.gauss(0, 0.8), y + self.rng.gauss(0, 0.8))
               for x, y in pts]
        pts = densify(pts, 4.0)
        return Stroke.captured((Point(x, y) for x, y in pts), id=self._take_id())

    def tap(self, x: float, y: float) -> Stroke:
        """Two-point dot stroke."""
        return Stroke.captured(
            [Point(x + self.rng.gauss(0, 0.5), y + self.rng.gauss(0, 0.5)),
             Point(x + 1.0 + self.rng.gauss(0, 0.5),
                   y + 0.5 + self.rng.gauss(0, 0.5))],
            id=self._take_id())

    def blob(self, x: float, y: float, radius: float) -> Stroke:
        control = [(0.0, 0.0), (radius, radius * 0.5), (radius * 0.4, radius),
                   (-radius * 0.3, radius * 0.5), (0.1, 0.05)]
        pts = [(x + px + self.rng.gauss(0, 0.4), y + py + self.rng.gauss(0, 0.4))
               for px, py in control]
        return Stroke.captured((Point(px, py) for px, py in pts),
                               id=self._take_id())

    def rect_outline(self, min_x: float, min_y: float, max_x: float,
                     max_y: float) -> Stroke:
        control_px = [(min_x, min_y), (min_x, max_y), (max_x, max_y),
                      (max_x, min_y), (min_x, min_y)]
        pts = [(x + self.rng.gauss(0, 0.8), y + self.rng.gauss(0, 0.8))
               for x, y in control_px]
        pts = densify(pts, 3.0)
        return Stroke.captured((Point(x, y) for x, y in pts), id=self._take_id())

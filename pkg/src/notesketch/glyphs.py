"""Glyph classifiers: clefs, key-signature accidentals, time-signature
digits, rests, note heads, and measure bars.

Template-matched glyphs go through two phases: the matching check (best
library class must belong to the classifier's family and beat the score
threshold) and the definition check (size, position, and stroke-count
constraints in step units against the assembled staff).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .config import RecognizerConfig, DEFAULT_CONFIG
from .geometry import (BoundingBox, Stroke, bbox_of_strokes,
                       endpoint_inverse_slope_ratio, path_length, resample,
                       straightness)
from .staff import StaffModel
from .templates import TemplateLibrary

# glyph kinds
TREBLE_CLEF = "treble_clef"
BASS_CLEF = "bass_clef"
SHARP = "sharp"
FLAT = "flat"
WHOLE_REST = "whole_rest"
HALF_REST = "half_rest"
QUARTER_REST = "quarter_rest"
EIGHTH_REST = "eighth_rest"
NOTE_HEAD_FILLED = "note_head_filled"
NOTE_HEAD_EMPTY = "note_head_empty"
BAR_SINGLE = "bar_single"
BAR_DOUBLE = "bar_double"

DIGIT_LABELS = tuple(f"digit_{i}" for i in range(10))
CLEF_LABELS = (TREBLE_CLEF, BASS_CLEF)
ACCIDENTAL_LABELS = (SHARP, FLAT)
TEMPLATE_REST_LABELS = (QUARTER_REST, EIGHTH_REST)

REST_DURATIONS = {WHOLE_REST: 4.0, HALF_REST: 2.0,
                  QUARTER_REST: 1.0, EIGHTH_REST: 0.5}


@dataclass(frozen=True)
class GlyphSymbol:
    kind: str
    bbox: BoundingBox
    stroke_ids: tuple[int, ...]
    position: Optional[int] = None
    score: Optional[float] = None
    digit_value: Optional[int] = None
    gid: int = -1                    # scene-assigned id


@dataclass(frozen=True)
class TimeSignature:
    numerator: int
    denominator: int
    bbox: BoundingBox
    stroke_ids: tuple[int, ...]


def _family_match(strokes: Sequence[Stroke], library: TemplateLibrary,
                  family: Sequence[str], config: RecognizerConfig):
    """Matching check: the overall best library class must be one of
    `family` and its score must clear the threshold."""
    result = library.match(strokes)
    if result.label not in family:
        return None
    if result.score <= config.score_threshold:
        return None
    return result


def _staff_overlap(box: BoundingBox, top: float, bottom: float) -> float:
    """Fraction of the [top, bottom] band covered by the bbox's y-range."""
    lo = max(box.min_y, top)
    hi = min(box.max_y, bottom)
    if bottom <= top:
        return 0.0
    return max(0.0, hi - lo) / (bottom - top)


def classify_clef(strokes: Sequence[Stroke], staff: StaffModel,
                  library: TemplateLibrary,
                  config: RecognizerConfig = DEFAULT_CONFIG
                  ) -> Optional[GlyphSymbol]:
    m = _family_match(strokes, library, CLEF_LABELS, config)
    if m is None:
        return None
    box = bbox_of_strokes(strokes)
    step = staff.step
    if m.label == BASS_CLEF:
        if len(strokes) != config.bass_clef_stroke_count:
            return None
        if box.height > config.bass_clef_max_height_steps * step:
            return None
        # body in the top three-quarters of the staff, dots straddling line 4
        upper_band_bottom = staff.top_y + 3.0 * step
        if _staff_overlap(box, staff.top_y, upper_band_bottom) < config.clef_staff_overlap_min:
            return None
        dots = sorted(strokes, key=path_length)[:2]
        dot_ys = sorted(s.bbox().center[1] for s in dots)
        line4_y = staff.line_y(4)
        if not (dot_ys[0] < line4_y < dot_ys[1]):
            return None
    else:
        if len(strokes) not in config.treble_clef_stroke_counts:
            return None
        if not (config.treble_clef_min_height_steps * step <= box.height
                <= config.treble_clef_max_height_steps * step):
            return None
        if _staff_overlap(box, staff.top_y, staff.bottom_y) < config.clef_staff_overlap_min:
            return None
    return GlyphSymbol(m.label, box, tuple(s.id for s in strokes), score=m.score)


def classify_accidental(strokes: Sequence[Stroke], staff: StaffModel,
                        library: TemplateLibrary,
                        config: RecognizerConfig = DEFAULT_CONFIG
                        ) -> Optional[GlyphSymbol]:
    """Key-signature sharps and flats; the definition check is a height
    band plus a snap of the bbox center to a staff position."""
    m = _family_match(strokes, library, ACCIDENTAL_LABELS, config)
    if m is None:
        return None
    box = bbox_of_strokes(strokes)
    step = staff.step
    if not (config.accidental_min_height_steps * step <= box.height
            <= config.accidental_max_height_steps * step):
        return None
    position = staff.snap_position(box.center[1])
    return GlyphSymbol(m.label, box, tuple(s.id for s in strokes),
                       position=position, score=m.score)


def classify_digit(strokes: Sequence[Stroke], staff: StaffModel,
                   library: TemplateLibrary,
                   config: RecognizerConfig = DEFAULT_CONFIG
                   ) -> Optional[GlyphSymbol]:
    m = _family_match(strokes, library, DIGIT_LABELS, config)
    if m is None:
        return None
    box = bbox_of_strokes(strokes)
    step = staff.step
    if not (config.digit_min_height_steps * step <= box.height
            <= config.digit_max_height_steps * step):
        return None
    value = int(m.label.split("_")[1])
    return GlyphSymbol(m.label, box, tuple(s.id for s in strokes),
                       score=m.score, digit_value=value)


def try_fuse_time_signature(digits: Sequence[GlyphSymbol], staff: StaffModel,
                            config: RecognizerConfig = DEFAULT_CONFIG
                            ) -> Optional[tuple[TimeSignature, GlyphSymbol, GlyphSymbol]]:
    """Fuse two pending digits into a time signature when they are
    vertically stacked and together span the staff's height.

    Returns (signature, upper digit, lower digit) or None. A stack whose
    lower digit is not a legal denominator is left unfused.
    """
    step = staff.step
    mid_y = staff.middle_y
    for i, a in enumerate(digits):
        for b in digits[i + 1:]:
            upper, lower = (a, b) if a.bbox.center[1] < b.bbox.center[1] else (b, a)
            if abs(a.bbox.center[0] - b.bbox.center[0]) > config.time_sig_align_steps * step:
                continue
            if not (upper.bbox.center[1] < mid_y < lower.bbox.center[1]):
                continue
            joint = upper.bbox.union(lower.bbox)
            if joint.height < config.time_sig_min_span_steps * step:
                continue
            if lower.digit_value not in config.valid_denominators:
                continue
            sig = TimeSignature(int(upper.digit_value), int(lower.digit_value),
                                joint, upper.stroke_ids + lower.stroke_ids)
            return sig, upper, lower
    return None


def _containment_ratio(fill: Stroke, box: BoundingBox, slack: float) -> float:
    inside = sum(1 for p in fill.points if box.contains(p.x, p.y, slack))
    return inside / len(fill.points)


def find_corners(s: Stroke, config: RecognizerConfig = DEFAULT_CONFIG) -> list[int]:
    """Corner indices on the 64-point resampling via a straw-window scheme:
    local minima of the window-endpoint distance below a fraction of the
    median straw mark corners. Endpoints always count."""
    r = resample(s, 64)
    xy = r.xy()
    w = config.straw_window
    straws = np.linalg.norm(xy[2 * w:] - xy[:-2 * w], axis=1)
    threshold = config.straw_corner_factor * float(np.median(straws))
    corners = [0]
    i = 0
    while i < len(straws):
        if straws[i] < threshold:
            # walk the below-threshold run, keep its minimum
            j = i
            while j < len(straws) and straws[j] < threshold:
                j += 1
            local = i + int(np.argmin(straws[i:j]))
            corners.append(local + w)
            i = j
        else:
            i += 1
    corners.append(63)
    # merge corners that collapsed onto (or next to) the endpoints
    merged = [corners[0]]
    for c in corners[1:]:
        if c - merged[-1] > w:
            merged.append(c)
    if merged[-1] != 63:
        merged.append(63)
    return merged


def _is_rect_outline(s: Stroke, config: RecognizerConfig) -> bool:
    """Partial rectangular outline: 3-4 straight-ish segments between
    detected corners."""
    corners = find_corners(s, config)
    segments = len(corners) - 1
    if segments < 3 or segments > 4:
        return False
    r = resample(s, 64)
    for a, b in zip(corners, corners[1:]):
        seg = Stroke(r.points[a:b + 1])
        if len(seg.points) >= 3 and straightness(seg) < 0.85:
            return False
    return True


def _rect_rest_kind(box: BoundingBox, staff: StaffModel,
                    config: RecognizerConfig) -> Optional[str]:
    """Whole rest hangs below line 4; half rest sits on line 3."""
    step = staff.step
    if not (config.rect_rest_min_width_steps * step <= box.width
            <= config.rect_rest_max_width_steps * step):
        return None
    if box.height > config.rect_rest_max_height_steps * step:
        return None
    tol = config.rect_rest_position_tolerance_steps * step
    d_whole = abs(box.min_y - staff.line_y(4))   # hangs below line 4
    d_half = abs(box.max_y - staff.line_y(3))    # sits on line 3
    best = min(d_whole, d_half)
    if best > tol:
        return None
    return WHOLE_REST if d_whole <= d_half else HALF_REST


def classify_rest(strokes: Sequence[Stroke], staff: StaffModel,
                  library: TemplateLibrary,
                  config: RecognizerConfig = DEFAULT_CONFIG
                  ) -> Optional[GlyphSymbol]:
    step = staff.step
    if len(strokes) == 1:
        s = strokes[0]
        box = s.bbox()
        kind = _rect_rest_kind(box, staff, config)
        if kind is not None:
            # single dense closed blob route: path long enough to count as
            # filled, and endpoints closed
            L = path_length(s)
            closed = s.start.dist(s.end) <= config.head_closure_gap_factor * L
            if (L >= config.dense_blob_length_factor * (box.width + box.height)
                    and closed):
                return GlyphSymbol(kind, box, (s.id,),
                                   position=staff.snap_position(box.center[1]))
    if len(strokes) == 2:
        # outline + fill pair for half/whole rests
        for outline, fill in (strokes, strokes[::-1]):
            box = outline.bbox()
            kind = _rect_rest_kind(box, staff, config)
            if kind is None or not _is_rect_outline(outline, config):
                continue
            if _containment_ratio(fill, box, 0.1 * step) >= config.fill_containment_min:
                return GlyphSymbol(kind, box.union(fill.bbox()),
                                   (outline.id, fill.id),
                                   position=staff.snap_position(box.center[1]))
    if (len(strokes) == 1
            and straightness(strokes[0]) >= config.rest_straightness_reject):
        # a rest is never a straight line; keeps bars and stems out
        return None
    m = _family_match(strokes, library, TEMPLATE_REST_LABELS, config)
    if m is None:
        return None
    box = bbox_of_strokes(strokes)
    if box.height > config.rest_max_height_steps * step:
        return None
    if abs(box.center[1] - staff.middle_y) > config.rest_center_tolerance_steps * step:
        return None
    return GlyphSymbol(m.label, box, tuple(s.id for s in strokes),
                       position=staff.snap_position(box.center[1]), score=m.score)


def _passes_circle_test(s: Stroke, staff: StaffModel,
                        config: RecognizerConfig) -> bool:
    box = s.bbox()
    w, h = box.width, box.height
    if max(w, h) <= 0:
        return False
    step = staff.step
    if not (config.head_min_height_steps * step <= h
            <= config.head_max_height_steps * step):
        return False
    if min(w, h) / max(w, h) < config.head_aspect_min:
        return False
    L = path_length(s)
    r = (w + h) / 4.0
    circumference = 2.0 * math.pi * r
    if circumference <= 0 or abs(L - circumference) / circumference > config.head_circumference_tolerance:
        return False
    if s.start.dist(s.end) > config.head_closure_gap_factor * L:
        return False
    return True


def classify_note_head(strokes: Sequence[Stroke], staff: StaffModel,
                       config: RecognizerConfig = DEFAULT_CONFIG
                       ) -> Optional[GlyphSymbol]:
    """PaleoSketch-style circle test; an accompanying fill stroke with 80%
    containment marks the head filled."""
    outline = None
    fill = None
    if len(strokes) == 1:
        outline = strokes[0]
    elif len(strokes) == 2:
        for cand, other in (strokes, strokes[::-1]):
            if _passes_circle_test(cand, staff, config):
                outline, fill = cand, other
                break
    if outline is None or not _passes_circle_test(outline, staff, config):
        return None
    box = outline.bbox()
    kind = NOTE_HEAD_EMPTY
    ids = (outline.id,)
    if fill is not None:
        if _containment_ratio(fill, box, 0.1 * staff.step) < config.fill_containment_min:
            return None
        kind = NOTE_HEAD_FILLED
        ids = (outline.id, fill.id)
        box = box.union(fill.bbox())
    return GlyphSymbol(kind, box, ids,
                       position=staff.snap_position(outline.bbox().center[1]))


def fill_existing_head(fill: Stroke, head: GlyphSymbol, staff: StaffModel,
                       config: RecognizerConfig = DEFAULT_CONFIG
                       ) -> Optional[GlyphSymbol]:
    """Upgrade an already-recognized empty head to filled when a later
    stroke lands mostly inside it."""
    if head.kind != NOTE_HEAD_EMPTY:
        return None
    if _containment_ratio(fill, head.bbox, 0.1 * staff.step) < config.fill_containment_min:
        return None
    return replace(head, kind=NOTE_HEAD_FILLED,
                   stroke_ids=head.stroke_ids + (fill.id,))


def classify_measure_bar(s: Stroke, staff: StaffModel,
                         config: RecognizerConfig = DEFAULT_CONFIG
                         ) -> Optional[GlyphSymbol]:
    """Near-vertical straight stroke spanning the staff's full height."""
    if straightness(s) < config.bar_straightness_min:
        return None
    if endpoint_inverse_slope_ratio(s) >= config.bar_slope_max:
        return None
    box = s.bbox()
    slack = config.bar_end_slack_steps * staff.step
    if abs(box.min_y - staff.top_y) > slack or abs(box.max_y - staff.bottom_y) > slack:
        return None
    return GlyphSymbol(BAR_SINGLE, box, (s.id,))


def try_fuse_double_bar(new_bar: GlyphSymbol, bars: Sequence[GlyphSymbol],
                        staff: StaffModel,
                        config: RecognizerConfig = DEFAULT_CONFIG
                        ) -> Optional[tuple[GlyphSymbol, GlyphSymbol]]:
    """Fuse an accepted bar with an adjacent existing single bar.

    Returns (double bar, absorbed single) or None.
    """
    gap = config.double_bar_gap_steps * staff.step
    for bar in bars:
        if bar.kind != BAR_SINGLE:
            continue
        if abs(bar.bbox.center[0] - new_bar.bbox.center[0]) <= gap:
            fused = GlyphSymbol(BAR_DOUBLE, bar.bbox.union(new_bar.bbox),
                                bar.stroke_ids + new_bar.stroke_ids)
            return fused, bar
    return None

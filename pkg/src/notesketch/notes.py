"""Note components (stems, flags, dots, beams, accidentals, ledger lines),
composite note assembly with pitch/duration, and measure segmentation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .config import RecognizerConfig, DEFAULT_CONFIG
from .geometry import (BoundingBox, Point, Stroke, bbox_of_strokes,
                       endpoint_inverse_slope_ratio, endpoint_slope_ratio,
                       path_length, straightness)
from .glyphs import (ACCIDENTAL_LABELS, GlyphSymbol, NOTE_HEAD_EMPTY,
                     NOTE_HEAD_FILLED, REST_DURATIONS, SHARP, _family_match)
from .staff import StaffModel
from .templates import TemplateLibrary

STEM = "stem"
FLAG = "flag"
BEAM = "beam"
DOT = "dot"
LEDGER_LINE = "ledger_line"
ACCIDENTAL_SHARP = "accidental_sharp"
ACCIDENTAL_FLAT = "accidental_flat"

LETTERS = "CDEFGAB"
# diatonic index (octave*7 + letter) of staff position 0, per clef
CLEF_POSITION_BASE = {"treble_clef": 4 * 7 + 2,   # E4 on the bottom line
                      "bass_clef": 2 * 7 + 4}     # G2 on the bottom line


@dataclass(frozen=True)
class NoteComponent:
    kind: str
    stroke_ids: tuple[int, ...]
    bbox: BoundingBox
    anchor: int                      # gid of the note head, or cid of the stem
    anchor2: Optional[int] = None    # second stem for beams
    cid: int = -1
    free_end: Optional[tuple[float, float]] = None  # stem end away from the head


@dataclass(frozen=True)
class Note:
    head_gid: int
    position: int
    pitch: Optional[str]
    duration_beats: Optional[float]   # None marks an inconsistent combination
    component_cids: tuple[int, ...]
    accidental: Optional[str] = None

    @property
    def inconsistent(self) -> bool:
        return self.duration_beats is None


@dataclass(frozen=True)
class Measure:
    index: int
    symbol_ids: tuple[str, ...]   # "note:<gid>" / "rest:<gid>" in x-order
    beat_total: float


def pitch_name(position: int, clef_kind: str) -> str:
    """Letter-name pitch for a staff position under a clef, e.g. E4."""
    base = CLEF_POSITION_BASE[clef_kind]
    n = base + position
    return f"{LETTERS[n % 7]}{n // 7}"


def _near(p: Point, xy: tuple[float, float], limit: float) -> bool:
    return math.hypot(p.x - xy[0], p.y - xy[1]) <= limit


def _stroke_ends_near(s: Stroke, xy: tuple[float, float], limit: float) -> bool:
    return _near(s.start, xy, limit) or _near(s.end, xy, limit)


def classify_stem(s: Stroke, heads: Sequence[GlyphSymbol], staff: StaffModel,
                  config: RecognizerConfig = DEFAULT_CONFIG
                  ) -> Optional[NoteComponent]:
    """Near-vertical line touching a head's left-bottom or right-top corner."""
    step = staff.step
    if straightness(s) < config.component_straightness_min:
        return None
    if endpoint_inverse_slope_ratio(s) >= config.stem_slope_max:
        return None
    length = s.start.dist(s.end)
    if not (config.stem_min_length_steps * step <= length
            <= config.stem_max_length_steps * step):
        return None
    limit = config.attach_distance_steps * step
    for head in heads:
        b = head.bbox
        for corner in ((b.min_x, b.max_y), (b.max_x, b.min_y)):
            for end, other in ((s.start, s.end), (s.end, s.start)):
                if _near(end, corner, limit):
                    return NoteComponent(STEM, (s.id,), s.bbox(), head.gid,
                                         free_end=(other.x, other.y))
    return None


def classify_flag(s: Stroke, stems: Sequence[NoteComponent], staff: StaffModel,
                  config: RecognizerConfig = DEFAULT_CONFIG
                  ) -> Optional[NoteComponent]:
    """Ascending/descending stroke off a stem's free end whose length sits
    between the bbox diagonal and two right-angle sides."""
    step = staff.step
    box = s.bbox()
    w, h = box.width, box.height
    if not (config.flag_min_height_steps * step <= h
            <= config.flag_max_height_steps * step):
        return None
    slope = endpoint_slope_ratio(s)
    if not (config.flag_slope_min <= slope <= config.flag_slope_max):
        return None
    L = path_length(s)
    diag = math.hypot(w, h)
    slack = config.flag_length_slack
    if not (diag * (1 - slack) <= L <= (w + h) * (1 + slack)):
        return None
    limit = config.attach_distance_steps * step
    for stem in stems:
        if stem.free_end and _stroke_ends_near(s, stem.free_end, limit):
            return NoteComponent(FLAG, (s.id,), box, stem.cid)
    return None


def classify_dot(s: Stroke, heads: Sequence[GlyphSymbol], staff: StaffModel,
                 config: RecognizerConfig = DEFAULT_CONFIG
                 ) -> Optional[NoteComponent]:
    """A tap beside a head: at most two raw points, or (for high-frequency
    capture) a blob with a tiny bbox diagonal."""
    step = staff.step
    box = s.bbox()
    if len(s.points) > config.dot_max_points and box.diagonal >= config.dot_max_diagonal_steps * step:
        return None
    limit = config.attach_distance_steps * step
    cx, cy = box.center
    for head in heads:
        target = (head.bbox.max_x, head.bbox.center[1])
        if cx >= head.bbox.max_x - 1e-9 and math.hypot(cx - target[0], cy - target[1]) <= limit:
            return NoteComponent(DOT, (s.id,), box, head.gid)
    return None


def classify_beam(s: Stroke, stems: Sequence[NoteComponent], staff: StaffModel,
                  config: RecognizerConfig = DEFAULT_CONFIG
                  ) -> Optional[NoteComponent]:
    """Straight line joining the free ends of two distinct stems."""
    step = staff.step
    if straightness(s) < config.component_straightness_min:
        return None
    limit = config.attach_distance_steps * step
    hit_a = hit_b = None
    for stem in stems:
        if stem.free_end is None:
            continue
        if _near(s.start, stem.free_end, limit) and hit_a is None:
            hit_a = stem
        elif _near(s.end, stem.free_end, limit) and hit_b is None:
            hit_b = stem
    if hit_a is None or hit_b is None or hit_a.cid == hit_b.cid:
        return None
    return NoteComponent(BEAM, (s.id,), s.bbox(), hit_a.cid, anchor2=hit_b.cid)


def classify_note_accidental(strokes: Sequence[Stroke],
                             heads: Sequence[GlyphSymbol], staff: StaffModel,
                             library: TemplateLibrary,
                             config: RecognizerConfig = DEFAULT_CONFIG
                             ) -> Optional[NoteComponent]:
    """Sharp/flat to the left of a head at the head's staff position."""
    m = _family_match(strokes, library, ACCIDENTAL_LABELS, config)
    if m is None:
        return None
    box = bbox_of_strokes(strokes)
    step = staff.step
    if not (config.accidental_min_height_steps * step <= box.height
            <= config.accidental_max_height_steps * step):
        return None
    position = staff.snap_position(box.center[1])
    best = None
    for head in heads:
        if head.position != position:
            continue
        gap = head.bbox.min_x - box.max_x
        if gap < -0.25 * step or gap > config.note_accidental_max_offset_steps * step:
            continue
        if best is None or gap < best[0]:
            best = (gap, head)
    if best is None:
        return None
    kind = ACCIDENTAL_SHARP if m.label == SHARP else ACCIDENTAL_FLAT
    return NoteComponent(kind, tuple(s.id for s in strokes), box, best[1].gid)


def classify_ledger_line(s: Stroke, heads: Sequence[GlyphSymbol],
                         staff: StaffModel,
                         config: RecognizerConfig = DEFAULT_CONFIG
                         ) -> Optional[NoteComponent]:
    """Short horizontal line through a head center outside the staff, on a
    legal ledger position (even positions beyond the staff)."""
    step = staff.step
    if straightness(s) < config.component_straightness_min:
        return None
    if endpoint_slope_ratio(s) >= config.ledger_slope_max:
        return None
    length = s.start.dist(s.end)
    if not (config.ledger_min_length_steps * step <= length
            <= config.ledger_max_length_steps * step):
        return None
    box = s.bbox()
    mean_y = box.center[1]
    pos = staff.snap_position(mean_y)
    legal = pos % 2 == 0 and (pos < 0 or pos > 8)
    if not legal:
        return None
    if abs(mean_y - staff.position_to_y(pos)) > config.ledger_position_tolerance_steps * step:
        return None
    for head in heads:
        if head.position is None or 0 <= head.position <= 8:
            continue
        hx, hy = head.bbox.center
        if box.min_x <= hx <= box.max_x and abs(hy - mean_y) <= 0.75 * step:
            return NoteComponent(LEDGER_LINE, (s.id,), box, head.gid)
    return None


def _base_duration(filled: bool, has_stem: bool, eighth_marks: int) -> Optional[float]:
    """Duration table over head fill, stem, and flag/beam marks.

    Returns quarter-note beats, or None for combinations outside the table
    (flag without stem is unreachable; these are fill/stem mismatches).
    """
    if not has_stem:
        if eighth_marks > 0:
            return None
        return 4.0 if not filled else None
    if eighth_marks == 0:
        return 1.0 if filled else 2.0
    if eighth_marks > 1:
        return None
    return 0.5 if filled else None


def assemble_notes(heads: Sequence[GlyphSymbol],
                   components: Sequence[NoteComponent],
                   clef_kind: Optional[str]) -> list[Note]:
    notes = []
    for head in heads:
        attached = [c for c in components
                    if c.anchor == head.gid and c.kind != BEAM]
        stems = [c for c in attached if c.kind == STEM]
        stem_cids = {c.cid for c in stems}
        flags = [c for c in components
                 if c.kind == FLAG and c.anchor in stem_cids]
        beams = [c for c in components if c.kind == BEAM
                 and (c.anchor in stem_cids or c.anchor2 in stem_cids)]
        dots = [c for c in attached if c.kind == DOT]
        accidentals = [c for c in attached
                       if c.kind in (ACCIDENTAL_SHARP, ACCIDENTAL_FLAT)]
        filled = head.kind == NOTE_HEAD_FILLED
        # a beam and a flag are duration-equivalent eighth marks, but two
        # flags on one stem fall outside the table
        marks = len(flags) if not beams else max(len(flags), 1)
        duration = _base_duration(filled, bool(stems), marks)
        if duration is not None:
            duration *= 1.5 ** len(dots)
        position = head.position if head.position is not None else 0
        pitch = pitch_name(position, clef_kind) if clef_kind else None
        cids = tuple(c.cid for c in attached) + tuple(c.cid for c in flags) \
            + tuple(c.cid for c in beams)
        notes.append(Note(head.gid, position, pitch, duration, cids,
                          accidentals[0].kind if accidentals else None))
    return notes


def assemble_measures(notes: Sequence[Note], heads_by_gid: dict[int, GlyphSymbol],
                      rests: Sequence[GlyphSymbol], bars: Sequence[GlyphSymbol]
                      ) -> list[Measure]:
    """Partition notes and rests at bar-line x-coordinates; regions without
    any symbol (e.g. after a closing bar) are dropped."""
    boundaries = sorted(b.bbox.center[0] for b in bars)
    items = []
    for n in notes:
        x = heads_by_gid[n.head_gid].bbox.center[0]
        beats = n.duration_beats if n.duration_beats is not None else 0.0
        items.append((x, f"note:{n.head_gid}", beats))
    for r in rests:
        items.append((r.bbox.center[0], f"rest:{r.gid}", REST_DURATIONS[r.kind]))
    items.sort()
    regions: list[list[tuple[float, str, float]]] = [[] for _ in range(len(boundaries) + 1)]
    for item in items:
        idx = sum(1 for b in boundaries if item[0] > b)
        regions[idx].append(item)
    measures = []
    for region in regions:
        if not region:
            continue
        measures.append(Measure(len(measures),
                                tuple(sym for _, sym, _ in region),
                                sum(beats for _, _, beats in region)))
    return measures

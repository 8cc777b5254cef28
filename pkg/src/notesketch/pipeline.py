"""Incremental recognition pipeline.

Strokes stream into a Scene one at a time. Each new stroke (together with
combinations of still-pending strokes, smallest and most recent first) is
offered to the classifier stages in fixed order: staff lines, then
clef/key/beat, then rest/note-head/measure, then note components. The first
acceptance wins; unaccepted strokes stay pending for later context.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import glyphs as G
from . import notes as N
from .config import RecognizerConfig, DEFAULT_CONFIG
from .errors import NothingToUndo, OverlappingLines
from .geometry import Stroke
from .scenedoc import (BarEntry, NoteEntry, RestEntry, StaffGeometry,
                       SymbolicScene)
from .staff import StaffLineCandidate, StaffModel, assemble_staff, classify_staff_line
from .templates import TemplateLibrary

SYMBOL_RECOGNIZED = "symbol_recognized"
SYMBOL_REVOKED = "symbol_revoked"
STAFF_ASSEMBLED = "staff_assembled"
PENDING = "pending"

HEAD_KINDS = (G.NOTE_HEAD_EMPTY, G.NOTE_HEAD_FILLED)
BAR_KINDS = (G.BAR_SINGLE, G.BAR_DOUBLE)


@dataclass(frozen=True)
class SceneEvent:
    kind: str
    what: str                 # human-readable tag, e.g. "treble_clef"
    stroke_ids: tuple[int, ...] = ()


class _CachingMatcher:
    """Memoizes library matches per stroke-id set; stroke ids are unique
    within a scene and strokes are immutable, so entries never go stale."""

    def __init__(self, library: TemplateLibrary):
        self._library = library
        self._cache: dict[tuple[int, ...], object] = {}
        self.size = library.size

    def match(self, strokes: Sequence[Stroke], class_filter=None):
        if class_filter is not None:
            return self._library.match(strokes, class_filter)
        key = tuple(sorted(s.id for s in strokes))
        if key not in self._cache:
            self._cache[key] = self._library.match(strokes)
        return self._cache[key]


class Scene:
    """Evolving interpretation of one sketch session."""

    def __init__(self, canvas_width: float, canvas_height: float,
                 library: TemplateLibrary,
                 config: RecognizerConfig = DEFAULT_CONFIG):
        self.canvas_width = canvas_width
        self.canvas_height = canvas_height
        self.library = library
        self.config = config
        self._matcher = _CachingMatcher(library)
        self._reset_state()
        self.raw_strokes: list[Stroke] = []
        self._next_stroke_id = 1

    def _reset_state(self):
        self.pending: list[Stroke] = []
        self.frozen_ids: set[int] = set()
        self.staff_candidates: list[StaffLineCandidate] = []
        self.staff_strokes: list[Stroke] = []
        self.staff: Optional[StaffModel] = None
        self.glyphs: list[G.GlyphSymbol] = []
        self.components: list[N.NoteComponent] = []
        self.time_signature: Optional[G.TimeSignature] = None
        self.notes: list[N.Note] = []
        self.measures: list[N.Measure] = []
        self._fused_digit_gids: set[int] = set()
        self._next_gid = 1
        self._next_cid = 1

    # ------------------------------------------------------------------ views

    @property
    def clef(self) -> Optional[G.GlyphSymbol]:
        for g in self.glyphs:
            if g.kind in G.CLEF_LABELS:
                return g
        return None

    def _heads(self) -> list[G.GlyphSymbol]:
        return [g for g in self.glyphs if g.kind in HEAD_KINDS]

    def _rests(self) -> list[G.GlyphSymbol]:
        return [g for g in self.glyphs if g.kind in G.REST_DURATIONS]

    def _bars(self) -> list[G.GlyphSymbol]:
        return [g for g in self.glyphs if g.kind in BAR_KINDS]

    def _key_accidentals(self) -> list[G.GlyphSymbol]:
        return sorted((g for g in self.glyphs if g.kind in G.ACCIDENTAL_LABELS),
                      key=lambda g: g.bbox.center[0])

    def _pending_digits(self) -> list[G.GlyphSymbol]:
        return [g for g in self.glyphs
                if g.kind in G.DIGIT_LABELS and g.gid not in self._fused_digit_gids]

    def all_stroke_ids(self) -> dict[str, set[int]]:
        """Stroke-id partition by owner category (for invariant checks)."""
        return {
            "pending": {s.id for s in self.pending},
            "staff": {s.id for s in self.staff_strokes},
            "glyphs": {i for g in self.glyphs for i in g.stroke_ids},
            "components": {i for c in self.components for i in c.stroke_ids},
        }

    # -------------------------------------------------------------- mutations

    def add_stroke(self, stroke: Stroke) -> list[SceneEvent]:
        if any(s.id == stroke.id for s in self.raw_strokes):
            raise ValueError(f"duplicate stroke id {stroke.id}")
        self.raw_strokes.append(stroke)
        self._next_stroke_id = max(self._next_stroke_id, stroke.id + 1)
        self.pending.append(stroke)
        events = self._recognize()
        if any(s.id == stroke.id for s in self.pending):
            events.append(SceneEvent(PENDING, "unclassified", (stroke.id,)))
        return events

    def add_points(self, xy, stroke_id: Optional[int] = None) -> list[SceneEvent]:
        sid = stroke_id if stroke_id is not None else self._next_stroke_id
        return self.add_stroke(Stroke.from_xy(xy, id=sid))

    def undo(self) -> list[SceneEvent]:
        """Remove the most recent stroke and replay the rest in order."""
        if not self.raw_strokes:
            raise NothingToUndo("scene has no strokes")
        return self._rebuild(self.raw_strokes[:-1])

    def clear(self) -> list[SceneEvent]:
        ids = tuple(s.id for s in self.raw_strokes)
        self.raw_strokes = []
        self._reset_state()
        return [SceneEvent(SYMBOL_REVOKED, "cleared", ids)]

    def _rebuild(self, strokes: list[Stroke]) -> list[SceneEvent]:
        before = self._signature()
        self.raw_strokes = []
        self._reset_state()
        for s in strokes:
            self.raw_strokes.append(s)
            self.pending.append(s)
            self._recognize()
        after = self._signature()
        events = [SceneEvent(SYMBOL_REVOKED, kind, ids)
                  for kind, ids in sorted(before - after)]
        events += [SceneEvent(SYMBOL_RECOGNIZED, kind, ids)
                   for kind, ids in sorted(after - before)]
        return events

    def _signature(self) -> set[tuple[str, tuple[int, ...]]]:
        sig = {(g.kind, g.stroke_ids) for g in self.glyphs}
        sig |= {(c.kind, c.stroke_ids) for c in self.components}
        if self.staff is not None:
            sig.add(("staff", tuple(s.id for s in self.staff_strokes)))
        return sig

    # ------------------------------------------------------------ recognition

    def _active_pending(self) -> list[Stroke]:
        return [s for s in self.pending if s.id not in self.frozen_ids]

    def _combos(self):
        active = list(reversed(self._active_pending()))
        top = min(self.config.max_combination_size, len(active))
        for size in range(1, top + 1):
            for combo in itertools.combinations(active, size):
                yield combo

    def _recognize(self) -> list[SceneEvent]:
        events: list[SceneEvent] = []
        changed = True
        while changed:
            changed = False
            for stage in (self._stage_staff, self._stage_clef, self._stage_key,
                          self._stage_beat, self._stage_rest, self._stage_head,
                          self._stage_bar, self._stage_components):
                for combo in self._combos():
                    if stage(combo, events):
                        changed = True
                        break
                if changed:
                    break
        overflow = len(self._active_pending()) - self.config.pending_cap
        if overflow > 0:
            for s in self._active_pending()[:overflow]:
                self.frozen_ids.add(s.id)
                events.append(SceneEvent(PENDING, "unrecognized", (s.id,)))
        return events

    def _consume(self, combo: Sequence[Stroke]):
        ids = {s.id for s in combo}
        self.pending = [s for s in self.pending if s.id not in ids]
        self.frozen_ids -= ids

    def _add_glyph(self, glyph: G.GlyphSymbol, events: list[SceneEvent]) -> G.GlyphSymbol:
        glyph = dataclasses.replace(glyph, gid=self._next_gid)
        self._next_gid += 1
        self.glyphs.append(glyph)
        events.append(SceneEvent(SYMBOL_RECOGNIZED, glyph.kind, glyph.stroke_ids))
        self._reassemble()
        return glyph

    def _add_component(self, comp: N.NoteComponent, events: list[SceneEvent]):
        comp = dataclasses.replace(comp, cid=self._next_cid)
        self._next_cid += 1
        self.components.append(comp)
        events.append(SceneEvent(SYMBOL_RECOGNIZED, comp.kind, comp.stroke_ids))
        self._reassemble()

    def _reassemble(self):
        heads = self._heads()
        clef = self.clef
        self.notes = N.assemble_notes(heads, self.components,
                                      clef.kind if clef else None)
        self.measures = N.assemble_measures(
            self.notes, {h.gid: h for h in heads}, self._rests(), self._bars())

    # stages ----------------------------------------------------------------

    def _stage_staff(self, combo, events) -> bool:
        if self.staff is not None or len(combo) != 1:
            return False
        cand = classify_staff_line(combo[0], self.canvas_width, self.config)
        if cand is None:
            return False
        self._consume(combo)
        self.staff_candidates.append(cand)
        self.staff_strokes.append(combo[0])
        events.append(SceneEvent(SYMBOL_RECOGNIZED, "staff_line", (combo[0].id,)))
        if len(self.staff_candidates) == 5:
            try:
                self.staff = assemble_staff(self.staff_candidates, self.config)
                events.append(SceneEvent(
                    STAFF_ASSEMBLED, "staff",
                    tuple(s.id for s in self.staff_strokes)))
            except OverlappingLines:
                # keep the candidates; the staff simply never assembles
                pass
        return True

    def _stage_clef(self, combo, events) -> bool:
        if self.staff is None or self.clef is not None:
            return False
        glyph = G.classify_clef(combo, self.staff, self._matcher, self.config)
        if glyph is None:
            return False
        self._consume(combo)
        self._add_glyph(glyph, events)
        return True

    def _stage_key(self, combo, events) -> bool:
        if self.staff is None or self.clef is None:
            return False
        glyph = G.classify_accidental(combo, self.staff, self._matcher, self.config)
        if glyph is None:
            return False
        self._consume(combo)
        self._add_glyph(glyph, events)
        return True

    def _stage_beat(self, combo, events) -> bool:
        if self.staff is None:
            return False
        glyph = G.classify_digit(combo, self.staff, self._matcher, self.config)
        if glyph is None:
            return False
        self._consume(combo)
        glyph = self._add_glyph(glyph, events)
        if self.time_signature is None:
            fused = G.try_fuse_time_signature(self._pending_digits(),
                                              self.staff, self.config)
            if fused is not None:
                sig, upper, lower = fused
                self.time_signature = sig
                self._fused_digit_gids |= {upper.gid, lower.gid}
                events.append(SceneEvent(
                    SYMBOL_RECOGNIZED,
                    f"time_signature_{sig.numerator}_{sig.denominator}",
                    sig.stroke_ids))
        return True

    def _stage_rest(self, combo, events) -> bool:
        if self.staff is None:
            return False
        glyph = G.classify_rest(combo, self.staff, self._matcher, self.config)
        if glyph is None:
            return False
        self._consume(combo)
        self._add_glyph(glyph, events)
        return True

    def _stage_head(self, combo, events) -> bool:
        if self.staff is None:
            return False
        glyph = G.classify_note_head(combo, self.staff, self.config)
        if glyph is not None:
            self._consume(combo)
            self._add_glyph(glyph, events)
            return True
        if len(combo) == 1:
            for i, head in enumerate(self.glyphs):
                if head.kind != G.NOTE_HEAD_EMPTY:
                    continue
                upgraded = G.fill_existing_head(combo[0], head, self.staff,
                                                self.config)
                if upgraded is not None:
                    self._consume(combo)
                    self.glyphs[i] = upgraded
                    events.append(SceneEvent(SYMBOL_RECOGNIZED, upgraded.kind,
                                             upgraded.stroke_ids))
                    self._reassemble()
                    return True
        return False

    def _stage_bar(self, combo, events) -> bool:
        if self.staff is None or len(combo) != 1:
            return False
        glyph = G.classify_measure_bar(combo[0], self.staff, self.config)
        if glyph is None:
            return False
        self._consume(combo)
        fused = G.try_fuse_double_bar(glyph, self._bars(), self.staff, self.config)
        if fused is not None:
            double, absorbed = fused
            self.glyphs = [g for g in self.glyphs if g.gid != absorbed.gid]
            self._add_glyph(double, events)
        else:
            self._add_glyph(glyph, events)
        return True

    def _stage_components(self, combo, events) -> bool:
        if self.staff is None:
            return False
        heads = self._heads()
        if not heads:
            return False
        stems = [c for c in self.components if c.kind == N.STEM]
        comp = None
        if len(combo) == 1:
            s = combo[0]
            comp = N.classify_stem(s, heads, self.staff, self.config)
            if comp is None:
                comp = N.classify_flag(s, stems, self.staff, self.config)
            if comp is None:
                comp = N.classify_dot(s, heads, self.staff, self.config)
            if comp is None:
                comp = N.classify_beam(s, stems, self.staff, self.config)
        if comp is None:
            comp = N.classify_note_accidental(combo, heads, self.staff,
                                              self._matcher, self.config)
        if comp is None and len(combo) == 1:
            comp = N.classify_ledger_line(combo[0], heads, self.staff, self.config)
        if comp is None:
            return False
        self._consume(combo)
        self._add_component(comp, events)
        return True

    # ---------------------------------------------------------------- export

    def to_symbolic(self) -> SymbolicScene:
        staff = None
        if self.staff is not None:
            staff = StaffGeometry(tuple(self.staff.line_ys), self.staff.step)
        clef = self.clef
        key = tuple((g.kind, int(g.position)) for g in self._key_accidentals())
        time_sig = None
        if self.time_signature is not None:
            time_sig = (self.time_signature.numerator,
                        self.time_signature.denominator)
        heads = {h.gid: h for h in self._heads()}
        entries = []
        for note in self.notes:
            x = heads[note.head_gid].bbox.center[0]
            entries.append((x, 0, NoteEntry(note.pitch, note.duration_beats,
                                            note.position)))
        for rest in self._rests():
            entries.append((rest.bbox.center[0], 0, RestEntry(rest.kind)))
        for bar in self._bars():
            entries.append((bar.bbox.center[0], 1, BarEntry(bar.kind)))
        entries.sort(key=lambda e: (e[0], e[1]))
        return SymbolicScene(staff, clef.kind if clef else None, key, time_sig,
                             tuple(e[2] for e in entries))

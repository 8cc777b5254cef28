"""Incremental scene pipeline: stroke streaming, events, undo/clear,
pending buffer behavior."""

import random

import pytest

from notesketch import synth as SY
from notesketch.errors import NothingToUndo
from notesketch.geometry import Stroke
from notesketch.pipeline import (PENDING, STAFF_ASSEMBLED, SYMBOL_RECOGNIZED,
                                 SYMBOL_REVOKED, Scene)

TOP, STEP = 100.0, 20.0
BOTTOM = TOP + 4 * STEP
W, H = 800.0, 400.0


@pytest.fixture
def synth():
    return SY.StrokeSynth(random.Random(11), noise_sigma=0.0, scale_jitter=0.0)


@pytest.fixture
def scene(library):
    return Scene(W, H, library)


def draw_staff(scene, synth):
    events = []
    for s in synth.staff_lines(TOP, STEP, 10, 790):
        events += scene.add_stroke(s)
    return events


def draw_note(scene, synth, position, x=400.0, filled=False, stem=False,
              flag=False):
    cy = BOTTOM - position * STEP / 2.0
    rx, ry = 13.0, 10.0
    events = list(scene.add_stroke(synth.ellipse(x, cy, rx, ry)))
    if filled:
        events += scene.add_stroke(
            synth.zigzag_fill(x - rx, cy - ry, x + rx, cy + ry))
    if stem:
        sx, sy = x + rx, cy - ry * 0.4
        events += scene.add_stroke(
            synth.vertical_line(sx, sy - 3 * STEP, sy, STEP))
        if flag:
            events += scene.add_stroke(
                synth.stroke([(0.0, 0.0), (0.6, 0.5), (0.8, 1.3)], STEP,
                             (sx, sy - 3 * STEP)))
    return events


class TestStaffFlow:
    def test_five_lines_assemble(self, scene, synth):
        events = draw_staff(scene, synth)
        assert scene.staff is not None
        assert sum(1 for e in events if e.what == "staff_line") == 5
        assembled = [e for e in events if e.kind == STAFF_ASSEMBLED]
        assert len(assembled) == 1
        assert len(assembled[0].stroke_ids) == 5

    def test_four_lines_stay_partial(self, scene, synth):
        for s in synth.staff_lines(TOP, STEP, 10, 790)[:4]:
            scene.add_stroke(s)
        assert scene.staff is None
        assert len(scene.staff_candidates) == 4

    def test_symbols_wait_for_staff(self, scene, synth):
        s = synth.stroke(SY.TREBLE_CLEF, STEP, (300, TOP))
        events = scene.add_stroke(s)
        assert scene.glyphs == []
        assert events[-1].kind == PENDING


class TestRecognitionFlow:
    def test_clef_then_key(self, scene, synth):
        draw_staff(scene, synth)
        scene.add_stroke(synth.stroke(SY.TREBLE_CLEF, STEP, (100, TOP)))
        assert scene.clef is not None
        cy = BOTTOM - 8 * STEP / 2.0
        scene.add_stroke(synth.stroke(SY.SHARP, STEP,
                                      (240, cy - 1.025 * STEP)))
        sym = scene.to_symbolic()
        assert sym.clef == "treble_clef"
        assert sym.key == (("sharp", 8),)

    def test_accidental_without_clef_stays_pending(self, scene, synth):
        draw_staff(scene, synth)
        cy = BOTTOM - 8 * STEP / 2.0
        events = scene.add_stroke(
            synth.stroke(SY.SHARP, STEP, (240, cy - 1.025 * STEP)))
        assert events[-1].kind == PENDING
        assert scene.to_symbolic().key == ()

    def test_time_signature_fusion_event(self, scene, synth):
        draw_staff(scene, synth)
        for value, center in ((3, 1.0), (4, 3.0)):
            control = [(px * SY.DIGIT_WIDTH_STEPS, py * SY.DIGIT_HEIGHT_STEPS)
                       for px, py in SY.DIGITS[value]]
            events = scene.add_stroke(synth.stroke(
                control, STEP,
                (300, TOP + (center - SY.DIGIT_HEIGHT_STEPS / 2) * STEP)))
        assert scene.to_symbolic().time_signature == (3, 4)
        assert any(e.what == "time_signature_3_4" for e in events)

    def test_eighth_note_assembly(self, scene, synth):
        draw_staff(scene, synth)
        draw_note(scene, synth, 2, filled=True, stem=True, flag=True)
        assert len(scene.notes) == 1
        n = scene.notes[0]
        assert n.duration_beats == pytest.approx(0.5)
        assert n.position == 2
        assert scene.pending == []

    def test_fill_after_head_upgrades(self, scene, synth):
        draw_staff(scene, synth)
        draw_note(scene, synth, 3)
        assert scene.glyphs[-1].kind == "note_head_empty"
        h = scene.glyphs[-1]
        cx, cy = h.bbox.center
        scene.add_stroke(synth.zigzag_fill(h.bbox.min_x, h.bbox.min_y,
                                           h.bbox.max_x, h.bbox.max_y))
        assert scene._heads()[0].kind == "note_head_filled"

    def test_double_bar_fusion(self, scene, synth):
        draw_staff(scene, synth)
        scene.add_stroke(synth.vertical_line(500, TOP, BOTTOM, STEP))
        scene.add_stroke(synth.vertical_line(507, TOP, BOTTOM, STEP))
        bars = scene._bars()
        assert [b.kind for b in bars] == ["bar_double"]

    def test_bass_clef_three_stroke_combo(self, scene, synth):
        draw_staff(scene, synth)
        scene.add_stroke(synth.stroke(SY.BASS_CLEF_BODY, STEP, (300, TOP)))
        for dx, dy in SY.BASS_CLEF_DOTS:
            scene.add_stroke(synth.blob(300 + dx * STEP, TOP + dy * STEP,
                                        0.12 * STEP))
        assert scene.to_symbolic().clef == "bass_clef"
        assert scene.pending == []


class TestUndoClear:
    def test_undo_empty_raises(self, scene):
        with pytest.raises(NothingToUndo):
            scene.undo()

    def test_undo_removes_last_symbol(self, scene, synth):
        draw_staff(scene, synth)
        scene.add_stroke(synth.vertical_line(500, TOP, BOTTOM, STEP))
        assert scene._bars()
        events = scene.undo()
        assert not scene._bars()
        assert any(e.kind == SYMBOL_REVOKED and e.what == "bar_single"
                   for e in events)

    def test_undo_downgrades_double_bar(self, scene, synth):
        draw_staff(scene, synth)
        scene.add_stroke(synth.vertical_line(500, TOP, BOTTOM, STEP))
        scene.add_stroke(synth.vertical_line(507, TOP, BOTTOM, STEP))
        events = scene.undo()
        assert [b.kind for b in scene._bars()] == ["bar_single"]
        kinds = {(e.kind, e.what) for e in events}
        assert (SYMBOL_REVOKED, "bar_double") in kinds
        assert (SYMBOL_RECOGNIZED, "bar_single") in kinds

    def test_undo_mid_staff(self, scene, synth):
        draw_staff(scene, synth)
        scene.undo()
        assert scene.staff is None
        assert len(scene.staff_candidates) == 4

    def test_clear_resets_everything(self, scene, synth):
        draw_staff(scene, synth)
        draw_note(scene, synth, 2, stem=True)
        events = scene.clear()
        assert scene.raw_strokes == []
        assert scene.glyphs == [] and scene.notes == []
        assert scene.to_symbolic().staff is None
        assert events[0].what == "cleared"

    def test_duplicate_stroke_id_rejected(self, scene):
        scene.add_stroke(Stroke.from_xy([(0, 0), (1, 1)], id=5))
        with pytest.raises(ValueError):
            scene.add_stroke(Stroke.from_xy([(2, 2), (3, 3)], id=5))


class TestPendingBuffer:
    def test_overflow_freezes_oldest(self, scene):
        cap = scene.config.pending_cap
        for i in range(cap + 3):
            scene.add_stroke(Stroke.from_xy(
                [(i * 7, 300), (i * 7 + 3, 305), (i * 7 + 1, 311)], id=i + 1))
        assert len(scene.pending) == cap + 3
        assert len(scene.frozen_ids) == 3
        assert scene.frozen_ids == {1, 2, 3}

    def test_partition_invariant(self, scene, synth):
        draw_staff(scene, synth)
        draw_note(scene, synth, 2, filled=True, stem=True, flag=True)
        scene.add_stroke(Stroke.from_xy([(700, 300), (702, 330), (698, 350)]))
        owners = scene.all_stroke_ids()
        seen = [i for ids in owners.values() for i in ids]
        assert len(seen) == len(set(seen))
        assert set(seen) == {s.id for s in scene.raw_strokes}

    def test_determinism(self, library, synth):
        strokes = []
        s1 = Scene(W, H, library)
        synth2 = SY.StrokeSynth(random.Random(11), noise_sigma=0.0,
                                scale_jitter=0.0)
        draw_staff(s1, synth)
        draw_note(s1, synth, 2, filled=True, stem=True)
        s2 = Scene(W, H, library)
        for s in s1.raw_strokes:
            s2.add_stroke(s)
        assert s1.to_symbolic() == s2.to_symbolic()

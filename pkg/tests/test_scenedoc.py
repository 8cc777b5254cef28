"""Symbolic scene XML serialization and validation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from notesketch.errors import MalformedDocument
from notesketch.scenedoc import (BarEntry, NoteEntry, RestEntry,
                                 StaffGeometry, SymbolicScene,
                                 deserialize_scene, serialize_scene)

STAFF = StaffGeometry((100.0, 120.0, 140.0, 160.0, 180.0), 20.0)


def full_scene():
    return SymbolicScene(
        STAFF, "treble_clef", (("sharp", 8), ("sharp", 5)), (4, 4),
        (NoteEntry("B4", 1.0, 4), RestEntry("quarter_rest"),
         NoteEntry("C5", None, 5), BarEntry("bar_single"),
         NoteEntry("D5", 4.0, 6), BarEntry("bar_double")))


def random_scene(rng):
    staff = None
    if rng.random() < 0.8:
        top = rng.uniform(50, 200)
        step = rng.uniform(10, 40)
        staff = StaffGeometry(tuple(top + i * step for i in range(5)), step)
    clef = rng.choice([None, "treble_clef", "bass_clef"])
    key = tuple((rng.choice(["sharp", "flat"]), rng.randint(-4, 12))
                for _ in range(rng.randint(0, 3)))
    time = rng.choice([None, (4, 4), (3, 4), (6, 8), (2, 2)])
    timeline = []
    for _ in range(rng.randint(0, 8)):
        kind = rng.random()
        if kind < 0.5:
            timeline.append(NoteEntry(
                rng.choice([None, "A4", "C5", "G2"]),
                rng.choice([None, 0.5, 1.0, 1.5, 2.0, 4.0]),
                rng.randint(-4, 12)))
        elif kind < 0.8:
            timeline.append(RestEntry(rng.choice(
                ["whole_rest", "half_rest", "quarter_rest", "eighth_rest"])))
        else:
            timeline.append(BarEntry(rng.choice(["bar_single", "bar_double"])))
    return SymbolicScene(staff, clef, key, time, tuple(timeline))


class TestRoundTrip:
    def test_full_scene(self):
        scene = full_scene()
        assert deserialize_scene(serialize_scene(scene)) == scene

    def test_empty_scene(self):
        scene = SymbolicScene()
        assert deserialize_scene(serialize_scene(scene)) == scene

    def test_inconsistent_note_keeps_none_duration(self):
        scene = SymbolicScene(timeline=(NoteEntry("C5", None, 5),))
        back = deserialize_scene(serialize_scene(scene))
        assert back.timeline[0].duration_beats is None

    def test_float_exactness(self):
        scene = SymbolicScene(StaffGeometry(
            (100.1, 120.30000000000001, 140.7, 161.0, 181.33), 20.2075))
        assert deserialize_scene(serialize_scene(scene)) == scene

    def test_100_random_scenes(self):
        rng = random.Random(424242)
        for _ in range(100):
            scene = random_scene(rng)
            assert deserialize_scene(serialize_scene(scene)) == scene


class TestValidation:
    def test_not_xml(self):
        with pytest.raises(MalformedDocument):
            deserialize_scene("{not xml}")

    def test_wrong_root(self):
        with pytest.raises(MalformedDocument) as e:
            deserialize_scene("<score version='1'/>")
        assert "scene" in str(e.value)

    def test_wrong_version(self):
        with pytest.raises(MalformedDocument) as e:
            deserialize_scene("<scene version='99'/>")
        assert "version" in str(e.value)

    def test_staff_wrong_line_count(self):
        with pytest.raises(MalformedDocument):
            deserialize_scene(
                "<scene version='1'><staff step='20'>"
                "<line y='100'/><line y='120'/></staff></scene>")

    def test_unknown_clef(self):
        with pytest.raises(MalformedDocument):
            deserialize_scene("<scene version='1'><clef kind='alto'/></scene>")

    def test_unknown_rest(self):
        with pytest.raises(MalformedDocument):
            deserialize_scene(
                "<scene version='1'><timeline><rest kind='sixteenth_rest'/>"
                "</timeline></scene>")

    def test_unknown_timeline_element(self):
        with pytest.raises(MalformedDocument):
            deserialize_scene(
                "<scene version='1'><timeline><chord/></timeline></scene>")

    def test_missing_attribute_names_location(self):
        with pytest.raises(MalformedDocument) as e:
            deserialize_scene(
                "<scene version='1'><timeline><note/></timeline></scene>")
        assert "position" in str(e.value)


class TestMeasuresView:
    def test_split_and_totals(self):
        scene = full_scene()
        measures = scene.measures()
        assert len(measures) == 2
        # inconsistent note counts as 0 beats
        assert measures[0][1] == pytest.approx(2.0)
        assert measures[1][1] == pytest.approx(4.0)

    def test_empty_regions_skipped(self):
        scene = SymbolicScene(timeline=(BarEntry("bar_single"),
                                        NoteEntry("A4", 1.0, 3),
                                        BarEntry("bar_single")))
        assert len(scene.measures()) == 1

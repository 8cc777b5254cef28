"""Sketch capture file parsing and serialization."""

import pytest

from notesketch.errors import MalformedDocument
from notesketch.sketchio import (Sketch, parse_sketch, sketch_to_dict,
                                 load_sketch, save_sketch)


def doc(strokes):
    return {"canvas": {"width": 800, "height": 400}, "strokes": strokes}


class TestParse:
    def test_basic(self):
        sk = parse_sketch(doc([{"id": 1, "points": [
            {"x": 0, "y": 0, "t": 0}, {"x": 5, "y": 5, "t": 10}]}]))
        assert sk.canvas_width == 800
        assert len(sk.strokes) == 1
        assert sk.strokes[0].points[1].t == 10

    def test_missing_canvas(self):
        with pytest.raises(MalformedDocument):
            parse_sketch({"strokes": []})

    def test_duplicate_ids(self):
        with pytest.raises(MalformedDocument) as e:
            parse_sketch(doc([{"id": 1, "points": [{"x": 0, "y": 0}]},
                              {"id": 1, "points": [{"x": 1, "y": 1}]}]))
        assert "duplicate" in str(e.value)

    def test_decreasing_timestamps(self):
        with pytest.raises(MalformedDocument):
            parse_sketch(doc([{"id": 1, "points": [
                {"x": 0, "y": 0, "t": 10}, {"x": 1, "y": 1, "t": 5}]}]))

    def test_empty_points(self):
        with pytest.raises(MalformedDocument):
            parse_sketch(doc([{"id": 1, "points": []}]))

    def test_bad_coordinate(self):
        with pytest.raises(MalformedDocument):
            parse_sketch(doc([{"id": 1, "points": [{"x": "left", "y": 0}]}]))

    def test_consecutive_duplicates_dropped(self):
        sk = parse_sketch(doc([{"id": 1, "points": [
            {"x": 0, "y": 0}, {"x": 0, "y": 0}, {"x": 1, "y": 1}]}]))
        assert len(sk.strokes[0].points) == 2


class TestRoundTrip:
    def test_save_load(self, tmp_path):
        sk = parse_sketch(doc([{"id": 3, "points": [
            {"x": 0.5, "y": 1.25, "t": 0.0}, {"x": 5.0, "y": 5.0, "t": 2.0}]}]))
        path = str(tmp_path / "s.json")
        save_sketch(sk, path)
        again = load_sketch(path)
        assert again == sk

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        with pytest.raises(MalformedDocument):
            load_sketch(str(path))

    def test_corpus_files_parse(self, corpus_dir):
        import os
        sample = os.path.join(corpus_dir, "staff", "sample_00.json")
        sk = load_sketch(sample)
        assert len(sk.strokes) == 5

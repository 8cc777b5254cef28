"""Stroke geometry primitives: lengths, resampling, normalization
transforms, Hausdorff distance."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from notesketch.errors import DegenerateStroke, EmptySet
from notesketch.geometry import (BoundingBox, Point, Stroke, hausdorff,
                                 path_length, resample, scale_to,
                                 straightness, translate_to_origin)


def S(*xy, id=0):
    return Stroke.from_xy(xy, id=id)


finite_coord = st.floats(min_value=-1e4, max_value=1e4,
                         allow_nan=False, allow_infinity=False)


def stroke_strategy(min_points=2):
    return st.lists(st.tuples(finite_coord, finite_coord),
                    min_size=min_points, max_size=30).map(
        lambda xy: Stroke.from_xy(xy))


class TestStroke:
    def test_empty_stroke_rejected(self):
        with pytest.raises(DegenerateStroke):
            Stroke(())

    def test_nonfinite_rejected(self):
        with pytest.raises(DegenerateStroke):
            S((0, 0), (math.nan, 1))

    def test_captured_drops_consecutive_duplicates(self):
        s = Stroke.captured([Point(0, 0), Point(0, 0), Point(1, 1),
                             Point(1, 1), Point(1, 1), Point(2, 0)])
        assert [(p.x, p.y) for p in s.points] == [(0, 0), (1, 1), (2, 0)]

    def test_captured_keeps_revisits(self):
        # out-and-back revisits are not consecutive duplicates
        s = Stroke.captured([Point(0, 0), Point(1, 0), Point(0, 0)])
        assert len(s.points) == 3

    def test_bbox(self):
        assert S((1, 2), (5, -3)).bbox() == BoundingBox(1, -3, 5, 2)


class TestPathLength:
    def test_single_point_is_zero(self):
        assert path_length(S((0, 0))) == 0.0

    def test_345_triangle(self):
        assert path_length(S((0, 0), (3, 4))) == 5.0

    def test_unit_segments(self):
        assert path_length(S((0, 0), (1, 0), (1, 1), (0, 1))) == 3.0


class TestResample:
    def test_segment_uniform_subdivision(self):
        r = resample(S((0, 0), (10, 0)), 3)
        assert [(p.x, p.y) for p in r.points] == [(0, 0), (5, 0), (10, 0)]

    def test_output_length_64(self):
        r = resample(S((0, 0), (3, 7), (10, 2), (4, 9)), 64)
        assert len(r.points) == 64

    def test_right_angle_arc_walk(self):
        r = resample(S((0, 0), (4, 0), (4, 4)), 5)
        expected = [(0, 0), (2, 0), (4, 0), (4, 2), (4, 4)]
        for p, (x, y) in zip(r.points, expected):
            assert p.x == pytest.approx(x) and p.y == pytest.approx(y)

    def test_zero_length_raises(self):
        with pytest.raises(DegenerateStroke):
            resample(S((5, 5)), 4)

    @given(stroke_strategy(), st.integers(min_value=2, max_value=80))
    @settings(max_examples=60, deadline=None)
    def test_properties(self, s, n):
        if path_length(s) <= 0.0:
            return
        r = resample(s, n)
        assert len(r.points) == n
        # endpoints preserved exactly
        assert (r.start.x, r.start.y) == (s.start.x, s.start.y)
        assert (r.end.x, r.end.y) == (s.end.x, s.end.y)
        # resampling never lengthens the path (interpolation shortcuts)
        assert path_length(r) <= path_length(s) + 1e-6
        # consecutive points are at equal arc-length intervals, so each
        # Euclidean gap is bounded by the arc interval (chord <= arc)
        interval = path_length(s) / (n - 1)
        gaps = [r.points[i].dist(r.points[i + 1]) for i in range(n - 1)]
        assert all(g <= interval * (1 + 1e-6) + 1e-9 for g in gaps)


class TestScaleTranslate:
    def test_larger_dimension_becomes_size(self):
        s = scale_to(S((0, 0), (100, 50)), 250)
        box = s.bbox()
        assert box.width == pytest.approx(250)
        assert box.height == pytest.approx(125)

    def test_identity_when_already_sized(self):
        s = S((0, 0), (250, 250))
        assert scale_to(s, 250).bbox() == s.bbox()

    def test_degenerate_width_scales_height(self):
        s = scale_to(S((7, 0), (7, 80)), 250)
        assert s.bbox().height == pytest.approx(250)
        assert s.bbox().width == 0.0

    def test_zero_size_raises(self):
        with pytest.raises(DegenerateStroke):
            scale_to(S((3, 3)), 250)

    def test_translate_centroid_to_origin(self):
        s = translate_to_origin(S((2, 2), (4, 6)))
        assert sum(p.x for p in s.points) == pytest.approx(0)
        assert sum(p.y for p in s.points) == pytest.approx(0)

    @given(stroke_strategy())
    @settings(max_examples=50, deadline=None)
    def test_translate_idempotent(self, s):
        once = translate_to_origin(s)
        twice = translate_to_origin(once)
        for a, b in zip(once.points, twice.points):
            assert a.x == pytest.approx(b.x, abs=1e-6)
            assert a.y == pytest.approx(b.y, abs=1e-6)


cloud = st.lists(st.tuples(finite_coord, finite_coord),
                 min_size=1, max_size=20).map(np.array)


class TestHausdorff:
    def test_identical_sets_zero(self):
        a = np.array([[0, 0], [1, 1]])
        assert hausdorff(a, a) == 0.0

    def test_known_value(self):
        # one point at distance 5 dominates
        a = np.array([[0.0, 0.0]])
        b = np.array([[0.0, 0.0], [3.0, 4.0]])
        assert hausdorff(a, b) == pytest.approx(5.0)

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            hausdorff(np.empty((0, 2)), np.array([[0, 0]]))

    @given(cloud, cloud)
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, a, b):
        assert hausdorff(a, b) == pytest.approx(hausdorff(b, a))

    @given(cloud, cloud, cloud)
    @settings(max_examples=60, deadline=None)
    def test_triangle_inequality(self, a, b, c):
        assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-6


class TestStraightness:
    def test_perfect_line(self):
        assert straightness(S((0, 0), (10, 3))) == pytest.approx(1.0)

    def test_right_angle(self):
        # chord sqrt(32) over path 8
        assert straightness(S((0, 0), (4, 0), (4, 4))) == pytest.approx(
            math.sqrt(32) / 8)

    def test_single_point_zero(self):
        assert straightness(S((1, 1))) == 0.0

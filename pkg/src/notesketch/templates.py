"""Multi-stroke template matcher.

Candidate strokes and library exemplars go through the same normalization
(per-stroke resampling with arc-length-proportional point budgets, scaling
the combined cloud so its larger dimension is 250 px, centroid translation
to the origin) and are compared by Hausdorff distance over point sets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateStroke, EmptyLibrary
from .geometry import Stroke, Point, hausdorff, path_length, resample

NORMALIZE_SIZE = 250.0
NORMALIZE_POINTS = 64


def _scale_translate(cloud: np.ndarray, size: float) -> np.ndarray:
    mins = cloud.min(axis=0)
    maxs = cloud.max(axis=0)
    big = float(max(maxs - mins))
    if big <= 0.0:
        raise DegenerateStroke("point cloud has no extent")
    cloud = cloud * (size / big)
    return cloud - cloud.mean(axis=0)


def _point_budgets(lengths: Sequence[float], total_points: int) -> list[int]:
    """Split `total_points` across strokes proportionally to arc length.

    Zero-length strokes get one point; every positive-length stroke gets at
    least two. Largest-remainder rounding keeps the sum exact.
    """
    n = len(lengths)
    budgets = [1 if L <= 0.0 else 2 for L in lengths]
    spare = total_points - sum(budgets)
    if spare < 0:
        raise DegenerateStroke(
            f"{n} strokes cannot share a budget of {total_points} points")
    total_len = sum(L for L in lengths if L > 0.0)
    if total_len <= 0.0:
        raise DegenerateStroke("total path length is zero")
    shares = [(spare * L / total_len) if L > 0.0 else 0.0 for L in lengths]
    floors = [int(x) for x in shares]
    for i, f in enumerate(floors):
        budgets[i] += f
    remainder = spare - sum(floors)
    order = sorted(range(n), key=lambda i: shares[i] - floors[i], reverse=True)
    for i in order[:remainder]:
        budgets[i] += 1
    return budgets


def normalize_multistroke(strokes: Sequence[Stroke],
                          size: float = NORMALIZE_SIZE,
                          n_points: int = NORMALIZE_POINTS) -> np.ndarray:
    """Normalize one or more strokes into a 64-point cloud.

    The output is a set for matching purposes: stroke order and drawing
    direction do not affect Hausdorff distance downstream.
    """
    if not strokes:
        raise DegenerateStroke("no strokes to normalize")
    lengths = [path_length(s) for s in strokes]
    budgets = _point_budgets(lengths, n_points)
    parts = []
    for s, L, b in zip(strokes, lengths, budgets):
        if L <= 0.0:
            parts.append(np.array([[s.points[0].x, s.points[0].y]]))
        else:
            parts.append(resample(s, b).xy())
    cloud = np.vstack(parts)
    return _scale_translate(cloud, size)


def similarity_score(d: float, size: float = NORMALIZE_SIZE) -> float:
    """Similarity confidence for a Hausdorff distance `d` at normalization
    size `size`; higher is more similar. Implemented verbatim, unclamped."""
    return 1.0 - abs((1.0 - d) / math.sqrt(2.0 * size * size)) / 10.0


@dataclass(frozen=True)
class Template:
    label: str
    stroke_count: int
    points: np.ndarray  # normalized 64x2 cloud

    def __post_init__(self):
        assert self.points.shape == (NORMALIZE_POINTS, 2)


@dataclass(frozen=True)
class MatchResult:
    label: str
    score: float
    distance: float
    template_index: int


class TemplateLibrary:
    """Immutable set of normalized exemplars, keyed by class label.

    Stored template files keep raw capture strokes; normalization happens
    here at load time.
    """

    def __init__(self, classes: dict[str, list[Template]],
                 size: float = NORMALIZE_SIZE):
        if not classes or any(not ts for ts in classes.values()):
            raise EmptyLibrary("every class needs at least one template")
        self.classes = classes
        self.size = size
        # flat index in (label, template index) order so np.argmin's
        # first-minimum rule reproduces the documented tie-breaks
        self._index = [(label, i)
                       for label in sorted(classes)
                       for i in range(len(classes[label]))]
        self._stack = np.stack([classes[label][i].points
                                for label, i in self._index])
        self._stack_sq = np.einsum("tij,tij->ti", self._stack, self._stack)

    @property
    def labels(self) -> list[str]:
        return sorted(self.classes)

    @staticmethod
    def from_entries(entries: Sequence[tuple[str, Sequence[Stroke]]],
                     size: float = NORMALIZE_SIZE) -> "TemplateLibrary":
        classes: dict[str, list[Template]] = {}
        for label, strokes in entries:
            cloud = normalize_multistroke(strokes, size=size)
            classes.setdefault(label, []).append(
                Template(label, len(strokes), cloud))
        return TemplateLibrary(classes, size=size)

    @staticmethod
    def load(path: str, size: float = NORMALIZE_SIZE) -> "TemplateLibrary":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        entries = []
        for entry in doc["templates"]:
            strokes = [Stroke.captured([Point(float(x), float(y)) for x, y in pts], id=i)
                       for i, pts in enumerate(entry["strokes"])]
            entries.append((entry["label"], strokes))
        return TemplateLibrary.from_entries(entries, size=size)

    def match(self, strokes: Sequence[Stroke],
              class_filter: Optional[set[str]] = None) -> MatchResult:
        """Best class by minimum Hausdorff distance over allowed templates.

        Ties break by lowest distance, then label lexicographic order, then
        lowest template index; iteration order below enforces exactly that.
        """
        if class_filter is not None:
            keep = np.array([label in class_filter for label, _ in self._index])
            if not keep.any():
                raise EmptyLibrary("class filter excludes every library class")
        else:
            keep = np.ones(len(self._index), dtype=bool)
        cloud = normalize_multistroke(strokes, size=self.size)
        # pairwise squared distances input (64,2) vs all templates (T,64,2)
        # via |a-b|^2 = |a|^2 + |b|^2 - 2ab; sqrt applied after the min/max
        cloud_sq = np.einsum("ij,ij->i", cloud, cloud)
        cross = self._stack @ cloud.T
        d2 = self._stack_sq[:, :, None] + cloud_sq[None, None, :] - 2.0 * cross
        np.maximum(d2, 0.0, out=d2)
        dists = np.sqrt(np.maximum(d2.min(axis=2).max(axis=1),
                                   d2.min(axis=1).max(axis=1)))
        dists = np.where(keep, dists, np.inf)
        flat = int(np.argmin(dists))
        label, idx = self._index[flat]
        dist = float(dists[flat])
        return MatchResult(label, similarity_score(dist, self.size), dist, idx)

"""Centralized classifier constants.

Every numeric tolerance the classifiers use lives here so a deployment can
tune them from a single override file (JSON, path given via the
NOTESKETCH_CONFIG environment variable or loaded explicitly).
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class RecognizerConfig:
    # template normalization
    resample_points: int = 64
    normalize_size: float = 250.0

    # matching check: minimum similarity score for template-matched glyphs
    score_threshold: float = 0.85

    # staff line tests
    staff_straightness_min: float = 0.95
    staff_width_coverage_min: float = 0.95
    staff_slope_max: float = 0.05
    staff_min_line_separation: float = 2.0

    # clef definition checks (heights in step units)
    bass_clef_max_height_steps: float = 4.0
    bass_clef_stroke_count: int = 3
    treble_clef_min_height_steps: float = 4.0
    treble_clef_max_height_steps: float = 8.0
    treble_clef_stroke_counts: tuple[int, ...] = (1, 2)
    clef_staff_overlap_min: float = 0.8

    # key signature accidentals
    accidental_min_height_steps: float = 1.0
    accidental_max_height_steps: float = 3.0

    # time signature digits
    digit_min_height_steps: float = 1.5
    digit_max_height_steps: float = 2.5
    time_sig_align_steps: float = 0.5
    time_sig_min_span_steps: float = 3.0
    valid_denominators: tuple[int, ...] = (1, 2, 4, 8, 16)

    # rests
    rest_max_height_steps: float = 4.0
    rest_center_tolerance_steps: float = 1.0
    rect_rest_min_width_steps: float = 0.8
    rect_rest_max_width_steps: float = 2.0
    rect_rest_max_height_steps: float = 0.75
    rect_rest_position_tolerance_steps: float = 0.5
    fill_containment_min: float = 0.8
    dense_blob_length_factor: float = 4.0
    rest_straightness_reject: float = 0.95

    # corner finding (straw-window scheme on the 64-point resampling)
    straw_window: int = 3
    straw_corner_factor: float = 0.95

    # note heads
    head_circumference_tolerance: float = 0.25
    head_aspect_min: float = 0.7
    head_closure_gap_factor: float = 0.2
    head_min_height_steps: float = 0.6
    head_max_height_steps: float = 1.4

    # measure bars
    bar_straightness_min: float = 0.95
    bar_slope_max: float = 0.05
    bar_end_slack_steps: float = 0.5
    double_bar_gap_steps: float = 0.5

    # note components
    attach_distance_steps: float = 0.5
    component_straightness_min: float = 0.95
    stem_slope_max: float = 0.1
    stem_min_length_steps: float = 2.5
    stem_max_length_steps: float = 4.5
    ledger_slope_max: float = 0.1
    ledger_min_length_steps: float = 1.0
    ledger_max_length_steps: float = 2.5
    ledger_position_tolerance_steps: float = 0.25
    dot_max_points: int = 2
    dot_max_diagonal_steps: float = 0.25
    flag_length_slack: float = 0.05
    flag_slope_min: float = 0.1
    flag_slope_max: float = 10.0
    flag_min_height_steps: float = 1.0
    flag_max_height_steps: float = 3.0
    note_accidental_max_offset_steps: float = 1.5

    # pipeline
    pending_cap: int = 12
    max_combination_size: int = 3


def load_config(path: str | None = None) -> RecognizerConfig:
    """Build a config, applying JSON overrides from `path` or the
    NOTESKETCH_CONFIG environment variable when set."""
    if path is None:
        path = os.environ.get("NOTESKETCH_CONFIG")
    if not path:
        return RecognizerConfig()
    with open(path, "r", encoding="utf-8") as fh:
        overrides = json.load(fh)
    valid = {f.name for f in dataclasses.fields(RecognizerConfig)}
    unknown = set(overrides) - valid
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return dataclasses.replace(RecognizerConfig(), **overrides)


DEFAULT_CONFIG = RecognizerConfig()

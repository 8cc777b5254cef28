"""Corpus evaluation: all-or-nothing recognition accuracy per class.

The corpus layout is one directory per class label, each holding sketch
files. A sample counts as correct only when the final scene contains the
labeled symbol completely correct (with its declared drawing context, e.g.
the staff) and nothing else, with no stroke left pending.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

from .config import RecognizerConfig, DEFAULT_CONFIG
from .errors import EmptyCorpus
from .pipeline import Scene
from .sketchio import load_sketch
from .templates import TemplateLibrary


@dataclass(frozen=True)
class ClassResult:
    total: int
    correct: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass(frozen=True)
class EvalResult:
    per_class: dict[str, ClassResult]
    samples: tuple[tuple[str, str, bool], ...]   # (path, label, correct)

    @property
    def overall_accuracy(self) -> float:
        total = sum(c.total for c in self.per_class.values())
        correct = sum(c.correct for c in self.per_class.values())
        return correct / total if total else 0.0

    def to_dict(self) -> dict:
        return {
            "classes": {label: {"total": c.total, "correct": c.correct,
                                "accuracy": c.accuracy}
                        for label, c in sorted(self.per_class.items())},
            "overall_accuracy": self.overall_accuracy,
            "samples": [{"file": f, "label": l, "correct": ok}
                        for f, l, ok in self.samples],
        }


def _scene_shape(scene: Scene):
    """Comparable summary of what the scene recognized."""
    return {
        "staff": scene.staff is not None,
        "glyphs": Counter(g.kind for g in scene.glyphs),
        "time_signature": (None if scene.time_signature is None else
                           (scene.time_signature.numerator,
                            scene.time_signature.denominator)),
        "durations": sorted((n.duration_beats for n in scene.notes),
                            key=lambda d: (d is None, d)),
        "pending": len(scene.pending),
    }


def _expect(glyphs: dict[str, int], time_signature=None, durations=(),
            staff=True):
    return {"staff": staff, "glyphs": Counter(glyphs),
            "time_signature": time_signature,
            "durations": sorted(durations), "pending": 0}


# expected final scene per corpus class, including drawing context
# (accidental samples are sketched after a treble clef, as a key signature)
CLASS_EXPECTATIONS = {
    "staff": _expect({}),
    "bar_single": _expect({"bar_single": 1}),
    "bar_double": _expect({"bar_double": 1}),
    "treble_clef": _expect({"treble_clef": 1}),
    "bass_clef": _expect({"bass_clef": 1}),
    "sharp": _expect({"treble_clef": 1, "sharp": 1}),
    "flat": _expect({"treble_clef": 1, "flat": 1}),
    "time_signature_44": _expect({"digit_4": 2}, time_signature=(4, 4)),
    "time_signature_34": _expect({"digit_3": 1, "digit_4": 1},
                                 time_signature=(3, 4)),
    "quarter_rest": _expect({"quarter_rest": 1}),
    "eighth_rest": _expect({"eighth_rest": 1}),
    "half_rest": _expect({"half_rest": 1}),
    "whole_rest": _expect({"whole_rest": 1}),
    "note_whole": _expect({"note_head_empty": 1}, durations=[4.0]),
    "note_half": _expect({"note_head_empty": 1}, durations=[2.0]),
    "note_quarter": _expect({"note_head_filled": 1}, durations=[1.0]),
    "note_eighth": _expect({"note_head_filled": 1}, durations=[0.5]),
}


def recognize_sketch(path: str, library: TemplateLibrary,
                     config: RecognizerConfig = DEFAULT_CONFIG) -> Scene:
    sketch = load_sketch(path)
    scene = Scene(sketch.canvas_width, sketch.canvas_height, library, config)
    for stroke in sketch.strokes:
        scene.add_stroke(stroke)
    return scene


def evaluate_corpus(corpus_dir: str, library: TemplateLibrary,
                    config: RecognizerConfig = DEFAULT_CONFIG) -> EvalResult:
    labels = sorted(d for d in os.listdir(corpus_dir)
                    if os.path.isdir(os.path.join(corpus_dir, d)))
    samples = []
    per_class: dict[str, ClassResult] = {}
    for label in labels:
        if label not in CLASS_EXPECTATIONS:
            raise EmptyCorpus(f"no expectation defined for class '{label}'")
        expected = CLASS_EXPECTATIONS[label]
        class_dir = os.path.join(corpus_dir, label)
        files = sorted(f for f in os.listdir(class_dir) if f.endswith(".json"))
        if not files:
            raise EmptyCorpus(f"class directory '{label}' has no sketches")
        correct = 0
        for name in files:
            path = os.path.join(class_dir, name)
            scene = recognize_sketch(path, library, config)
            ok = _scene_shape(scene) == expected
            correct += ok
            samples.append((os.path.join(label, name), label, ok))
        per_class[label] = ClassResult(len(files), correct)
    if not per_class:
        raise EmptyCorpus(f"no class directories under '{corpus_dir}'")
    return EvalResult(per_class, tuple(samples))

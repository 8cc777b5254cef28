#!/usr/bin/env python3
"""Regenerates the bundled assets:

  src/notesketch/data/templates.json       template library (20/class)
  assets/corpus/<class>/sample_NN.json     evaluation corpus (20/class)
  src/notesketch/data/lessons/*.json       five bundled lessons + answers

Deterministic: fixed seeds, so reruns are byte-identical.
"""

from __future__ import annotations

import json
import os
import random
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from notesketch import synth as S
from notesketch.geometry import Stroke
from notesketch.scenedoc import (BarEntry, NoteEntry, RestEntry,
                                 StaffGeometry, SymbolicScene,
                                 serialize_scene)
from notesketch.sketchio import Sketch, save_sketch

CANVAS_W, CANVAS_H = 900.0, 500.0
TOP_Y = 160.0
BASE_STEP = 36.0
STAFF_X0, STAFF_X1 = 10.0, 890.0

# tiny valid 1x1 gray PNG used as placeholder solution images
PLACEHOLDER_PNG = bytes.fromhex(
    "89504e470d0a1a0a0000000d49484452000000010000000108000000003a7e9b55"
    "0000000a49444154789c63680000008200819299d3650000000049454e44ae426082")


def renumber(strokes):
    out = []
    for i, s in enumerate(strokes, start=1):
        out.append(Stroke(s.points, id=i))
    return out


# ---------------------------------------------------------------- templates

def template_strokes(synth: S.StrokeSynth, label: str) -> list[Stroke]:
    step = 30.0 * synth.size_factor()
    org = (100.0, 100.0)
    if label == "treble_clef":
        return [synth.stroke(S.TREBLE_CLEF, step, org)]
    if label == "bass_clef":
        body = synth.stroke(S.BASS_CLEF_BODY, step, org)
        dots = [synth.blob(org[0] + x * step, org[1] + y * step, 0.12 * step)
                for x, y in S.BASS_CLEF_DOTS]
        return [body] + dots
    if label == "sharp":
        return [synth.stroke(S.SHARP, step, org)]
    if label == "flat":
        return [synth.stroke(S.FLAT, step, org)]
    if label.startswith("digit_"):
        proto = S.DIGITS[int(label.split("_")[1])]
        control = [(x * S.DIGIT_WIDTH_STEPS, y * S.DIGIT_HEIGHT_STEPS)
                   for x, y in proto]
        return [synth.stroke(control, step, org)]
    if label == "quarter_rest":
        return [synth.stroke(S.QUARTER_REST, step, org)]
    if label == "eighth_rest":
        return [synth.stroke(S.EIGHTH_REST, step, org)]
    raise ValueError(label)


TEMPLATE_LABELS = (["treble_clef", "bass_clef", "sharp", "flat"]
                   + [f"digit_{i}" for i in range(10)]
                   + ["quarter_rest", "eighth_rest"])


def build_templates(path: str, per_class: int = 20):
    rng = random.Random(20240601)
    entries = []
    for label in TEMPLATE_LABELS:
        for _ in range(per_class):
            synth = S.StrokeSynth(random.Random(rng.getrandbits(64)))
            strokes = template_strokes(synth, label)
            entries.append({
                "label": label,
                "strokes": [[[round(p.x, 2), round(p.y, 2)] for p in s.points]
                            for s in strokes],
            })
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"templates": entries}, fh)
        fh.write("\n")
    print(f"wrote {len(entries)} templates -> {path}")


# ------------------------------------------------------------------- corpus

def staff_geometry(rng: random.Random):
    step = BASE_STEP * (1.0 + rng.uniform(-0.10, 0.10))
    return TOP_Y, step


def draw_note(synth, rng, step, top, position, x, filled, stem=False,
              flag=False, dot=False):
    bottom = top + 4 * step
    cy = bottom - position * step / 2.0
    ry = 0.5 * step * (1 + rng.uniform(-0.05, 0.05))
    rx = 1.3 * ry
    strokes = [synth.ellipse(x, cy, rx, ry)]
    if filled:
        strokes.append(synth.zigzag_fill(x - rx, cy - ry, x + rx, cy + ry))
    stem_free = None
    if stem:
        length = step * rng.uniform(2.8, 3.4)
        if position <= 4:   # stem up from the right-top corner
            sx, sy = x + rx, cy - ry * 0.4
            strokes.append(synth.vertical_line(sx, sy - length, sy, step))
            stem_free = (sx, sy - length)
        else:               # stem down from the left-bottom corner
            sx, sy = x - rx, cy + ry * 0.4
            strokes.append(synth.vertical_line(sx, sy, sy + length, step))
            stem_free = (sx, sy + length)
    if flag:
        fx, fy = stem_free
        direction = 1.0 if position <= 4 else -1.0
        control = [(0.0, 0.0), (0.6, 0.5 * direction), (0.8, 1.3 * direction)]
        strokes.append(synth.stroke(control, step, (fx, fy)))
    if dot:
        strokes.append(synth.tap(x + rx + 0.35 * step, cy))
    return strokes


def corpus_sample(label: str, rng: random.Random) -> Sketch:
    synth = S.StrokeSynth(random.Random(rng.getrandbits(64)))
    top, step = staff_geometry(rng)
    bottom = top + 4 * step
    strokes = list(synth.staff_lines(top, step, STAFF_X0, STAFF_X1))
    x = rng.uniform(280.0, 620.0)
    if label == "staff":
        pass
    elif label == "bar_single":
        strokes.append(synth.vertical_line(x, top, bottom, step))
    elif label == "bar_double":
        strokes.append(synth.vertical_line(x, top, bottom, step))
        strokes.append(synth.vertical_line(x + 0.3 * step, top, bottom, step))
    elif label == "treble_clef":
        strokes.append(synth.stroke(S.TREBLE_CLEF, step, (x, top)))
    elif label == "bass_clef":
        strokes.append(synth.stroke(S.BASS_CLEF_BODY, step, (x, top)))
        for dx, dy in S.BASS_CLEF_DOTS:
            strokes.append(synth.blob(x + dx * step, top + dy * step,
                                      0.12 * step))
    elif label in ("sharp", "flat"):
        strokes.append(synth.stroke(S.TREBLE_CLEF, step, (90.0, top)))
        proto = S.SHARP if label == "sharp" else S.FLAT
        position = rng.choice([4, 6, 8])
        center_y = bottom - position * step / 2.0
        height = 2.05 if label == "sharp" else 2.2
        strokes.append(synth.stroke(proto, step,
                                    (x, center_y - height * step / 2.0)))
    elif label.startswith("time_signature_"):
        num, den = label.split("_")[2]
        for value, center_steps in ((int(num), 1.0), (int(den), 3.0)):
            proto = S.DIGITS[value]
            control = [(px * S.DIGIT_WIDTH_STEPS, py * S.DIGIT_HEIGHT_STEPS)
                       for px, py in proto]
            strokes.append(synth.stroke(
                control, step,
                (x, top + (center_steps - S.DIGIT_HEIGHT_STEPS / 2) * step)))
    elif label == "quarter_rest":
        strokes.append(synth.stroke(S.QUARTER_REST, step, (x, top + 0.75 * step)))
    elif label == "eighth_rest":
        strokes.append(synth.stroke(S.EIGHTH_REST, step, (x, top + 1.0 * step)))
    elif label in ("half_rest", "whole_rest"):
        if label == "whole_rest":
            y0, y1 = top + 1.0 * step, top + 1.5 * step
        else:
            y0, y1 = top + 1.5 * step, top + 2.0 * step
        outline = synth.rect_outline(x, y0, x + 1.4 * step, y1)
        fill = synth.zigzag_fill(x, y0, x + 1.4 * step, y1, sweeps=3)
        strokes += [outline, fill]
    elif label == "note_whole":
        strokes += draw_note(synth, rng, step, top, rng.choice([1, 3, 5, 7]),
                             x, filled=False)
    elif label == "note_half":
        strokes += draw_note(synth, rng, step, top, rng.choice([2, 3, 5, 6]),
                             x, filled=False, stem=True)
    elif label == "note_quarter":
        strokes += draw_note(synth, rng, step, top, rng.choice([2, 3, 5, 6]),
                             x, filled=True, stem=True)
    elif label == "note_eighth":
        strokes += draw_note(synth, rng, step, top, rng.choice([2, 3, 5, 6]),
                             x, filled=True, stem=True, flag=True)
    else:
        raise ValueError(label)
    return Sketch(CANVAS_W, CANVAS_H, tuple(renumber(strokes)))


CORPUS_LABELS = (
    "staff", "bar_single", "bar_double", "treble_clef", "bass_clef",
    "sharp", "flat", "time_signature_44", "time_signature_34",
    "quarter_rest", "eighth_rest", "half_rest", "whole_rest",
    "note_whole", "note_half", "note_quarter", "note_eighth",
)


def build_corpus(corpus_dir: str, per_class: int = 20):
    rng = random.Random(20240915)
    count = 0
    for label in CORPUS_LABELS:
        class_dir = os.path.join(corpus_dir, label)
        os.makedirs(class_dir, exist_ok=True)
        for i in range(per_class):
            sketch = corpus_sample(label, random.Random(rng.getrandbits(64)))
            save_sketch(sketch, os.path.join(class_dir, f"sample_{i:02d}.json"))
            count += 1
    print(f"wrote {count} corpus sketches -> {corpus_dir}")


# ------------------------------------------------------------------ lessons

STD_STAFF = StaffGeometry((100.0, 120.0, 140.0, 160.0, 180.0), 20.0)


def note(pitch, beats, position):
    return NoteEntry(pitch, beats, position)


def scene(clef=None, key=(), time=None, timeline=()):
    return SymbolicScene(STD_STAFF, clef, tuple(key), time, tuple(timeline))


def flags(**kw):
    base = {"staff": False, "clef": False, "keySignature": False,
            "timeSignature": False, "duration": False, "measure": False}
    base.update(kw)
    return base


LESSONS = {
    "lesson1_staffs_and_clefs": {
        "title": "Staffs and Clefs",
        "questions": [
            ("Draw a staff.", "A staff has five evenly spaced lines.",
             scene(), flags(staff=True)),
            ("Draw a staff with a treble clef.",
             "The treble clef curls around the G line.",
             scene(clef="treble_clef"), flags(staff=True, clef=True)),
            ("Draw a staff with a bass clef.",
             "The bass clef's two dots straddle the F line.",
             scene(clef="bass_clef"), flags(staff=True, clef=True)),
            ("Draw the clef used for high-pitched instruments.",
             "Violins and flutes read this clef.",
             scene(clef="treble_clef"), flags(clef=True)),
            ("Draw the clef used for low-pitched instruments.",
             "Cellos and tubas read this clef.",
             scene(clef="bass_clef"), flags(clef=True)),
        ],
    },
    "lesson2_key_and_time_signatures": {
        "title": "Key and Time Signatures",
        "questions": [
            ("Write the key signature of G major (one sharp on the F line).",
             "The top line of the treble staff is F5.",
             scene(clef="treble_clef", key=[("sharp", 8)]),
             flags(clef=True, keySignature=True)),
            ("Write the key signature of F major (one flat on the B line).",
             "The middle line of the treble staff is B4.",
             scene(clef="treble_clef", key=[("flat", 4)]),
             flags(clef=True, keySignature=True)),
            ("Write a 4/4 time signature.",
             "Four beats per measure, a quarter note gets one beat.",
             scene(time=(4, 4)), flags(timeSignature=True)),
            ("Write a 3/4 time signature.",
             "Waltz time: three quarter-note beats per measure.",
             scene(time=(3, 4)), flags(timeSignature=True)),
            ("Write a treble clef followed by a 4/4 time signature.",
             "Clef first, then the stacked digits.",
             scene(clef="treble_clef", time=(4, 4)),
             flags(clef=True, timeSignature=True)),
        ],
    },
    "lesson3_basic_notation": {
        "title": "Basic Notation",
        "questions": [
            ("Draw a whole note on the bottom line (E4) of a treble staff.",
             "A whole note is an empty head with no stem.",
             scene(clef="treble_clef", timeline=[note("E4", 4.0, 0)]),
             flags(staff=True, clef=True, duration=True)),
            ("Draw a half note in the second space (A4).",
             "A half note is an empty head with a stem.",
             scene(clef="treble_clef", timeline=[note("A4", 2.0, 3)]),
             flags(clef=True, duration=True)),
            ("Draw a quarter note on the middle line (B4).",
             "A quarter note is a filled head with a stem.",
             scene(clef="treble_clef", timeline=[note("B4", 1.0, 4)]),
             flags(clef=True, duration=True)),
            ("Draw an eighth note in the third space (C5).",
             "An eighth note adds a flag to a quarter note.",
             scene(clef="treble_clef", timeline=[note("C5", 0.5, 5)]),
             flags(clef=True, duration=True)),
            ("Draw a quarter rest on a treble staff.",
             "The quarter rest is the zigzag symbol centered on the staff.",
             scene(clef="treble_clef", timeline=[RestEntry("quarter_rest")]),
             flags(clef=True, duration=True)),
        ],
    },
    "lesson4_scales_and_accidentals": {
        "title": "Scales and Accidentals",
        "questions": [
            ("Write the first three notes of the C major scale as quarter "
             "notes, starting on C5.",
             "C5 sits in the third space of the treble staff.",
             scene(clef="treble_clef",
                   timeline=[note("C5", 1.0, 5), note("D5", 1.0, 6),
                             note("E5", 1.0, 7)]),
             flags(clef=True, duration=True)),
            ("Write E4 then F4 as half notes.",
             "Neighboring positions move by one letter name.",
             scene(clef="treble_clef",
                   timeline=[note("E4", 2.0, 0), note("F4", 2.0, 1)]),
             flags(clef=True, duration=True)),
            ("Write the key signature of D major (sharps on F and C).",
             "F5 is the top line; C5 is the third space.",
             scene(clef="treble_clef", key=[("sharp", 8), ("sharp", 5)]),
             flags(clef=True, keySignature=True)),
            ("Write a descending pair: G4 then F4, quarter notes.",
             "G4 is the second line from the bottom.",
             scene(clef="treble_clef",
                   timeline=[note("G4", 1.0, 2), note("F4", 1.0, 1)]),
             flags(clef=True, duration=True)),
            ("Write a whole note on B4 with no accidentals.",
             "B4 is the middle line.",
             scene(clef="treble_clef", timeline=[note("B4", 4.0, 4)]),
             flags(clef=True, duration=True)),
        ],
    },
    "lesson5_simple_transcription": {
        "title": "Simple Transcription",
        "questions": [
            ("Transcribe one 4/4 measure: four quarter notes on B4, closed "
             "by a bar line.",
             "Count four beats, then draw the bar.",
             scene(clef="treble_clef", time=(4, 4),
                   timeline=[note("B4", 1.0, 4)] * 4 + [BarEntry("bar_single")]),
             flags(clef=True, timeSignature=True, duration=True, measure=True)),
            ("Transcribe one 4/4 measure: two half notes on G4, closed by a "
             "bar line.",
             "Each half note lasts two beats.",
             scene(clef="treble_clef", time=(4, 4),
                   timeline=[note("G4", 2.0, 2)] * 2 + [BarEntry("bar_single")]),
             flags(clef=True, timeSignature=True, duration=True, measure=True)),
            ("Transcribe two 3/4 measures of quarter notes on E4, separated "
             "and closed by bar lines.",
             "Three beats per measure in 3/4.",
             scene(clef="treble_clef", time=(3, 4),
                   timeline=[note("E4", 1.0, 0)] * 3 + [BarEntry("bar_single")]
                            + [note("E4", 1.0, 0)] * 3 + [BarEntry("bar_single")]),
             flags(timeSignature=True, duration=True, measure=True)),
            ("Transcribe a 4/4 measure holding a single whole note on D5, "
             "closed by a double bar.",
             "A whole note fills the measure by itself.",
             scene(clef="treble_clef", time=(4, 4),
                   timeline=[note("D5", 4.0, 6), BarEntry("bar_double")]),
             flags(timeSignature=True, duration=True, measure=True)),
            ("Transcribe one 4/4 measure: a half note on A4 followed by two "
             "quarter notes on A4, closed by a bar line.",
             "2 + 1 + 1 beats fill the measure.",
             scene(clef="treble_clef", time=(4, 4),
                   timeline=[note("A4", 2.0, 3), note("A4", 1.0, 3),
                             note("A4", 1.0, 3), BarEntry("bar_single")]),
             flags(timeSignature=True, duration=True, measure=True)),
        ],
    },
}


def build_lessons(lessons_dir: str):
    os.makedirs(lessons_dir, exist_ok=True)
    for stem, spec in LESSONS.items():
        answers_dir = os.path.join(lessons_dir, stem)
        images_dir = os.path.join(answers_dir, "images")
        os.makedirs(answers_dir, exist_ok=True)
        os.makedirs(images_dir, exist_ok=True)
        questions = []
        for i, (text, hint, answer, criteria) in enumerate(spec["questions"],
                                                           start=1):
            answer_rel = os.path.join(stem, f"q{i}.xml")
            with open(os.path.join(lessons_dir, answer_rel), "w",
                      encoding="utf-8") as fh:
                fh.write(serialize_scene(answer))
                fh.write("\n")
            image_rel = os.path.join(stem, "images", f"q{i}.png")
            with open(os.path.join(lessons_dir, image_rel), "wb") as fh:
                fh.write(PLACEHOLDER_PNG)
            questions.append({
                "number": i, "text": text, "hint": hint,
                "answer": answer_rel.replace(os.sep, "/"),
                "image": image_rel.replace(os.sep, "/"),
                "criteria": criteria,
            })
        doc = {"title": spec["title"], "modes": ["practice", "quiz"],
               "questions": questions}
        with open(os.path.join(lessons_dir, f"{stem}.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    print(f"wrote {len(LESSONS)} lessons -> {lessons_dir}")


def main():
    build_templates(os.path.join(ROOT, "src", "notesketch", "data",
                                 "templates.json"))
    build_corpus(os.path.join(ROOT, "assets", "corpus"))
    build_lessons(os.path.join(ROOT, "src", "notesketch", "data", "lessons"))


if __name__ == "__main__":
    main()

"""Command-line interface: batch recognition, corpus evaluation, template
capture, lesson validation, and the HTTP service."""

from __future__ import annotations

import json
import os
import sys

import click

from . import bundled_lessons_dir, bundled_library
from .config import load_config
from .errors import NoteSketchError
from .evaluation import evaluate_corpus, recognize_sketch
from .lessons import load_lesson
from .scenedoc import serialize_scene
from .templates import TemplateLibrary


def _fail(message: str) -> "click.exceptions.Exit":
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Sketch-based music notation recognizer."""


@main.command()
@click.argument("sketch_file", type=click.Path(exists=True, dir_okay=False))
def recognize(sketch_file):
    """Recognize one sketch file; print the scene document and the
    per-stroke label listing."""
    config = load_config()
    try:
        scene = recognize_sketch(sketch_file, bundled_library(), config)
    except NoteSketchError as exc:
        _fail(str(exc))
    owners = scene.all_stroke_ids()
    labels = {}
    for sid in owners["pending"]:
        labels[sid] = "pending"
    for s in scene.staff_strokes:
        labels[s.id] = "staff_line"
    for g in scene.glyphs:
        for sid in g.stroke_ids:
            labels[sid] = g.kind
    for c in scene.components:
        for sid in c.stroke_ids:
            labels[sid] = c.kind
    click.echo(serialize_scene(scene.to_symbolic()))
    for sid in sorted(labels):
        click.echo(f"stroke {sid}: {labels[sid]}")


@main.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--json", "as_json", is_flag=True,
              help="Emit the machine-readable result instead of the table.")
def eval(corpus_dir, as_json):
    """Per-class all-or-nothing recognition accuracy over a labeled corpus."""
    config = load_config()
    try:
        result = evaluate_corpus(corpus_dir, bundled_library(), config)
    except NoteSketchError as exc:
        _fail(str(exc))
    if as_json:
        click.echo(json.dumps(result.to_dict(), indent=2))
        return
    width = max(len(label) for label in result.per_class)
    for label, c in sorted(result.per_class.items()):
        click.echo(f"{label:<{width}}  {c.correct:>3}/{c.total:<3}  "
                   f"{c.accuracy:7.2%}")
    click.echo(f"{'overall':<{width}}  {'':>7}  {result.overall_accuracy:7.2%}")


@main.command()
@click.argument("label")
@click.argument("sketch_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("out_file", type=click.Path(dir_okay=False))
def capture(label, sketch_dir, out_file):
    """Append every sketch in SKETCH_DIR to a template library file under
    the class LABEL."""
    from .sketchio import load_sketch

    if os.path.exists(out_file):
        with open(out_file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = {"templates": []}
    files = sorted(f for f in os.listdir(sketch_dir) if f.endswith(".json"))
    if not files:
        _fail(f"no sketch files in '{sketch_dir}'")
    added = 0
    for name in files:
        try:
            sketch = load_sketch(os.path.join(sketch_dir, name))
        except NoteSketchError as exc:
            _fail(f"{name}: {exc}")
        doc["templates"].append({
            "label": label,
            "strokes": [[[p.x, p.y] for p in s.points]
                        for s in sketch.strokes],
        })
        added += 1
    # validate the whole library normalizes before writing anything
    from .geometry import Point, Stroke

    TemplateLibrary.from_entries([
        (e["label"],
         [Stroke.captured([Point(float(x), float(y)) for x, y in pts], id=i)
          for i, pts in enumerate(e["strokes"])])
        for e in doc["templates"]
    ])
    with open(out_file, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    click.echo(f"captured {added} templates as '{label}' -> {out_file}")


@main.group()
def lesson():
    """Lesson file operations."""


@lesson.command()
@click.argument("lesson_file", type=click.Path(exists=True, dir_okay=False))
def validate(lesson_file):
    """Validate a lesson file, including every referenced answer document."""
    try:
        loaded = load_lesson(lesson_file)
    except NoteSketchError as exc:
        _fail(str(exc))
    click.echo(f"ok: '{loaded.title}' with {len(loaded.questions)} questions, "
               f"0 findings")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--lessons", "lessons_dir", default=None,
              type=click.Path(exists=True, file_okay=False),
              help="Lesson directory (defaults to the bundled lessons).")
def serve(port, host, lessons_dir):
    """Host the HTTP session service."""
    import uvicorn

    from .service import create_app

    app = create_app(lessons_dir or bundled_lessons_dir(),
                     config=load_config())
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

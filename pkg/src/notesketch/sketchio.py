"""Sketch capture files: one sketch per JSON document.

    {
      "canvas": {"width": 800, "height": 400},
      "strokes": [
        {"id": 1, "points": [{"x": 0, "y": 0, "t": 0}, ...]}
      ]
    }

The `t` timestamp is optional and must be non-decreasing within a stroke.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import MalformedDocument
from .geometry import Point, Stroke


@dataclass(frozen=True)
class Sketch:
    canvas_width: float
    canvas_height: float
    strokes: tuple[Stroke, ...]


def parse_sketch(doc: dict) -> Sketch:
    try:
        canvas = doc["canvas"]
        width = float(canvas["width"])
        height = float(canvas["height"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad canvas declaration: {exc}", location="canvas")
    strokes = []
    seen_ids = set()
    for i, raw in enumerate(doc.get("strokes", [])):
        where = f"strokes[{i}]"
        try:
            sid = int(raw["id"])
            pts = []
            last_t = None
            for p in raw["points"]:
                t = p.get("t")
                if t is not None:
                    t = float(t)
                    if last_t is not None and t < last_t:
                        raise MalformedDocument(
                            "timestamps must be non-decreasing", location=where)
                    last_t = t
                pts.append(Point(float(p["x"]), float(p["y"]), t))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad stroke: {exc}", location=where)
        if sid in seen_ids:
            raise MalformedDocument(f"duplicate stroke id {sid}", location=where)
        seen_ids.add(sid)
        if not pts:
            raise MalformedDocument("stroke has no points", location=where)
        strokes.append(Stroke.captured(pts, id=sid))
    return Sketch(width, height, tuple(strokes))


def load_sketch(path: str) -> Sketch:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}", location="document")
    return parse_sketch(doc)


def sketch_to_dict(sketch: Sketch) -> dict:
    return {
        "canvas": {"width": sketch.canvas_width, "height": sketch.canvas_height},
        "strokes": [
            {"id": s.id,
             "points": [{"x": p.x, "y": p.y, **({"t": p.t} if p.t is not None else {})}
                        for p in s.points]}
            for s in sketch.strokes
        ],
    }


def save_sketch(sketch: Sketch, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sketch_to_dict(sketch), fh)
        fh.write("\n")

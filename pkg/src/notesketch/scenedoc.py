"""Symbolic scene documents: the answer-file XML format.

A symbolic scene is the display-free interpretation of a sketch: staff
geometry, clef, key signature, time signature, and the x-ordered timeline
of notes, rests, and bar lines. Grading compares symbolic scenes only.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedDocument
from .glyphs import (BAR_DOUBLE, BAR_SINGLE, BASS_CLEF, EIGHTH_REST, FLAT,
                     HALF_REST, QUARTER_REST, REST_DURATIONS, SHARP,
                     TREBLE_CLEF, WHOLE_REST)

SCHEMA_VERSION = "1"

CLEF_KINDS = {TREBLE_CLEF, BASS_CLEF}
ACCIDENTAL_KINDS = {SHARP, FLAT}
REST_KINDS = {WHOLE_REST, HALF_REST, QUARTER_REST, EIGHTH_REST}
BAR_KINDS = {BAR_SINGLE, BAR_DOUBLE}


@dataclass(frozen=True)
class NoteEntry:
    pitch: Optional[str]
    duration_beats: Optional[float]   # None marks an inconsistent note
    position: int


@dataclass(frozen=True)
class RestEntry:
    kind: str


@dataclass(frozen=True)
class BarEntry:
    kind: str


@dataclass(frozen=True)
class StaffGeometry:
    line_ys: tuple[float, ...]
    step: float


@dataclass(frozen=True)
class SymbolicScene:
    staff: Optional[StaffGeometry] = None
    clef: Optional[str] = None
    key: tuple[tuple[str, int], ...] = ()      # (accidental kind, position)
    time_signature: Optional[tuple[int, int]] = None
    timeline: tuple[object, ...] = ()          # NoteEntry | RestEntry | BarEntry

    @property
    def notes_and_rests(self) -> list[object]:
        return [e for e in self.timeline if not isinstance(e, BarEntry)]

    @property
    def bars(self) -> list[BarEntry]:
        return [e for e in self.timeline if isinstance(e, BarEntry)]

    def measures(self) -> list[tuple[list[object], float]]:
        """Split the timeline at bars; returns (symbols, beat total) per
        nonempty region."""
        regions: list[list[object]] = [[]]
        for entry in self.timeline:
            if isinstance(entry, BarEntry):
                regions.append([])
            else:
                regions[-1].append(entry)
        out = []
        for region in regions:
            if not region:
                continue
            total = 0.0
            for entry in region:
                if isinstance(entry, NoteEntry):
                    total += entry.duration_beats or 0.0
                else:
                    total += REST_DURATIONS[entry.kind]
            out.append((region, total))
        return out


def serialize_scene(scene: SymbolicScene) -> str:
    root = ET.Element("scene", version=SCHEMA_VERSION)
    if scene.staff is not None:
        staff = ET.SubElement(root, "staff", step=repr(scene.staff.step))
        for y in scene.staff.line_ys:
            ET.SubElement(staff, "line", y=repr(y))
    if scene.clef is not None:
        ET.SubElement(root, "clef", kind=scene.clef)
    if scene.key:
        key = ET.SubElement(root, "key")
        for kind, position in scene.key:
            ET.SubElement(key, "accidental", kind=kind, position=str(position))
    if scene.time_signature is not None:
        num, den = scene.time_signature
        ET.SubElement(root, "time", numerator=str(num), denominator=str(den))
    timeline = ET.SubElement(root, "timeline")
    bar_index = 0
    for entry in scene.timeline:
        if isinstance(entry, NoteEntry):
            attrs = {"position": str(entry.position)}
            if entry.pitch is not None:
                attrs["pitch"] = entry.pitch
            if entry.duration_beats is not None:
                attrs["durationBeats"] = repr(entry.duration_beats)
            ET.SubElement(timeline, "note", attrs)
        elif isinstance(entry, RestEntry):
            ET.SubElement(timeline, "rest", kind=entry.kind)
        else:
            ET.SubElement(timeline, "bar", kind=entry.kind, index=str(bar_index))
            bar_index += 1
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True)


def _attr(el: ET.Element, name: str, where: str) -> str:
    value = el.get(name)
    if value is None:
        raise MalformedDocument(f"missing attribute '{name}'", location=where)
    return value


def deserialize_scene(text: str) -> SymbolicScene:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedDocument(f"not well-formed XML: {exc}", location="document")
    if root.tag != "scene":
        raise MalformedDocument(f"expected root 'scene', got '{root.tag}'",
                                location=root.tag)
    if root.get("version") != SCHEMA_VERSION:
        raise MalformedDocument(f"unsupported schema version {root.get('version')!r}",
                                location="scene@version")
    staff = None
    staff_el = root.find("staff")
    if staff_el is not None:
        ys = tuple(float(_attr(l, "y", "staff/line")) for l in staff_el.findall("line"))
        if len(ys) != 5:
            raise MalformedDocument(f"staff needs 5 lines, got {len(ys)}",
                                    location="staff")
        staff = StaffGeometry(ys, float(_attr(staff_el, "step", "staff")))
    clef = None
    clef_el = root.find("clef")
    if clef_el is not None:
        clef = _attr(clef_el, "kind", "clef")
        if clef not in CLEF_KINDS:
            raise MalformedDocument(f"unknown clef kind '{clef}'", location="clef@kind")
    key: list[tuple[str, int]] = []
    key_el = root.find("key")
    if key_el is not None:
        for acc in key_el.findall("accidental"):
            kind = _attr(acc, "kind", "key/accidental")
            if kind not in ACCIDENTAL_KINDS:
                raise MalformedDocument(f"unknown accidental kind '{kind}'",
                                        location="key/accidental@kind")
            key.append((kind, int(_attr(acc, "position", "key/accidental"))))
    time_sig = None
    time_el = root.find("time")
    if time_el is not None:
        time_sig = (int(_attr(time_el, "numerator", "time")),
                    int(_attr(time_el, "denominator", "time")))
    timeline: list[object] = []
    timeline_el = root.find("timeline")
    if timeline_el is not None:
        for el in timeline_el:
            if el.tag == "note":
                duration = el.get("durationBeats")
                timeline.append(NoteEntry(
                    el.get("pitch"),
                    float(duration) if duration is not None else None,
                    int(_attr(el, "position", "timeline/note"))))
            elif el.tag == "rest":
                kind = _attr(el, "kind", "timeline/rest")
                if kind not in REST_KINDS:
                    raise MalformedDocument(f"unknown rest kind '{kind}'",
                                            location="timeline/rest@kind")
                timeline.append(RestEntry(kind))
            elif el.tag == "bar":
                kind = _attr(el, "kind", "timeline/bar")
                if kind not in BAR_KINDS:
                    raise MalformedDocument(f"unknown bar kind '{kind}'",
                                            location="timeline/bar@kind")
                timeline.append(BarEntry(kind))
            else:
                raise MalformedDocument(f"unknown timeline element '{el.tag}'",
                                        location=f"timeline/{el.tag}")
    return SymbolicScene(staff, clef, tuple(key), time_sig, tuple(timeline))


def load_scene(path: str) -> SymbolicScene:
    with open(path, "r", encoding="utf-8") as fh:
        return deserialize_scene(fh.read())

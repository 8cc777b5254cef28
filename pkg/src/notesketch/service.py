"""HTTP session service: lesson sessions, stroke submission, grading.

All endpoints live under the versioned prefix `/v1`. Sessions are held in
memory with a 60-minute idle expiry; per-session operations are serialized
by a per-session lock, so two simultaneous stroke submissions are applied
in arrival order.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import asdict, dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import bundled_lessons_dir, bundled_library
from .config import RecognizerConfig, DEFAULT_CONFIG
from .errors import NothingToUndo
from .grading import ProgressTracker, build_report, grade_scene
from .lessons import Lesson, lesson_catalog
from .pipeline import Scene
from .scenedoc import BarEntry, NoteEntry, RestEntry, SymbolicScene
from .sketchio import parse_sketch
from .templates import TemplateLibrary

SESSION_IDLE_SECONDS = 60 * 60
DEFAULT_CANVAS = (900.0, 500.0)

PRACTICE = "practice"
QUIZ = "quiz"


class CreateSessionRequest(BaseModel):
    lesson_id: str
    mode: str
    canvas_width: float = DEFAULT_CANVAS[0]
    canvas_height: float = DEFAULT_CANVAS[1]


class StrokePoint(BaseModel):
    x: float
    y: float
    t: Optional[float] = None


class StrokeRequest(BaseModel):
    id: Optional[int] = None
    points: list[StrokePoint]


class NavigateRequest(BaseModel):
    to: int


def scene_document(scene: SymbolicScene) -> dict:
    """JSON mirror of the symbolic scene (schema version 1)."""
    timeline = []
    for entry in scene.timeline:
        if isinstance(entry, NoteEntry):
            timeline.append({"element": "note", "pitch": entry.pitch,
                             "durationBeats": entry.duration_beats,
                             "position": entry.position})
        elif isinstance(entry, RestEntry):
            timeline.append({"element": "rest", "kind": entry.kind})
        elif isinstance(entry, BarEntry):
            timeline.append({"element": "bar", "kind": entry.kind})
    return {
        "version": "1",
        "staff": (None if scene.staff is None else
                  {"lineYs": list(scene.staff.line_ys), "step": scene.staff.step}),
        "clef": scene.clef,
        "key": [{"kind": k, "position": p} for k, p in scene.key],
        "timeSignature": (None if scene.time_signature is None else
                          {"numerator": scene.time_signature[0],
                           "denominator": scene.time_signature[1]}),
        "timeline": timeline,
    }


@dataclass
class _Session:
    id: str
    lesson_id: str
    lesson: Lesson
    mode: str
    library: TemplateLibrary
    config: RecognizerConfig
    canvas: tuple[float, float]
    current_question: int = 1
    created_at: float = field(default_factory=time.monotonic)
    touched_at: float = field(default_factory=time.monotonic)

    def __post_init__(self):
        self.lock = threading.Lock()
        self.tracker = ProgressTracker(
            [q.number for q in self.lesson.questions], quiz=self.mode == QUIZ)
        self.scenes: dict[int, Scene] = {}
        self._next_stroke_id = 1

    def scene(self) -> Scene:
        n = self.current_question
        if n not in self.scenes:
            self.scenes[n] = Scene(self.canvas[0], self.canvas[1],
                                   self.library, self.config)
        return self.scenes[n]

    def take_stroke_id(self) -> int:
        sid = self._next_stroke_id
        self._next_stroke_id += 1
        return sid

    def question_payload(self) -> dict:
        q = self.lesson.question(self.current_question)
        payload = {"number": q.number, "of": len(self.lesson.questions),
                   "text": q.text, "criteria": q.flags.to_dict()}
        if self.mode == PRACTICE:
            payload["hint"] = q.hint
            payload["solution_image"] = q.image_ref
        return payload


def _events_payload(events) -> list[dict]:
    return [{"kind": e.kind, "what": e.what, "strokeIds": list(e.stroke_ids)}
            for e in events]


def create_app(lessons_dir: Optional[str] = None,
               library: Optional[TemplateLibrary] = None,
               config: RecognizerConfig = DEFAULT_CONFIG,
               idle_seconds: float = SESSION_IDLE_SECONDS) -> FastAPI:
    app = FastAPI(title="notesketch service", version="1")
    library = library if library is not None else bundled_library()
    catalog = dict(lesson_catalog(lessons_dir or bundled_lessons_dir()))
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    def _expire_idle(now: float):
        stale = [sid for sid, s in sessions.items()
                 if now - s.touched_at > idle_seconds]
        for sid in stale:
            del sessions[sid]

    def _session(session_id: str) -> _Session:
        with registry_lock:
            now = time.monotonic()
            _expire_idle(now)
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(404, f"unknown session '{session_id}'")
            session.touched_at = now
            return session

    @app.get("/v1/lessons")
    def list_lessons():
        return {"lessons": [
            {"id": lesson_id, "title": lesson.title,
             "modes": list(lesson.modes),
             "questions": len(lesson.questions)}
            for lesson_id, lesson in sorted(catalog.items())
        ]}

    @app.post("/v1/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        lesson = catalog.get(req.lesson_id)
        if lesson is None:
            raise HTTPException(404, f"unknown lesson '{req.lesson_id}'")
        if req.mode not in (PRACTICE, QUIZ):
            raise HTTPException(422, f"unknown mode '{req.mode}'")
        if req.mode not in lesson.modes:
            raise HTTPException(409, f"lesson does not offer {req.mode} mode")
        session = _Session(uuid.uuid4().hex, req.lesson_id, lesson, req.mode,
                           library, config, (req.canvas_width, req.canvas_height))
        with registry_lock:
            _expire_idle(time.monotonic())
            sessions[session.id] = session
        return {"session_id": session.id, "mode": session.mode,
                "lesson": {"id": req.lesson_id, "title": lesson.title},
                "question": session.question_payload()}

    @app.post("/v1/sessions/{session_id}/strokes")
    def submit_stroke(session_id: str, req: StrokeRequest):
        session = _session(session_id)
        with session.lock:
            scene = session.scene()
            sid = req.id if req.id is not None else session.take_stroke_id()
            try:
                stroke = parse_sketch({
                    "canvas": {"width": scene.canvas_width,
                               "height": scene.canvas_height},
                    "strokes": [{"id": sid,
                                 "points": [p.model_dump(exclude_none=True)
                                            for p in req.points]}],
                }).strokes[0]
                events = scene.add_stroke(stroke)
            except Exception as exc:
                raise HTTPException(422, str(exc))
            return {"events": _events_payload(events),
                    "scene": scene_document(scene.to_symbolic())}

    @app.post("/v1/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = _session(session_id)
        with session.lock:
            scene = session.scene()
            try:
                events = scene.undo()
            except NothingToUndo as exc:
                raise HTTPException(409, str(exc))
            return {"events": _events_payload(events),
                    "scene": scene_document(scene.to_symbolic())}

    @app.post("/v1/sessions/{session_id}/clear")
    def clear(session_id: str):
        session = _session(session_id)
        with session.lock:
            scene = session.scene()
            events = scene.clear()
            return {"events": _events_payload(events),
                    "scene": scene_document(scene.to_symbolic())}

    @app.post("/v1/sessions/{session_id}/check")
    def check(session_id: str):
        session = _session(session_id)
        with session.lock:
            number = session.current_question
            if session.tracker.is_locked(number):
                raise HTTPException(
                    409, f"question {number} is already graded in quiz mode")
            question = session.lesson.question(number)
            scene = session.scene().to_symbolic()
            correct, results = grade_scene(scene, question.answer,
                                           question.flags)
            session.tracker.record(number, correct)
            payload = {
                "correct": correct,
                "results": [{"criterion": r.criterion, "passed": r.passed,
                             "detail": r.detail} for r in results],
                "progress": session.tracker.counts(),
            }
            if session.mode == PRACTICE:
                payload["solution_image"] = question.image_ref
            if session.mode == QUIZ and session.tracker.all_checked():
                report = build_report(session.tracker, session.lesson.questions)
                payload["report"] = {
                    "score_percent": report.score_percent,
                    "questions": list(report.per_question),
                }
            return payload

    @app.post("/v1/sessions/{session_id}/navigate")
    def navigate(session_id: str, req: NavigateRequest):
        session = _session(session_id)
        with session.lock:
            n = len(session.lesson.questions)
            if not 1 <= req.to <= n:
                raise HTTPException(422, f"question {req.to} outside 1..{n}")
            if session.mode == QUIZ and req.to < session.current_question:
                raise HTTPException(
                    409, "quiz mode forbids returning to earlier questions")
            session.current_question = req.to
            return {"question": session.question_payload()}

    return app

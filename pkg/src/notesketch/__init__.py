"""Stroke-based recognition of hand-sketched music notation, with grading
against lesson answer keys."""

from .config import RecognizerConfig, DEFAULT_CONFIG, load_config
from .errors import NoteSketchError
from .geometry import BoundingBox, Point, Stroke
from .grading import (CriteriaFlags, CriterionResult, Feedback,
                      ProgressTracker, QuizReport, build_report,
                      check_criterion, grade_scene)
from .lessons import Lesson, Question, lesson_catalog, load_lesson, save_lesson
from .pipeline import Scene, SceneEvent
from .scenedoc import (BarEntry, NoteEntry, RestEntry, StaffGeometry,
                       SymbolicScene, deserialize_scene, load_scene,
                       serialize_scene)
from .sketchio import Sketch, load_sketch, parse_sketch, save_sketch
from .templates import MatchResult, Template, TemplateLibrary

__version__ = "0.1.0"

__all__ = [
    "BarEntry", "BoundingBox", "CriteriaFlags", "CriterionResult",
    "DEFAULT_CONFIG", "Feedback", "Lesson", "MatchResult", "NoteEntry",
    "NoteSketchError", "Point", "ProgressTracker", "Question", "QuizReport",
    "RecognizerConfig", "RestEntry", "Scene", "SceneEvent", "Sketch",
    "StaffGeometry", "Stroke", "SymbolicScene", "Template", "TemplateLibrary",
    "build_report", "check_criterion", "deserialize_scene", "grade_scene",
    "lesson_catalog", "load_config", "load_lesson", "load_scene",
    "load_sketch", "parse_sketch", "save_lesson", "save_sketch",
    "serialize_scene",
]


def bundled_library() -> TemplateLibrary:
    """The template library shipped with the package."""
    import os
    path = os.path.join(os.path.dirname(__file__), "data", "templates.json")
    return TemplateLibrary.load(path)


def bundled_lessons_dir() -> str:
    import os
    return os.path.join(os.path.dirname(__file__), "data", "lessons")

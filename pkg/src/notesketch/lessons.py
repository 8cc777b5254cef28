"""Lesson/question data model, lesson file validation, and builder
operations (renumbering, criteria selection).

A lesson is a JSON document with relative paths to its answer scene XML
files and optional solution images:

    {
      "title": "...",
      "modes": ["practice", "quiz"],
      "questions": [
        {"number": 1, "text": "...", "hint": "...",
         "answer": "answers/q1.xml", "image": "images/q1.png",
         "criteria": {"staff": true, "clef": true}}
      ]
    }
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import (AllFlagsDisabled, DuplicateNumber, MalformedDocument,
                     MalformedLesson, MissingAnswer, OutOfRange,
                     UnknownQuestion)
from .grading import CriteriaFlags
from .scenedoc import SymbolicScene, load_scene


@dataclass(frozen=True)
class Question:
    number: int
    text: str
    flags: CriteriaFlags
    answer_ref: str
    hint: Optional[str] = None
    image_ref: Optional[str] = None
    answer: Optional[SymbolicScene] = None   # parsed at load time


@dataclass(frozen=True)
class Lesson:
    title: str
    questions: tuple[Question, ...]
    modes: tuple[str, ...] = ("practice", "quiz")
    base_dir: str = "."

    def question(self, number: int) -> Question:
        for q in self.questions:
            if q.number == number:
                return q
        raise UnknownQuestion(f"no question {number}")


def _validate_question(raw: dict, index: int) -> None:
    where = f"questions[{index}]"
    if not isinstance(raw, dict):
        raise MalformedLesson("question entry must be an object", field=where)
    for key in ("number", "text", "answer", "criteria"):
        if key not in raw:
            raise MalformedLesson(f"missing '{key}'", field=f"{where}.{key}")
    if not isinstance(raw["number"], int) or raw["number"] < 1:
        raise MalformedLesson("number must be a positive integer",
                              field=f"{where}.number")


def load_lesson(path: str) -> Lesson:
    """Parse and fully validate a lesson, including every answer file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedLesson(f"invalid JSON: {exc}", field="document")
    if "title" not in doc or "questions" not in doc:
        raise MalformedLesson("lesson needs 'title' and 'questions'",
                              field="document")
    if not doc["questions"]:
        raise MalformedLesson("lesson needs at least one question",
                              field="questions")
    base_dir = os.path.dirname(os.path.abspath(path))
    questions = []
    seen = set()
    for i, raw in enumerate(doc["questions"]):
        _validate_question(raw, i)
        number = raw["number"]
        if number in seen:
            raise DuplicateNumber(f"question number {number} appears twice")
        seen.add(number)
        try:
            flags = CriteriaFlags.from_dict(raw["criteria"])
        except ValueError as exc:
            raise MalformedLesson(str(exc), field=f"questions[{i}].criteria")
        if not flags.enabled():
            raise AllFlagsDisabled(f"question {number} enables no criteria")
        answer_path = os.path.join(base_dir, raw["answer"])
        if not os.path.exists(answer_path):
            raise MissingAnswer(
                f"question {number}: answer file '{raw['answer']}' not found")
        try:
            answer = load_scene(answer_path)
        except MalformedDocument as exc:
            raise MissingAnswer(
                f"question {number}: answer file '{raw['answer']}' "
                f"does not parse ({exc})")
        image = raw.get("image")
        if image is not None and not os.path.exists(os.path.join(base_dir, image)):
            raise MalformedLesson(
                f"question {number}: image '{image}' not found",
                field=f"questions[{i}].image")
        questions.append(Question(number, raw["text"], flags, raw["answer"],
                                  raw.get("hint"), image, answer))
    if sorted(seen) != list(range(1, len(questions) + 1)):
        raise MalformedLesson("question numbers must form 1..N",
                              field="questions")
    questions.sort(key=lambda q: q.number)
    modes = tuple(doc.get("modes", ["practice", "quiz"]))
    return Lesson(doc["title"], tuple(questions), modes, base_dir)


def save_lesson(lesson: Lesson, path: str) -> None:
    doc = {
        "title": lesson.title,
        "modes": list(lesson.modes),
        "questions": [
            {"number": q.number, "text": q.text,
             **({"hint": q.hint} if q.hint is not None else {}),
             "answer": q.answer_ref,
             **({"image": q.image_ref} if q.image_ref is not None else {}),
             "criteria": q.flags.to_dict()}
            for q in lesson.questions
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def renumber(lesson: Lesson, from_number: int, to_number: int) -> Lesson:
    """Move a question to a new number, shifting the others to keep the
    numbering contiguous."""
    lesson.question(from_number)  # raises UnknownQuestion
    n = len(lesson.questions)
    if not 1 <= to_number <= n:
        raise OutOfRange(f"target {to_number} outside 1..{n}")
    ordered = [q for q in lesson.questions if q.number != from_number]
    moved = lesson.question(from_number)
    ordered.insert(to_number - 1, moved)
    renumbered = tuple(replace(q, number=i + 1) for i, q in enumerate(ordered))
    return replace(lesson, questions=renumbered)


def set_criteria(lesson: Lesson, number: int, flags: CriteriaFlags) -> Lesson:
    if not flags.enabled():
        raise AllFlagsDisabled(f"question {number} must keep one criterion")
    updated = tuple(replace(q, flags=flags) if q.number == number else q
                    for q in lesson.questions)
    lesson.question(number)  # raises UnknownQuestion
    return replace(lesson, questions=updated)


def lesson_catalog(directory: str) -> list[tuple[str, Lesson]]:
    """Load every `*.json` lesson in a directory, keyed by file stem."""
    catalog = []
    for name in sorted(os.listdir(directory)):
        if name.endswith(".json"):
            lesson = load_lesson(os.path.join(directory, name))
            catalog.append((name[:-5], lesson))
    return catalog

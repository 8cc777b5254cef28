"""Criteria checks against answer keys, per-criterion feedback, progress
tracking, and the quiz report."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .errors import MissingAnswerData, QuizIncomplete
from .scenedoc import BarEntry, NoteEntry, RestEntry, SymbolicScene

CRITERIA = ("staff", "clef", "keySignature", "timeSignature", "duration", "measure")


@dataclass(frozen=True)
class CriteriaFlags:
    staff: bool = False
    clef: bool = False
    keySignature: bool = False
    timeSignature: bool = False
    duration: bool = False
    measure: bool = False

    def enabled(self) -> list[str]:
        return [c for c in CRITERIA if getattr(self, c)]

    @staticmethod
    def from_dict(d: dict) -> "CriteriaFlags":
        unknown = set(d) - set(CRITERIA)
        if unknown:
            raise ValueError(f"unknown criteria: {sorted(unknown)}")
        return CriteriaFlags(**{k: bool(v) for k, v in d.items()})

    def to_dict(self) -> dict:
        return {c: getattr(self, c) for c in CRITERIA}


@dataclass(frozen=True)
class CriterionResult:
    criterion: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Feedback:
    correct: bool
    results: tuple[CriterionResult, ...]
    progress: dict


@dataclass(frozen=True)
class QuizReport:
    score_percent: int
    per_question: tuple[dict, ...]


def _describe_note(entry: NoteEntry) -> str:
    if entry.duration_beats is None:
        return f"{entry.pitch or 'note'} (inconsistent components)"
    return f"{entry.pitch or f'position {entry.position}'} ({_beats(entry.duration_beats)} beats)"


def _beats(x: float) -> str:
    return f"{x:g}"


def _check_staff(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    if answer.staff is None:
        raise MissingAnswerData("answer scene has no staff")
    if scene.staff is None:
        return CriterionResult("staff", False, "no staff was drawn")
    return CriterionResult("staff", True, "staff present")


def _check_clef(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    if answer.clef is None:
        raise MissingAnswerData("answer scene has no clef")
    if scene.clef is None:
        return CriterionResult("clef", False,
                               f"no clef was drawn, expected {answer.clef}")
    if scene.clef != answer.clef:
        return CriterionResult("clef", False,
                               f"expected {answer.clef}, found {scene.clef}")
    return CriterionResult("clef", True, f"clef is {answer.clef}")


def _check_key(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    expected = list(answer.key)
    found = list(scene.key)
    for i, (exp, got) in enumerate(zip(expected, found), start=1):
        if exp != got:
            return CriterionResult(
                "keySignature", False,
                f"accidental {i}: expected {exp[0]} at position {exp[1]}, "
                f"found {got[0]} at position {got[1]}")
    if len(found) < len(expected):
        missing = expected[len(found)]
        return CriterionResult(
            "keySignature", False,
            f"missing {missing[0]} at position {missing[1]} "
            f"(accidental {len(found) + 1})")
    if len(found) > len(expected):
        extra = found[len(expected)]
        return CriterionResult(
            "keySignature", False,
            f"extra {extra[0]} at position {extra[1]} "
            f"(accidental {len(expected) + 1})")
    return CriterionResult("keySignature", True, "key signature matches")


def _check_time(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    if answer.time_signature is None:
        raise MissingAnswerData("answer scene has no time signature")
    if scene.time_signature is None:
        n, d = answer.time_signature
        return CriterionResult("timeSignature", False,
                               f"no time signature was drawn, expected {n}/{d}")
    if scene.time_signature != answer.time_signature:
        n, d = answer.time_signature
        sn, sd = scene.time_signature
        return CriterionResult("timeSignature", False,
                               f"expected {n}/{d}, found {sn}/{sd}")
    n, d = answer.time_signature
    return CriterionResult("timeSignature", True, f"time signature is {n}/{d}")


def _element_token(entry) -> tuple:
    if isinstance(entry, NoteEntry):
        return ("note", entry.pitch, entry.duration_beats)
    return ("rest", entry.kind)


def _describe_element(entry) -> str:
    if isinstance(entry, NoteEntry):
        return _describe_note(entry)
    return entry.kind.replace("_", " ")


def _check_duration(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    expected = answer.notes_and_rests
    if not expected:
        raise MissingAnswerData("answer scene has no notes or rests")
    found = scene.notes_and_rests
    for i, (exp, got) in enumerate(zip(expected, found), start=1):
        if _element_token(exp) != _element_token(got):
            return CriterionResult(
                "duration", False,
                f"element {i}: expected {_describe_element(exp)}, "
                f"found {_describe_element(got)}")
    if len(found) != len(expected):
        return CriterionResult(
            "duration", False,
            f"expected {len(expected)} notes/rests, found {len(found)}")
    return CriterionResult("duration", True, "notes and rests match")


def _beats_per_measure(time_signature: tuple[int, int]) -> float:
    num, den = time_signature
    return float(Fraction(4 * num, den))


def _check_measure(scene: SymbolicScene, answer: SymbolicScene) -> CriterionResult:
    if answer.time_signature is None:
        raise MissingAnswerData("measure check needs a time signature in the answer")
    if not answer.bars:
        raise MissingAnswerData("answer scene has no bar lines")
    expected_bars = [b.kind for b in answer.bars]
    found_bars = [b.kind for b in scene.bars]
    if len(found_bars) != len(expected_bars):
        return CriterionResult(
            "measure", False,
            f"expected {len(expected_bars)} bar lines, found {len(found_bars)}")
    for i, (exp, got) in enumerate(zip(expected_bars, found_bars), start=1):
        if exp != got:
            return CriterionResult(
                "measure", False,
                f"bar {i}: expected {exp.replace('_', ' ')}, "
                f"found {got.replace('_', ' ')}")
    target = _beats_per_measure(answer.time_signature)
    for i, (_, total) in enumerate(scene.measures(), start=1):
        if abs(total - target) > 1e-9:
            return CriterionResult(
                "measure", False,
                f"measure {i} has {_beats(total)} beats, expected {_beats(target)}")
    return CriterionResult("measure", True, "measures match")


_CHECKS = {
    "staff": _check_staff,
    "clef": _check_clef,
    "keySignature": _check_key,
    "timeSignature": _check_time,
    "duration": _check_duration,
    "measure": _check_measure,
}


def check_criterion(scene: SymbolicScene, answer: SymbolicScene,
                    criterion: str) -> CriterionResult:
    return _CHECKS[criterion](scene, answer)


def grade_scene(scene: SymbolicScene, answer: SymbolicScene,
                flags: CriteriaFlags) -> tuple[bool, tuple[CriterionResult, ...]]:
    """Run every enabled criterion; correct iff all of them pass."""
    results = tuple(check_criterion(scene, answer, c) for c in flags.enabled())
    return all(r.passed for r in results), results


IN_PROGRESS = "in_progress"
CORRECT = "correct"
INCORRECT = "incorrect"


class ProgressTracker:
    """Question status bookkeeping for one session.

    Quiz mode locks the first graded result per question; practice mode
    lets a re-check move a question from incorrect to correct.
    """

    def __init__(self, question_numbers, quiz: bool):
        self.quiz = quiz
        self.status = {n: IN_PROGRESS for n in question_numbers}

    def is_locked(self, number: int) -> bool:
        return self.quiz and self.status[number] != IN_PROGRESS

    def record(self, number: int, correct: bool):
        self.status[number] = CORRECT if correct else INCORRECT

    def counts(self) -> dict:
        values = list(self.status.values())
        return {"correct": values.count(CORRECT),
                "incorrect": values.count(INCORRECT),
                "in_progress": values.count(IN_PROGRESS)}

    def all_checked(self) -> bool:
        return IN_PROGRESS not in self.status.values()


def build_report(tracker: ProgressTracker, questions) -> QuizReport:
    """Quiz report: percent score plus a per-question correctness list.

    `questions` supplies (number, text, image ref) in question order.
    """
    if not tracker.quiz:
        raise QuizIncomplete("reports exist in quiz mode only")
    if not tracker.all_checked():
        raise QuizIncomplete("not every question has been checked")
    total = len(tracker.status)
    correct = tracker.counts()["correct"]
    # round half up to an integer percentage
    percent = int((100 * correct * 2 + total) // (2 * total))
    per_question = tuple(
        {"number": q.number, "text": q.text,
         "correct": tracker.status[q.number] == CORRECT,
         "solution_image": q.image_ref}
        for q in questions)
    return QuizReport(percent, per_question)

"""Criteria checks, feedback, progress tracking, quiz reports."""

import dataclasses

import pytest

from notesketch.errors import MissingAnswerData, QuizIncomplete
from notesketch.grading import (CORRECT, CRITERIA, INCORRECT, IN_PROGRESS,
                                CriteriaFlags, ProgressTracker, build_report,
                                check_criterion, grade_scene)
from notesketch.scenedoc import (BarEntry, NoteEntry, RestEntry,
                                 StaffGeometry, SymbolicScene)

STAFF = StaffGeometry((100.0, 120.0, 140.0, 160.0, 180.0), 20.0)

ANSWER = SymbolicScene(
    STAFF, "treble_clef", (("sharp", 8),), (4, 4),
    (NoteEntry("B4", 2.0, 4), NoteEntry("B4", 1.0, 4),
     NoteEntry("B4", 1.0, 4), BarEntry("bar_single")))


def perfect():
    return ANSWER


class TestCriteria:
    def test_staff_pass_fail(self):
        assert check_criterion(perfect(), ANSWER, "staff").passed
        r = check_criterion(SymbolicScene(), ANSWER, "staff")
        assert not r.passed and "no staff" in r.detail

    def test_clef(self):
        assert check_criterion(perfect(), ANSWER, "clef").passed
        wrong = dataclasses.replace(perfect(), clef="bass_clef")
        r = check_criterion(wrong, ANSWER, "clef")
        assert not r.passed
        assert "expected treble_clef" in r.detail and "bass_clef" in r.detail

    def test_key_missing_and_extra(self):
        assert check_criterion(perfect(), ANSWER, "keySignature").passed
        r = check_criterion(dataclasses.replace(perfect(), key=()),
                            ANSWER, "keySignature")
        assert not r.passed and "missing sharp at position 8" in r.detail
        extra = dataclasses.replace(perfect(),
                                    key=(("sharp", 8), ("flat", 4)))
        r = check_criterion(extra, ANSWER, "keySignature")
        assert not r.passed and "extra flat" in r.detail

    def test_key_wrong_accidental(self):
        wrong = dataclasses.replace(perfect(), key=(("flat", 8),))
        r = check_criterion(wrong, ANSWER, "keySignature")
        assert not r.passed and "expected sharp" in r.detail

    def test_empty_key_matches_empty(self):
        answer = dataclasses.replace(ANSWER, key=())
        scene = dataclasses.replace(perfect(), key=())
        assert check_criterion(scene, answer, "keySignature").passed

    def test_time_signature(self):
        assert check_criterion(perfect(), ANSWER, "timeSignature").passed
        wrong = dataclasses.replace(perfect(), time_signature=(3, 4))
        r = check_criterion(wrong, ANSWER, "timeSignature")
        assert not r.passed and "expected 4/4, found 3/4" in r.detail

    def test_duration_element_mismatch(self):
        wrong = dataclasses.replace(
            perfect(), timeline=(NoteEntry("B4", 1.0, 4),) + ANSWER.timeline[1:])
        r = check_criterion(wrong, ANSWER, "duration")
        assert not r.passed and "element 1" in r.detail

    def test_duration_count_mismatch(self):
        short = dataclasses.replace(perfect(), timeline=ANSWER.timeline[:2])
        r = check_criterion(short, ANSWER, "duration")
        assert not r.passed and "expected 3 notes/rests" in r.detail

    def test_duration_inconsistent_note_fails(self):
        wrong = dataclasses.replace(
            perfect(), timeline=(NoteEntry("B4", None, 4),) + ANSWER.timeline[1:])
        r = check_criterion(wrong, ANSWER, "duration")
        assert not r.passed and "inconsistent" in r.detail

    def test_rest_tokens_compare_by_kind(self):
        answer = SymbolicScene(STAFF, timeline=(RestEntry("quarter_rest"),))
        good = SymbolicScene(timeline=(RestEntry("quarter_rest"),))
        bad = SymbolicScene(timeline=(RestEntry("half_rest"),))
        assert check_criterion(good, answer, "duration").passed
        assert not check_criterion(bad, answer, "duration").passed

    def test_measure_beat_total(self):
        assert check_criterion(perfect(), ANSWER, "measure").passed
        overfull = dataclasses.replace(
            perfect(), timeline=ANSWER.timeline[:3]
            + (NoteEntry("B4", 1.0, 4), BarEntry("bar_single")))
        r = check_criterion(overfull, ANSWER, "measure")
        assert not r.passed
        assert "measure 1 has 5 beats, expected 4" in r.detail

    def test_measure_bar_count_and_kind(self):
        missing = dataclasses.replace(perfect(), timeline=ANSWER.timeline[:3])
        r = check_criterion(missing, ANSWER, "measure")
        assert not r.passed and "expected 1 bar lines, found 0" in r.detail
        double = dataclasses.replace(
            perfect(), timeline=ANSWER.timeline[:3] + (BarEntry("bar_double"),))
        r = check_criterion(double, ANSWER, "measure")
        assert not r.passed and "bar 1" in r.detail

    def test_measure_respects_three_four(self):
        answer = SymbolicScene(
            STAFF, time_signature=(3, 4),
            timeline=(NoteEntry("E4", 1.0, 0),) * 3 + (BarEntry("bar_single"),))
        assert check_criterion(answer, answer, "measure").passed

    def test_missing_answer_data(self):
        empty_answer = SymbolicScene()
        for criterion in ("staff", "clef", "timeSignature", "duration",
                          "measure"):
            with pytest.raises(MissingAnswerData):
                check_criterion(perfect(), empty_answer, criterion)


class TestFlags:
    def test_unknown_flag_rejected(self):
        with pytest.raises(ValueError):
            CriteriaFlags.from_dict({"rhythm": True})

    def test_round_trip(self):
        f = CriteriaFlags(staff=True, measure=True)
        assert CriteriaFlags.from_dict(f.to_dict()) == f

    def test_grade_only_runs_enabled(self):
        wrong_clef = dataclasses.replace(perfect(), clef="bass_clef")
        flags = CriteriaFlags(staff=True, duration=True)
        correct, results = grade_scene(wrong_clef, ANSWER, flags)
        assert correct
        assert [r.criterion for r in results] == ["staff", "duration"]

    def test_grade_fails_if_any_enabled_fails(self):
        wrong_clef = dataclasses.replace(perfect(), clef="bass_clef")
        flags = CriteriaFlags(staff=True, clef=True)
        correct, results = grade_scene(wrong_clef, ANSWER, flags)
        assert not correct


class _Q:
    def __init__(self, number):
        self.number = number
        self.text = f"q{number}"
        self.image_ref = f"img{number}.png"


class TestProgressAndReport:
    def test_practice_allows_recheck(self):
        t = ProgressTracker([1, 2], quiz=False)
        t.record(1, False)
        assert not t.is_locked(1)
        t.record(1, True)
        assert t.status[1] == CORRECT

    def test_quiz_locks_after_first_grade(self):
        t = ProgressTracker([1, 2], quiz=True)
        t.record(1, False)
        assert t.is_locked(1)
        assert not t.is_locked(2)

    def test_counts(self):
        t = ProgressTracker([1, 2, 3], quiz=False)
        t.record(1, True)
        t.record(2, False)
        assert t.counts() == {"correct": 1, "incorrect": 1, "in_progress": 1}

    def test_report_requires_quiz_and_completion(self):
        practice = ProgressTracker([1], quiz=False)
        practice.record(1, True)
        with pytest.raises(QuizIncomplete):
            build_report(practice, [_Q(1)])
        quiz = ProgressTracker([1, 2], quiz=True)
        quiz.record(1, True)
        with pytest.raises(QuizIncomplete):
            build_report(quiz, [_Q(1), _Q(2)])

    @pytest.mark.parametrize("correct,total,percent", [
        (5, 5, 100), (0, 5, 0), (1, 3, 33), (2, 3, 67), (1, 2, 50), (4, 5, 80),
    ])
    def test_percent_rounds_half_up(self, correct, total, percent):
        t = ProgressTracker(range(1, total + 1), quiz=True)
        for n in range(1, total + 1):
            t.record(n, n <= correct)
        report = build_report(t, [_Q(n) for n in range(1, total + 1)])
        assert report.score_percent == percent

    def test_report_per_question(self):
        t = ProgressTracker([1, 2], quiz=True)
        t.record(1, True)
        t.record(2, False)
        report = build_report(t, [_Q(1), _Q(2)])
        assert report.per_question[0]["correct"] is True
        assert report.per_question[1]["correct"] is False
        assert report.per_question[1]["solution_image"] == "img2.png"

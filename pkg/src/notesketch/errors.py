"""Exception types shared across the engine."""


class NoteSketchError(Exception):
    """Base class for all engine errors."""


class DegenerateStroke(NoteSketchError):
    """Stroke has no usable extent (zero path length or zero-size bbox)."""


class EmptySet(NoteSketchError):
    """A point set that must be nonempty is empty."""


class EmptyLibrary(NoteSketchError):
    """Template library has no usable classes for the requested match."""


class WrongLineCount(NoteSketchError):
    """Staff assembly needs exactly five line candidates."""


class OverlappingLines(NoteSketchError):
    """Two staff line candidates are too close to be distinct lines."""


class NothingToUndo(NoteSketchError):
    """Undo requested on a scene with no strokes."""


class MalformedDocument(NoteSketchError):
    """A scene document failed to parse or validate.

    `location` names the offending element or attribute.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class MalformedLesson(NoteSketchError):
    """A lesson file failed validation; `field` names the bad entry."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class MissingAnswer(NoteSketchError):
    """A question's answer file does not exist or does not parse."""


class DuplicateNumber(NoteSketchError):
    """Two questions in a lesson share the same number."""


class UnknownQuestion(NoteSketchError):
    """Question number not present in the lesson."""


class OutOfRange(NoteSketchError):
    """Renumber target outside 1..N."""


class AllFlagsDisabled(NoteSketchError):
    """A question must keep at least one criteria check enabled."""


class MissingAnswerData(NoteSketchError):
    """Answer scene lacks content required by an enabled criterion."""


class QuizIncomplete(NoteSketchError):
    """Report requested before every quiz question was checked, or in
    practice mode."""


class EmptyCorpus(NoteSketchError):
    """Evaluation corpus directory contains no labeled samples."""


class UnknownSession(NoteSketchError):
    """Session id not found (possibly expired)."""


class IllegalNavigation(NoteSketchError):
    """Navigation not allowed in the current mode (quiz back-nav)."""


class QuizLocked(NoteSketchError):
    """Re-check of an already-checked question in quiz mode."""

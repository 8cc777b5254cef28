"""Command-line interface behavior."""

import json
import os
import shutil

import pytest
from click.testing import CliRunner

from notesketch.cli import main
from notesketch.templates import TemplateLibrary


@pytest.fixture
def runner():
    return CliRunner()


def staff_sample(corpus_dir):
    return os.path.join(corpus_dir, "staff", "sample_00.json")


class TestRecognize:
    def test_staff_sample(self, runner, corpus_dir):
        result = runner.invoke(main, ["recognize", staff_sample(corpus_dir)])
        assert result.exit_code == 0
        assert '<scene version="1">' in result.output
        assert result.output.count("stroke ") == 5
        assert "staff_line" in result.output

    def test_byte_reproducible(self, runner, corpus_dir):
        first = runner.invoke(main, ["recognize", staff_sample(corpus_dir)])
        second = runner.invoke(main, ["recognize", staff_sample(corpus_dir)])
        assert first.output == second.output

    def test_missing_file(self, runner):
        result = runner.invoke(main, ["recognize", "no_such.json"])
        assert result.exit_code != 0

    def test_corrupt_file(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        result = runner.invoke(main, ["recognize", str(bad)])
        assert result.exit_code == 1
        assert "error:" in result.output


class TestEval:
    def test_json_output_recounts(self, runner, corpus_dir, tmp_path):
        for label in ("staff", "bar_single"):
            dst = tmp_path / label
            dst.mkdir()
            src = os.path.join(corpus_dir, label)
            for name in sorted(os.listdir(src))[:2]:
                shutil.copy(os.path.join(src, name), dst / name)
        result = runner.invoke(main, ["eval", str(tmp_path), "--json"])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        # independent recount from the per-sample records
        for label, cls in doc["classes"].items():
            rows = [s for s in doc["samples"] if s["label"] == label]
            assert len(rows) == cls["total"]
            assert sum(s["correct"] for s in rows) == cls["correct"]
        total = sum(c["total"] for c in doc["classes"].values())
        correct = sum(c["correct"] for c in doc["classes"].values())
        assert doc["overall_accuracy"] == pytest.approx(correct / total)

    def test_table_output(self, runner, corpus_dir, tmp_path):
        dst = tmp_path / "staff"
        dst.mkdir()
        src = os.path.join(corpus_dir, "staff")
        shutil.copy(os.path.join(src, "sample_00.json"), dst / "s.json")
        result = runner.invoke(main, ["eval", str(tmp_path)])
        assert result.exit_code == 0
        assert "staff" in result.output and "overall" in result.output
        assert "100.00%" in result.output

    def test_empty_corpus_fails(self, runner, tmp_path):
        result = runner.invoke(main, ["eval", str(tmp_path)])
        assert result.exit_code == 1
        assert "error:" in result.output


class TestCapture:
    def test_creates_library_entries(self, runner, corpus_dir, tmp_path):
        sketches = tmp_path / "sketches"
        sketches.mkdir()
        src = os.path.join(corpus_dir, "quarter_rest")
        for name in sorted(os.listdir(src))[:3]:
            shutil.copy(os.path.join(src, name), sketches / name)
        out = tmp_path / "lib.json"
        result = runner.invoke(
            main, ["capture", "my_rest", str(sketches), str(out)])
        assert result.exit_code == 0
        assert "captured 3 templates" in result.output
        library = TemplateLibrary.load(str(out))
        assert list(library.labels) == ["my_rest"]
        # appending accumulates instead of overwriting
        result = runner.invoke(
            main, ["capture", "other", str(sketches), str(out)])
        assert result.exit_code == 0
        library = TemplateLibrary.load(str(out))
        assert set(library.labels) == {"my_rest", "other"}

    def test_empty_dir_fails(self, runner, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        result = runner.invoke(
            main, ["capture", "x", str(empty), str(tmp_path / "lib.json")])
        assert result.exit_code == 1
        assert not (tmp_path / "lib.json").exists()


class TestLessonValidate:
    def test_bundled_lessons_pass(self, runner, lessons_dir):
        for name in sorted(os.listdir(lessons_dir)):
            path = os.path.join(lessons_dir, name, "lesson.json")
            if not os.path.exists(path):
                continue
            result = runner.invoke(main, ["lesson", "validate", path])
            assert result.exit_code == 0, result.output
            assert result.output.startswith("ok:")

    def test_broken_lesson_fails(self, runner, tmp_path):
        bad = tmp_path / "lesson.json"
        bad.write_text(json.dumps({"title": "T", "questions": []}))
        result = runner.invoke(main, ["lesson", "validate", str(bad)])
        assert result.exit_code == 1
        assert "error:" in result.output

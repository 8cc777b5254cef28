"""HTTP session service endpoints."""

import pytest
from fastapi.testclient import TestClient

from notesketch.service import create_app
from notesketch.sketchio import load_sketch

LESSON = "lesson1_staffs_and_clefs"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def make_session(client, mode="practice", lesson=LESSON):
    r = client.post("/v1/sessions", json={"lesson_id": lesson, "mode": mode})
    assert r.status_code == 201
    return r.json()


def submit_sketch(client, sid, path):
    sk = load_sketch(path)
    for s in sk.strokes:
        r = client.post(f"/v1/sessions/{sid}/strokes", json={
            "id": s.id,
            "points": [{"x": p.x, "y": p.y} for p in s.points]})
        assert r.status_code == 200
    return r.json()


class TestSessions:
    def test_lesson_catalog(self, client):
        r = client.get("/v1/lessons")
        assert r.status_code == 200
        ids = [l["id"] for l in r.json()["lessons"]]
        assert LESSON in ids and len(ids) == 5

    def test_create_practice_includes_hint_and_image(self, client):
        body = make_session(client, "practice")
        q = body["question"]
        assert q["number"] == 1 and "hint" in q and "solution_image" in q

    def test_create_quiz_hides_hint_and_image(self, client):
        body = make_session(client, "quiz")
        q = body["question"]
        assert "hint" not in q and "solution_image" not in q

    def test_unknown_lesson_404(self, client):
        r = client.post("/v1/sessions",
                        json={"lesson_id": "nope", "mode": "practice"})
        assert r.status_code == 404

    def test_unknown_mode_422(self, client):
        r = client.post("/v1/sessions",
                        json={"lesson_id": LESSON, "mode": "exam"})
        assert r.status_code == 422

    def test_unknown_session_404(self, client):
        assert client.post("/v1/sessions/missing/clear").status_code == 404


class TestStrokeFlow:
    def test_staff_recognition_and_check(self, client, corpus_dir):
        import os
        sid = make_session(client)["session_id"]
        body = submit_sketch(client, sid,
                             os.path.join(corpus_dir, "staff", "sample_00.json"))
        assert body["scene"]["staff"] is not None
        assert any(e["kind"] == "staff_assembled" for e in body["events"])
        r = client.post(f"/v1/sessions/{sid}/check")
        assert r.status_code == 200
        feedback = r.json()
        assert feedback["correct"] is True
        assert feedback["results"][0]["criterion"] == "staff"
        assert feedback["progress"]["correct"] == 1

    def test_check_wrong_answer(self, client):
        sid = make_session(client)["session_id"]
        r = client.post(f"/v1/sessions/{sid}/check")
        body = r.json()
        assert body["correct"] is False
        assert "no staff" in body["results"][0]["detail"]

    def test_undo_and_clear(self, client, corpus_dir):
        import os
        sid = make_session(client)["session_id"]
        submit_sketch(client, sid,
                      os.path.join(corpus_dir, "staff", "sample_00.json"))
        r = client.post(f"/v1/sessions/{sid}/undo")
        assert r.status_code == 200
        assert r.json()["scene"]["staff"] is None
        r = client.post(f"/v1/sessions/{sid}/clear")
        assert r.status_code == 200
        r = client.post(f"/v1/sessions/{sid}/undo")
        assert r.status_code == 409

    def test_malformed_stroke_422(self, client):
        sid = make_session(client)["session_id"]
        r = client.post(f"/v1/sessions/{sid}/strokes",
                        json={"id": 1, "points": []})
        assert r.status_code == 422

    def test_scenes_are_per_question(self, client, corpus_dir):
        import os
        sid = make_session(client)["session_id"]
        submit_sketch(client, sid,
                      os.path.join(corpus_dir, "staff", "sample_00.json"))
        client.post(f"/v1/sessions/{sid}/navigate", json={"to": 2})
        r = client.post(f"/v1/sessions/{sid}/clear")
        assert r.json()["scene"]["staff"] is None
        client.post(f"/v1/sessions/{sid}/navigate", json={"to": 1})
        r = client.post(f"/v1/sessions/{sid}/undo")  # question 1 kept strokes
        assert r.status_code == 200


class TestNavigation:
    def test_practice_any_direction(self, client):
        sid = make_session(client)["session_id"]
        assert client.post(f"/v1/sessions/{sid}/navigate",
                           json={"to": 5}).status_code == 200
        assert client.post(f"/v1/sessions/{sid}/navigate",
                           json={"to": 1}).status_code == 200

    def test_quiz_forward_only(self, client):
        sid = make_session(client, "quiz")["session_id"]
        assert client.post(f"/v1/sessions/{sid}/navigate",
                           json={"to": 3}).status_code == 200
        r = client.post(f"/v1/sessions/{sid}/navigate", json={"to": 2})
        assert r.status_code == 409

    def test_out_of_range(self, client):
        sid = make_session(client)["session_id"]
        assert client.post(f"/v1/sessions/{sid}/navigate",
                           json={"to": 9}).status_code == 422


class TestQuiz:
    def test_relock_and_report(self, client, corpus_dir):
        import os
        sid = make_session(client, "quiz")["session_id"]
        staff_sample = os.path.join(corpus_dir, "staff", "sample_00.json")
        # question 1 answered correctly, then re-check is locked
        submit_sketch(client, sid, staff_sample)
        r = client.post(f"/v1/sessions/{sid}/check")
        assert r.json()["correct"] is True
        assert client.post(f"/v1/sessions/{sid}/check").status_code == 409
        # remaining questions answered (incorrectly: empty scenes)
        for n in range(2, 6):
            client.post(f"/v1/sessions/{sid}/navigate", json={"to": n})
            r = client.post(f"/v1/sessions/{sid}/check")
            assert r.status_code == 200
            body = r.json()
        assert "report" in body
        assert body["report"]["score_percent"] == 20
        assert len(body["report"]["questions"]) == 5

    def test_practice_has_no_report(self, client):
        sid = make_session(client, "practice")["session_id"]
        for n in range(1, 6):
            client.post(f"/v1/sessions/{sid}/navigate", json={"to": n})
            body = client.post(f"/v1/sessions/{sid}/check").json()
        assert "report" not in body


class TestExpiry:
    def test_idle_sessions_expire(self, corpus_dir):
        app = create_app(idle_seconds=0.0)
        client = TestClient(app)
        sid = make_session(client)["session_id"]
        import time
        time.sleep(0.01)
        assert client.post(f"/v1/sessions/{sid}/clear").status_code == 404

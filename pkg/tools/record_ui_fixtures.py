"""Record real HTTP service responses as JSON fixtures for the UI tests.

The browser client is tested against a mocked transport that replays
these recorded payloads, so the fixtures must come from the actual
service. Re-run after any service schema change:

    python3 tools/record_ui_fixtures.py
"""

import json
import os

from fastapi.testclient import TestClient

from notesketch.service import create_app
from notesketch.sketchio import load_sketch

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT = os.path.join(ROOT, "frontend", "tests", "fixtures")
STAFF_SKETCH = os.path.join(ROOT, "assets", "corpus", "staff",
                            "sample_00.json")
LESSON = "lesson1_staffs_and_clefs"


def dump(name, payload):
    path = os.path.join(OUT, f"{name}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


def submit_staff(client, sid):
    responses = []
    for stroke in load_sketch(STAFF_SKETCH).strokes:
        r = client.post(f"/v1/sessions/{sid}/strokes", json={
            "id": stroke.id,
            "points": [{"x": p.x, "y": p.y} for p in stroke.points]})
        assert r.status_code == 200, r.text
        responses.append(r.json())
    return responses


def main():
    os.makedirs(OUT, exist_ok=True)
    client = TestClient(create_app())

    dump("lessons", client.get("/v1/lessons").json())

    # the raw strokes themselves, for raw-mode rendering tests
    sketch = load_sketch(STAFF_SKETCH)
    dump("strokes_staff", {
        "strokes": [{"id": s.id,
                     "points": [{"x": p.x, "y": p.y} for p in s.points]}
                    for s in sketch.strokes]})

    r = client.post("/v1/sessions",
                    json={"lesson_id": LESSON, "mode": "practice"})
    assert r.status_code == 201
    practice = r.json()
    dump("session_practice", practice)
    sid = practice["session_id"]

    dump("stroke_responses_staff", submit_staff(client, sid))
    dump("check_correct", client.post(f"/v1/sessions/{sid}/check").json())
    dump("navigate_q2",
         client.post(f"/v1/sessions/{sid}/navigate", json={"to": 2}).json())
    dump("check_incorrect", client.post(f"/v1/sessions/{sid}/check").json())
    dump("undo_empty_scene",
         client.post(f"/v1/sessions/{sid}/clear").json())

    r = client.post("/v1/sessions", json={"lesson_id": LESSON, "mode": "quiz"})
    assert r.status_code == 201
    quiz = r.json()
    dump("session_quiz", quiz)
    qid = quiz["session_id"]
    submit_staff(client, qid)
    first = client.post(f"/v1/sessions/{qid}/check").json()
    assert first["correct"] is True
    for n in range(2, 6):
        client.post(f"/v1/sessions/{qid}/navigate", json={"to": n})
        final = client.post(f"/v1/sessions/{qid}/check").json()
    assert "report" in final
    dump("quiz_final_check", final)


if __name__ == "__main__":
    main()

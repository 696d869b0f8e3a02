"""HTTP API: authentication, endpoint contracts, and end-to-end sync."""

import json

from conftest import ADMIN_TOKEN, record


def auth(user):
    return {"Authorization": f"Bearer {user['token']}"}


def admin_auth():
    return {"Authorization": f"Bearer {ADMIN_TOKEN}"}


class TestAuth:
    def test_catalog_is_public(self, client):
        assert client.get("/api/catalog").status_code == 200

    def test_allocation_requires_token(self, client, lecture):
        assert client.post(f"/api/lecture/{lecture}/allocation").status_code == 401
        bad = client.post(
            f"/api/lecture/{lecture}/allocation",
            headers={"Authorization": "Bearer nonsense"},
        )
        assert bad.status_code == 401

    def test_answers_must_match_caller(self, client, lecture, student):
        other = {"studentId": "someone-else", "lectureId": lecture, "records": []}
        resp = client.post("/api/answers", json=other, headers=auth(student))
        assert resp.status_code == 403

    def test_progress_needs_tutor_of_that_class(self, client, student, tutor):
        assert client.get("/api/class/c1/progress", headers=auth(student)).status_code == 403
        assert client.get("/api/class/c9/progress", headers=auth(tutor)).status_code == 403
        assert client.get("/api/class/c1/progress", headers=auth(tutor)).status_code == 200
        assert client.get("/api/class/c1/progress", headers=admin_auth()).status_code == 200

    def test_export_is_admin_only(self, client, tutor):
        assert client.get("/api/export/answers", headers=auth(tutor)).status_code == 403
        assert client.get("/api/export/answers", headers=admin_auth()).status_code == 200

    def test_user_creation_is_admin_only(self, client, student):
        body = {"name": "x", "role": "student"}
        assert client.post("/api/users", json=body, headers=auth(student)).status_code == 403
        created = client.post("/api/users", json=body, headers=admin_auth())
        assert created.status_code == 201
        assert created.json()["token"]


class TestCatalog:
    def test_empty_tree(self, client):
        assert client.get("/api/catalog").json() == {"courses": []}

    def test_tree_with_content(self, client, lecture):
        tree = client.get("/api/catalog").json()
        assert tree["courses"][0]["tutorials"][0]["lectures"][0]["questionCount"] == 12


class TestAllocationEndpoint:
    def test_payload_and_idempotency(self, client, lecture, student):
        first = client.post(f"/api/lecture/{lecture}/allocation", headers=auth(student))
        assert first.status_code == 200
        payload = first.json()
        assert len(payload["questions"]) == 12
        assert payload["grade"] == 0.0
        second = client.post(f"/api/lecture/{lecture}/allocation", headers=auth(student))
        assert {q["token"] for q in payload["questions"]} == {
            q["token"] for q in second.json()["questions"]
        }

    def test_unknown_lecture_404(self, client, student):
        resp = client.post("/api/lecture/ghost/allocation", headers=auth(student))
        assert resp.status_code == 404

    def test_empty_lecture_409(self, client, store, student):
        store.ensure_lecture("c", "t", "empty-lec")
        resp = client.post("/api/lecture/empty-lec/allocation", headers=auth(student))
        assert resp.status_code == 409


class TestAnswersEndpoint:
    def submit(self, client, student, lecture, records):
        return client.post(
            "/api/answers",
            json={"studentId": student["id"], "lectureId": lecture, "records": records},
            headers=auth(student),
        )

    def test_roundtrip_and_duplicate_redelivery(self, client, lecture, student):
        payload = client.post(
            f"/api/lecture/{lecture}/allocation", headers=auth(student)
        ).json()
        qs = payload["questions"]
        correct_at = lambda q: next(i for i, c in enumerate(q["choices"]) if c["correct"])
        batch = [record(qs[i]["token"], i + 1, chosen=correct_at(qs[i])) for i in range(8)]
        ack = self.submit(client, student, lecture, batch).json()
        assert [s["status"] for s in ack["statuses"]] == ["accepted"] * 8
        assert ack["grade"] == 10.0
        redelivered = self.submit(client, student, lecture, batch).json()
        assert [s["status"] for s in redelivered["statuses"]] == ["duplicate"] * 8
        assert redelivered["grade"] == 10.0

    def test_cross_student_token_rejected_over_http(self, client, lecture, student, store):
        eve = store.create_user("Eve", "student")
        stolen = client.post(
            f"/api/lecture/{lecture}/allocation", headers=auth(student)
        ).json()["questions"][0]["token"]
        ack = client.post(
            "/api/answers",
            json={
                "studentId": eve["id"],
                "lectureId": lecture,
                "records": [record(stolen, 1)],
            },
            headers=auth(eve),
        )
        assert ack.status_code == 200
        assert ack.json()["statuses"][0]["reason"] == "unknown_token"

    def test_validation_422_on_malformed_record(self, client, lecture, student):
        bad = {"studentId": student["id"], "lectureId": lecture, "records": [{"token": 5}]}
        assert client.post("/api/answers", json=bad, headers=auth(student)).status_code == 422


class TestProgressAndExportEndpoints:
    def test_progress_rows(self, client, lecture, student, tutor):
        client.post(f"/api/lecture/{lecture}/allocation", headers=auth(student))
        rows = client.get("/api/class/c1/progress", headers=auth(tutor)).json()["rows"]
        assert rows[0]["answered"] == 0
        assert rows[0]["grade"] == 0.0

    def test_export_ndjson_stream(self, client, lecture, student):
        payload = client.post(
            f"/api/lecture/{lecture}/allocation", headers=auth(student)
        ).json()
        batch = [record(payload["questions"][i]["token"], i + 1, chosen=0) for i in range(4)]
        client.post(
            "/api/answers",
            json={"studentId": student["id"], "lectureId": lecture, "records": batch},
            headers=auth(student),
        )
        resp = client.get(f"/api/export/answers?lecture={lecture}", headers=admin_auth())
        lines = [json.loads(l) for l in resp.text.strip().splitlines()]
        assert len(lines) == 4
        assert [r["seq"] for r in lines] == [1, 2, 3, 4]

        # a duplicate upload must not change the exported bytes
        first_bytes = resp.text
        client.post(
            "/api/answers",
            json={"studentId": student["id"], "lectureId": lecture, "records": batch},
            headers=auth(student),
        )
        again = client.get(f"/api/export/answers?lecture={lecture}", headers=admin_auth())
        assert again.text == first_bytes

"""HTTP API over the store: catalog, allocation, answer sync, progress, export.

Bearer-token authentication against the minimal user store; the configured
admin bootstrap token owns user creation and the raw-answer export. All
payloads are JSON (UTF-8); the export streams newline-delimited JSON.
"""

from __future__ import annotations

import json
from typing import Any, Literal

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, Field

from .allocation import EmptyLecture
from .store import Store, UnknownLecture


class AnswerRecordIn(BaseModel):
    token: str
    clientSeq: int = Field(ge=1)
    chosenIndex: int | None = None
    timeTaken: float = Field(ge=0)
    timedOut: bool = False
    clientTimestamp: int = 0


class UploadBatchIn(BaseModel):
    studentId: str
    lectureId: str
    records: list[AnswerRecordIn]


class UserIn(BaseModel):
    name: str
    role: Literal["student", "tutor", "admin"]
    classId: str | None = None


def create_app(store: Store, admin_token: str) -> FastAPI:
    app = FastAPI(title="drillkit sync server")

    def current_user(request: Request) -> dict[str, Any] | None:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            return None
        token = header[7:].strip()
        if token and token == admin_token:
            return {"id": "admin", "name": "admin", "role": "admin", "classId": None}
        return store.user_by_token(token)

    def require_user(request: Request) -> dict[str, Any]:
        user = current_user(request)
        if user is None:
            raise HTTPException(status_code=401, detail="missing or invalid bearer token")
        return user

    @app.get("/api/catalog")
    def catalog() -> dict[str, Any]:
        return store.catalog()

    @app.post("/api/lecture/{lecture_id}/allocation")
    def lecture_allocation(lecture_id: str, user: dict = Depends(require_user)) -> dict[str, Any]:
        try:
            return store.get_allocation(user["id"], lecture_id)
        except UnknownLecture:
            raise HTTPException(status_code=404, detail="unknown lecture")
        except EmptyLecture:
            raise HTTPException(status_code=409, detail="lecture has no questions")

    @app.post("/api/answers")
    def ingest_answers(batch: UploadBatchIn, user: dict = Depends(require_user)) -> dict[str, Any]:
        if user["id"] != batch.studentId:
            raise HTTPException(status_code=403, detail="batch student does not match caller")
        try:
            return store.ingest_batch(
                batch.studentId,
                batch.lectureId,
                [r.model_dump() for r in batch.records],
            )
        except UnknownLecture:
            raise HTTPException(status_code=404, detail="unknown lecture")

    @app.get("/api/class/{class_id}/progress")
    def class_progress(class_id: str, user: dict = Depends(require_user)) -> dict[str, Any]:
        is_tutor = user["role"] == "tutor" and user["classId"] == class_id
        if not (is_tutor or user["role"] == "admin"):
            raise HTTPException(status_code=403, detail="tutor role for this class required")
        return {"rows": store.class_progress(class_id)}

    @app.get("/api/export/answers")
    def export_answers(
        request: Request, lecture: str | None = None, student: str | None = None
    ) -> StreamingResponse:
        user = require_user(request)
        if user["role"] != "admin":
            raise HTTPException(status_code=403, detail="admin role required")

        def stream():
            for row in store.export_answers(lecture_id=lecture, student_id=student):
                yield json.dumps(row, separators=(",", ":")) + "\n"

        return StreamingResponse(stream(), media_type="application/x-ndjson")

    @app.post("/api/users", status_code=201)
    def create_user(body: UserIn, user: dict = Depends(require_user)) -> dict[str, Any]:
        if user["role"] != "admin":
            raise HTTPException(status_code=403, detail="admin role required")
        return store.create_user(body.name, body.role, body.classId)

    return app

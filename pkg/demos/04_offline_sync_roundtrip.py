#!/usr/bin/env python3
"""Offline answering and idempotent, order-tolerant sync, end to end.

Imports a small TeX bank into a temporary store, allocates questions to a
student over the HTTP API, answers a few questions "offline", then delivers
the answer batches out of order, twice. The server state converges to the
in-order history either way.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from drillkit.content import parse_tex_questions
from drillkit.server import create_app
from drillkit.store import Store

TEX = r"""
% tiny derivative bank
\question{$\frac{d}{dx} x^2 = ?$}
\truechoice{$2x$}
\falsechoice{$x$}
\falsechoice{$x^2$}
\explanation{Power rule: bring down the exponent.}

\question{$\frac{d}{dx} \sin x = ?$}
\truechoice{$\cos x$}
\falsechoice{$-\cos x$}
\falsechoice{$\tan x$}
\explanation{The sine's slope starts at 1 and follows the cosine.}

\question{$\frac{d}{dx} e^x = ?$}
\truechoice{$e^x$}
\falsechoice{$x e^{x-1}$}
\falsechoice{$1$}
\explanation{The exponential is its own derivative.}
"""

with tempfile.TemporaryDirectory() as tmp:
    store = Store(Path(tmp) / "demo.db", rng_seed=1)
    store.ensure_lecture("calc", "derivatives", "deriv-1", title="Derivatives I")
    added, skipped = store.import_questions("deriv-1", parse_tex_questions(TEX))
    print(f"imported {added} questions")

    client = TestClient(create_app(store, admin_token="demo-admin"))
    admin = {"Authorization": "Bearer demo-admin"}
    student = client.post(
        "/api/users", json={"name": "Nia", "role": "student", "classId": "c1"}, headers=admin
    ).json()
    bearer = {"Authorization": f"Bearer {student['token']}"}

    payload = client.post("/api/lecture/deriv-1/allocation", headers=bearer).json()
    print(f"allocation: {len(payload['questions'])} questions, grade {payload['grade']}")
    print(f"first token: {payload['questions'][0]['token']}")

    # answer all three correctly "offline" (clientSeq 1..3), then split the
    # queue into two batches and deliver them in the wrong order
    records = []
    for seq, q in enumerate(payload["questions"], start=1):
        correct_at = next(i for i, c in enumerate(q["choices"]) if c["correct"])
        records.append(
            {
                "token": q["token"],
                "clientSeq": seq,
                "chosenIndex": correct_at,
                "timeTaken": 9.0,
                "timedOut": False,
                "clientTimestamp": 1_700_000_000_000 + seq,
            }
        )

    def deliver(batch):
        return client.post(
            "/api/answers",
            json={"studentId": student["id"], "lectureId": "deriv-1", "records": batch},
            headers=bearer,
        ).json()

    late = deliver(records[2:])   # seq 3 arrives first
    early = deliver(records[:2])  # seqs 1-2 arrive second
    print("\nout-of-order delivery acks:", [s["status"] for s in late["statuses"]],
          "then", [s["status"] for s in early["statuses"]])
    print(f"grade after both: {early['grade']}")

    redelivered = deliver(records)  # the client lost the acks and retries
    print("full redelivery acks:", [s["status"] for s in redelivered["statuses"]])
    print(f"grade unchanged: {redelivered['grade']}")

    export = client.get("/api/export/answers?lecture=deriv-1", headers=admin).text
    rows = [json.loads(line) for line in export.strip().splitlines()]
    print(f"\nexport holds {len(rows)} records, seqs {[r['seq'] for r in rows]}")

    store.close()

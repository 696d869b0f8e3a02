"""Shared fixtures: a temporary store, a populated lecture, and an API client."""

import pytest
from fastapi.testclient import TestClient

from drillkit.content import make_question
from drillkit.pacing import TimeoutPolicy
from drillkit.server import create_app
from drillkit.store import Store

ADMIN_TOKEN = "root-bootstrap-token"


def make_bank(n, prefix="item"):
    """n distinct 4-choice questions; choice index 0 is always correct."""
    return [
        make_question(
            f"{prefix} {i}: what is ${i} + {i}$?",
            [(f"${2 * i}$", True), (f"${2 * i + 1}$", False), ("$0$", False), ("$-1$", False)],
            f"Twice {i} is {2 * i}.",
        )
        for i in range(n)
    ]


@pytest.fixture
def store(tmp_path):
    s = Store(tmp_path / "drill.db", rng_seed=7)
    yield s
    s.close()


@pytest.fixture
def lecture(store):
    store.ensure_lecture("calc101", "limits", "lec1", title="Limits I")
    store.import_questions("lec1", make_bank(12))
    return "lec1"


@pytest.fixture
def strict_lecture(store):
    """Lecture with a constant 30s timeout, for plausibility-rule tests."""
    store.ensure_lecture(
        "calc101",
        "limits",
        "lec-strict",
        timeout_policy=TimeoutPolicy(t_min=30, t_max=30, g_min=5, width=1),
    )
    store.import_questions("lec-strict", make_bank(10, prefix="strict"))
    return "lec-strict"


@pytest.fixture
def client(store):
    return TestClient(create_app(store, admin_token=ADMIN_TOKEN))


@pytest.fixture
def student(store):
    return store.create_user("Asta", "student", class_id="c1")


@pytest.fixture
def tutor(store):
    return store.create_user("Tove", "tutor", class_id="c1")


def record(token, seq, chosen=0, time_taken=5.0, timed_out=False, ts=1_700_000_000_000):
    return {
        "token": token,
        "clientSeq": seq,
        "chosenIndex": chosen,
        "timeTaken": time_taken,
        "timedOut": timed_out,
        "clientTimestamp": ts + seq,
    }

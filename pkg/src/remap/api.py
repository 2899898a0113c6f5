"""HTTP endpoint exposing interactive sessions to clients and the teaching UI.

Synchronous single-question protocol: the learner blocks on one pending
question per session; clients poll GET /sessions/{id}/pending, answer via
POST /sessions/{id}/answer, and fetch progress or the final machine from
/state and /machine. Sequences travel as arrays of symbol labels; machines
use the machine-file JSON schema.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import BadConfig, InvalidAnswer, SessionClosed, WrongQuestionId
from .session import Session, SessionManager


class NewSession(BaseModel):
    input_alphabet: list[str]
    output_alphabet: list[str]


class Answer(BaseModel):
    question_id: int
    kind: str
    answer: int | str | dict


def create_app(manager: SessionManager | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="remap session API")
    mgr = manager or SessionManager()
    app.state.manager = mgr

    def _get_session(session_id: str) -> Session:
        session = mgr.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return session

    @app.post("/sessions")
    def start_session(body: NewSession):
        try:
            session = mgr.create(body.input_alphabet, body.output_alphabet)
        except BadConfig as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {"session_id": session.id}

    @app.get("/sessions/{session_id}/pending")
    def get_pending(session_id: str):
        session = _get_session(session_id)
        session.wait_for_question(timeout=2.0)
        status, question = session.pending_view()
        return {"status": status, "question": question}

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, body: Answer):
        session = _get_session(session_id)
        try:
            session.post_answer(body.question_id, body.kind, body.answer)
        except WrongQuestionId as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except InvalidAnswer as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except SessionClosed as exc:
            raise HTTPException(status_code=410, detail=str(exc)) from exc
        session.wait_for_question(timeout=2.0)
        return {"ok": True}

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        return _get_session(session_id).state()

    @app.get("/sessions/{session_id}/machine")
    def get_machine(session_id: str):
        machine = _get_session(session_id).final_machine_dict()
        if machine is None:
            raise HTTPException(status_code=404, detail="session has no final machine yet")
        return machine

    @app.delete("/sessions/{session_id}")
    def close_session(session_id: str):
        _get_session(session_id).close()
        return {"ok": True}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

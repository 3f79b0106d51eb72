"""HTTP session service for live play.

Two modes per session: the machine asks and a human answers (spending
their one lie whenever they like), or the human asks against a machine
responder (honest-with-scripted-lie or the weight-maximizing adversary).

The store is in-memory; every request and response is appended to an
event log (one JSON line each, keys sorted) so sessions can be audited or
reconstructed after a crash.  Sessions expire to a terminal ``expired``
status after a configurable idle time; they are never silently deleted.

Mutations on one session are serialized: a second concurrent mutation
gets a 409 conflict instead of waiting.  Reads never block and never
mutate.

API (all JSON)::

    POST /sessions                    {mode, n, responder?} -> session view
    POST /sessions/{id}/answer       {value: yes|no}        -> next question / terminal
    POST /sessions/{id}/question     {ids|range|bit}        -> machine answer + summary
    GET  /sessions/{id}                                     -> full view

Errors are ``{code, message}`` with conventional status codes.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from .bounds import pelc_q1
from .candidates import Question
from .game import GameState, InconsistentResponderError, initial_state
from .responders import HonestResponder, WeightAdversary
from .strategy import GameResult, MachineQuestioner
from .transcript import serialize

MAX_EXPLICIT_IDS = 65536


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class EventLog:
    """Append-only JSONL log; one line per request/response pair."""

    def __init__(self, path: str | None) -> None:
        self._path = path
        self._lock = threading.Lock()
        if path:
            os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)

    def write(self, event: str, session: str | None, data: dict) -> None:
        if not self._path:
            return
        line = json.dumps(
            {
                "ts": datetime.now(timezone.utc).isoformat(timespec="milliseconds"),
                "session": session,
                "event": event,
                "data": data,
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        with self._lock:
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")


@dataclass
class Session:
    id: str
    mode: str
    n: int
    budget: int
    state: GameState
    driver: MachineQuestioner | None = None
    responder: HonestResponder | WeightAdversary | None = None
    status: str = "in_progress"
    identified: int | None = None
    asked: int = 0
    created: float = field(default_factory=time.monotonic)
    last_access: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, max_sessions: int, idle_timeout: float, log: EventLog) -> None:
        self.max_sessions = max_sessions
        self.idle_timeout = idle_timeout
        self.log = log
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            if len(self._sessions) >= self.max_sessions:
                raise ApiError(503, "capacity", "session capacity exceeded")
            self._sessions[session.id] = session

    def get(self, sid: str) -> Session:
        session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, "session_not_found", f"no session {sid}")
        now = time.monotonic()
        if (
            session.status == "in_progress"
            and now - session.last_access > self.idle_timeout
        ):
            session.status = "expired"
            self.log.write("session_expired", sid, {})
        session.last_access = now
        return session


# -- request models ---------------------------------------------------------


class ResponderSpec(BaseModel):
    mode: Literal["honest", "adversary"] = "adversary"
    x: int | None = None
    lie_at: int | None = None


class CreateSessionRequest(BaseModel):
    mode: Literal["machine_asks", "human_asks"]
    n: int = Field(ge=1)
    responder: ResponderSpec | None = None


class AnswerRequest(BaseModel):
    value: str

    @field_validator("value")
    @classmethod
    def _normalize(cls, v: str) -> str:
        low = v.strip().lower()
        if low in ("yes", "y"):
            return "yes"
        if low in ("no", "n"):
            return "no"
        raise ValueError("answer must be yes or no")


class QuestionRequest(BaseModel):
    ids: list[int] | None = None
    range: tuple[int, int] | None = None
    bit: int | None = None

    def shapes(self) -> int:
        return sum(v is not None for v in (self.ids, self.range, self.bit))


# -- view builders ----------------------------------------------------------


def summary_view(state: GameState) -> dict:
    summ = state.summary()
    return {
        "a": summ.a,
        "b": summ.b,
        "questions_remaining": summ.j,
        "weight": summ.weight,
    }


def question_view(session: Session) -> dict | None:
    driver = session.driver
    if driver is None or session.status != "in_progress":
        return None
    nxt = driver.current_question()
    if nxt is None:
        return None
    question, tag = nxt
    view = {
        "number": driver.asked + 1,
        "budget": driver.budget,
        "tag": tag,
        "kind": question.kind,
    }
    if question.kind == "bit":
        view["bit"] = question.bit
        view["text"] = (
            f"Write your number minus 1 in binary: is bit {question.bit} a 1?"
        )
        view["label"] = question.label
    else:
        members = question.member_ids(driver.state.width)
        real = [cid for cid in members if cid <= session.n]
        view["candidates"] = real
        view["bookkeeping_count"] = len(members) - len(real)
        view["text"] = "Is your number one of: " + ", ".join(map(str, real)) + "?"
        view["label"] = ",".join(map(str, members)) if members else "-"
    return view


def transcript_text(session: Session) -> str:
    if session.driver is not None:
        return serialize(session.state.transcript, session.driver.tags)
    return serialize(session.state.transcript)


def session_view(session: Session, include_transcript: bool = False) -> dict:
    view = {
        "id": session.id,
        "mode": session.mode,
        "n": session.n,
        "budget": session.budget,
        "status": session.status,
        "questions_asked": session.asked,
        "summary": summary_view(session.state),
        "identified": session.identified,
        "question": question_view(session),
    }
    if include_transcript:
        view["transcript_text"] = transcript_text(session)
    return view


def _finish_machine_session(session: Session) -> None:
    result = GameResult.from_driver(session.driver)
    if result.identified is not None:
        session.status = "won"
        session.identified = result.identified
    else:
        session.status = "responder_caught"


def create_app(
    max_n: int = 1 << 20,
    max_sessions: int = 64,
    idle_timeout: float = 3600.0,
    event_log_path: str | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="liargame", version="0.1.0")
    log = EventLog(event_log_path)
    store = SessionStore(max_sessions, idle_timeout, log)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"code": "invalid_request", "message": str(exc.errors())}
        )

    def _mutating(sid: str) -> Session:
        session = store.get(sid)
        if not session.lock.acquire(blocking=False):
            raise ApiError(409, "conflict", "another mutation is in flight for this session")
        if session.status != "in_progress":
            session.lock.release()
            raise ApiError(409, "not_in_progress", f"session status is {session.status}")
        return session

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest) -> JSONResponse:
        if req.n > max_n:
            raise ApiError(422, "n_too_large", f"n must be at most {max_n}")
        sid = secrets.token_urlsafe(12)
        if req.mode == "machine_asks":
            driver = MachineQuestioner(req.n)
            session = Session(
                id=sid,
                mode=req.mode,
                n=req.n,
                budget=driver.budget,
                state=driver.state,
                driver=driver,
            )
            if driver.done():
                _finish_machine_session(session)
        else:
            budget = pelc_q1(req.n)
            spec = req.responder or ResponderSpec()
            if spec.mode == "honest":
                x = spec.x if spec.x is not None else 1 + secrets.randbelow(req.n)
                if not 1 <= x <= req.n:
                    raise ApiError(422, "bad_secret", f"x must be within 1..{req.n}")
                if spec.lie_at is not None and not 1 <= spec.lie_at <= budget:
                    raise ApiError(422, "bad_lie_index", f"lie_at must be within 1..{budget}")
                responder = HonestResponder(x, spec.lie_at)
            else:
                responder = WeightAdversary()
            session = Session(
                id=sid,
                mode=req.mode,
                n=req.n,
                budget=budget,
                state=initial_state(req.n, budget),
                responder=responder,
            )
            if session.state.is_won():  # n = 1: nothing to ask
                session.status = "won"
                session.identified = session.state.identified()
        store.add(session)
        view = session_view(session)
        log.write("session_created", sid, {"request": req.model_dump(), "response": view})
        return JSONResponse(view)

    @app.post("/sessions/{sid}/answer")
    def post_answer(sid: str, req: AnswerRequest) -> JSONResponse:
        session = _mutating(sid)
        try:
            if session.driver is None:
                raise ApiError(409, "wrong_mode", "this session expects questions, not answers")
            driver = session.driver
            nxt = driver.current_question()
            if nxt is None:
                raise ApiError(409, "not_in_progress", "no question is pending")
            question, tag = nxt
            driver.apply_answer(question, req.value == "yes", tag)
            session.asked = driver.asked
            if driver.done():
                _finish_machine_session(session)
            view = {
                "status": session.status,
                "summary": summary_view(session.state),
                "identified": session.identified,
                "question": question_view(session),
            }
            log.write("answer_posted", sid, {"request": req.model_dump(), "response": view})
            return JSONResponse(view)
        finally:
            session.lock.release()

    @app.post("/sessions/{sid}/question")
    def post_question(sid: str, req: QuestionRequest) -> JSONResponse:
        session = _mutating(sid)
        try:
            if session.responder is None:
                raise ApiError(409, "wrong_mode", "this session expects answers, not questions")
            if req.shapes() != 1:
                raise ApiError(422, "bad_question", "provide exactly one of ids, range, bit")
            try:
                if req.ids is not None:
                    if len(req.ids) > MAX_EXPLICIT_IDS:
                        raise ApiError(
                            422,
                            "too_many_ids",
                            f"explicit sets are capped at {MAX_EXPLICIT_IDS} ids; use range or bit",
                        )
                    question = Question.from_ids(req.ids)
                elif req.range is not None:
                    question = Question.from_range(*req.range)
                else:
                    question = Question.from_bit(req.bit)
            except ValueError as exc:
                raise ApiError(422, "bad_question", str(exc)) from exc
            top = question.max_id()
            if top is not None and top > session.n:
                raise ApiError(422, "bad_question", f"ids must be within 1..{session.n}")
            session.asked += 1
            ans = session.responder.answer(session.asked, question, session.state)
            session.state.apply(question, ans)
            if session.state.is_won():
                try:
                    session.identified = session.state.identified()
                    session.status = "won"
                except InconsistentResponderError:
                    session.status = "responder_caught"
            elif session.state.j == 0:
                session.status = "out_of_questions"
            view = {
                "answer": "yes" if ans else "no",
                "status": session.status,
                "summary": summary_view(session.state),
                "identified": session.identified,
            }
            log.write("question_posted", sid, {"request": req.model_dump(), "response": view})
            return JSONResponse(view)
        finally:
            session.lock.release()

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> JSONResponse:
        session = store.get(sid)
        view = session_view(session, include_transcript=True)
        log.write("session_viewed", sid, {"response": {"status": session.status}})
        return JSONResponse(view)

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

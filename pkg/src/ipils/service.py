"""HTTP wire protocol for interactive sessions.

JSON request/response endpoints plus a server-sent-event stream per
session; the steering UI and the CLI client both speak this protocol.
"""

from __future__ import annotations

import json
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, Field

from .archive import ReferencePoint
from .engine import SearchConfig
from .instance_io import InstanceParseError
from .session import (
    InvalidStateError,
    NotFoundError,
    SessionManager,
)


class ConfigModel(BaseModel):
    failure_budget_per_element: int = 100
    max_evaluations: int = 100_000
    seed: int = 0
    strict_cone_mode: bool = False
    checkpoint_interval: int = 1000
    weight_count: int = 101

    def to_config(self) -> SearchConfig:
        return SearchConfig(**self.model_dump())


class CreateRequest(BaseModel):
    instance: str = Field(description="instance file contents")
    config: ConfigModel = ConfigModel()


class CreateResponse(BaseModel):
    session_id: str
    status: dict
    bounds: dict


class SessionRequest(BaseModel):
    session_id: str


class SetReferenceRequest(BaseModel):
    session_id: str
    r: list[int]
    active: bool = True


class AcceptRequest(BaseModel):
    session_id: str
    selection: str = Field(description="selection bitstring of an archive member")


def create_app(manager: SessionManager | None = None) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        app.state.manager.shutdown()

    app = FastAPI(title="interactive pareto iterated local search", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    mgr = manager or SessionManager()
    app.state.manager = mgr

    def get_session(session_id: str):
        try:
            return mgr.get(session_id)
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.post("/session.create", response_model=CreateResponse)
    def session_create(req: CreateRequest) -> CreateResponse:
        try:
            session = mgr.create(req.instance, req.config.to_config())
        except InstanceParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return CreateResponse(
            session_id=session.id,
            status=session.status(),
            bounds=session.bounds_event()["payload"],
        )

    @app.post("/session.setReference")
    def session_set_reference(req: SetReferenceRequest) -> dict:
        session = get_session(req.session_id)
        try:
            return session.set_reference(ReferencePoint(tuple(req.r), req.active))
        except InvalidStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/session.start")
    def session_start(req: SessionRequest) -> dict:
        session = get_session(req.session_id)
        try:
            session.start()
        except InvalidStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return session.status()

    @app.post("/session.pause")
    def session_pause(req: SessionRequest) -> dict:
        session = get_session(req.session_id)
        try:
            session.pause()
        except InvalidStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return session.status()

    @app.post("/session.accept")
    def session_accept(req: AcceptRequest) -> dict:
        session = get_session(req.session_id)
        try:
            accepted = session.accept(req.selection)
        except InvalidStateError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return {"accepted": accepted, "status": session.status()}

    @app.get("/session.status")
    def session_status(session_id: str) -> dict:
        return get_session(session_id).status()

    @app.get("/session.subscribe")
    def session_subscribe(
        session_id: str,
        max_events: int | None = Query(default=None, ge=1),
        idle_timeout: float | None = Query(default=None, gt=0),
    ) -> StreamingResponse:
        session = get_session(session_id)
        sub = session.subscribe()

        def stream():
            sent = 0
            try:
                for event in sub.events(timeout=idle_timeout):
                    yield f"data: {json.dumps(event)}\n\n"
                    sent += 1
                    if max_events is not None and sent >= max_events:
                        return
            finally:
                session.unsubscribe(sub)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app

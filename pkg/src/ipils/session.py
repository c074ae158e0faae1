"""Interactive optimization sessions: search worker, event log, subscribers.

A session owns one archive and at most one running search worker. All
state mutations go through the session lock; events are fanned out to
per-subscriber bounded queues that never block the worker.
"""

from __future__ import annotations

import itertools
import threading
import uuid
from collections import deque
from random import Random
from typing import Iterator

from .archive import ParetoArchive, ReferencePoint
from .bounds import BoundSets, compute_bound_sets
from .core import KnapsackInstance, Solution
from .engine import SearchConfig, SearchState, run_until
from .instance_io import parse_instance


class SessionError(Exception):
    pass


class InvalidStateError(SessionError):
    pass


class NotFoundError(SessionError):
    pass


SNAPSHOT_BUFFER = 64


class Subscriber:
    """Bounded event mailbox; overflow drops the oldest snapshot events only."""

    def __init__(self) -> None:
        self._events: deque = deque()
        self._cond = threading.Condition()
        self.closed = False

    def push(self, event: dict) -> None:
        with self._cond:
            if event["type"] == "snapshot":
                snapshots = sum(1 for e in self._events if e["type"] == "snapshot")
                if snapshots >= SNAPSHOT_BUFFER:
                    for i, e in enumerate(self._events):
                        if e["type"] == "snapshot":
                            del self._events[i]
                            break
            self._events.append(event)
            self._cond.notify_all()

    def close(self) -> None:
        with self._cond:
            self.closed = True
            self._cond.notify_all()

    def events(self, timeout: float | None = None) -> Iterator[dict]:
        """Yield events until the session is done or the subscriber closes."""
        while True:
            with self._cond:
                while not self._events and not self.closed:
                    if not self._cond.wait(timeout=timeout):
                        return
                if self._events:
                    event = self._events.popleft()
                else:
                    return
            yield event
            if event["type"] in ("accepted",):
                return


class Session:
    def __init__(
        self,
        instance: KnapsackInstance,
        config: SearchConfig,
        session_id: str | None = None,
    ) -> None:
        self.id = session_id or uuid.uuid4().hex[:12]
        self.instance = instance
        self.config = config
        self.state_name = "idle"
        self.lock = threading.RLock()
        self._subscribers: list[Subscriber] = []
        self.event_log: list[dict] = []
        self.latest_snapshot: dict | None = None
        self.accepted: dict | None = None
        self._worker: threading.Thread | None = None
        self._stop = threading.Event()

        rng = Random(config.seed)
        self.archive = ParetoArchive(instance.K)
        self.bounds: BoundSets = compute_bound_sets(instance, config.weight_count, rng)
        for sol in self.bounds.lower_solutions:
            self.archive.try_insert(sol)
        self.search_state = SearchState(self.archive, config)
        self.search_state.rng = rng
        self._log(self.bounds_event())

    # -- events -------------------------------------------------------

    def bounds_event(self) -> dict:
        return {
            "type": "bounds",
            "evaluations": 0,
            "payload": {
                "lower": [
                    {"selection": s.bitstring(), "objectives": list(s.objectives)}
                    for s in self.bounds.lower_solutions
                ],
                "upper": [
                    {
                        "weights": list(u.weights.weights),
                        "value": u.value,
                        "point": list(u.point),
                    }
                    for u in self.bounds.upper
                ],
                "archive": self.archive.snapshot(),
            },
        }

    def _log(self, event: dict) -> None:
        with self.lock:
            if event["type"] == "snapshot":
                # subscribers see strictly increasing generations; periodic
                # checkpoints with an unchanged archive are dropped
                if (
                    self.latest_snapshot is not None
                    and event["payload"]["generation"]
                    <= self.latest_snapshot["payload"]["generation"]
                ):
                    return
                self.latest_snapshot = event
            self.event_log.append(event)
            for sub in self._subscribers:
                sub.push(event)

    def _state_event(self, extra: dict | None = None) -> None:
        payload = {"state": self.state_name, "boundary": self.search_state.boundary}
        if extra:
            payload.update(extra)
        self._log(
            {
                "type": "state",
                "evaluations": self.search_state.evaluations,
                "payload": payload,
            }
        )

    # -- commands -----------------------------------------------------

    def set_reference(self, ref: ReferencePoint) -> dict:
        with self.lock:
            if self.state_name == "done":
                raise InvalidStateError("session is done")
            if len(ref.values) != self.instance.K:
                raise ValueError(
                    f"reference point must have {self.instance.K} components"
                )
            searching = self.state_name == "searching"
            self.archive.set_reference(ref)
            # While searching the engine logs the observed change with its
            # boundary index; the command itself is logged for audit.
            self._log(
                {
                    "type": "refchange",
                    "evaluations": self.search_state.evaluations,
                    "payload": {
                        "r": list(ref.values),
                        "active": ref.active,
                        "origin": "command",
                    },
                }
            )
            return {"ok": True, "observed_live": searching}

    def start(self) -> None:
        with self.lock:
            if self.state_name not in ("idle", "paused"):
                raise InvalidStateError(f"cannot start from state {self.state_name}")
            if not self.search_state.budget_left():
                raise InvalidStateError("evaluation budget exhausted")
            self._stop.clear()
            self.state_name = "searching"
            self._state_event()
            self._worker = threading.Thread(target=self._search_loop, daemon=True)
            self._worker.start()

    def _search_loop(self) -> None:
        run_until(
            self.search_state,
            self.instance,
            self.config,
            stop=self._stop.is_set,
            emit=self._log,
        )
        with self.lock:
            if self.state_name == "searching":
                self.state_name = "paused"
                reason = "stopped" if self._stop.is_set() else "budget"
                self._state_event({"reason": reason})

    def pause(self) -> None:
        with self.lock:
            if self.state_name != "searching":
                raise InvalidStateError(f"cannot pause from state {self.state_name}")
            self._stop.set()
            worker = self._worker
        if worker is not None:
            worker.join()

    def accept(self, selection_bitstring: str) -> dict:
        with self.lock:
            if self.state_name == "done":
                raise InvalidStateError("session is done")
        self._halt_worker()
        with self.lock:
            match = None
            for sol in self.archive.members():
                if sol.bitstring() == selection_bitstring:
                    match = sol
                    break
            if match is None:
                raise NotFoundError(f"no archive member with selection {selection_bitstring}")
            self.state_name = "done"
            self.accepted = {
                "selection": match.bitstring(),
                "objectives": list(match.objectives),
            }
            self._log(
                {
                    "type": "accepted",
                    "evaluations": self.search_state.evaluations,
                    "payload": self.accepted,
                }
            )
            return self.accepted

    def _halt_worker(self) -> None:
        with self.lock:
            worker = self._worker
            self._stop.set()
        if worker is not None and worker.is_alive():
            worker.join()

    def subscribe(self) -> Subscriber:
        """New subscriber primed with bounds, the latest snapshot, and state."""
        with self.lock:
            sub = Subscriber()
            sub.push(self.bounds_event())
            if self.latest_snapshot is not None:
                sub.push(self.latest_snapshot)
            if self.state_name == "done" and self.accepted is not None:
                sub.push(
                    {
                        "type": "accepted",
                        "evaluations": self.search_state.evaluations,
                        "payload": self.accepted,
                    }
                )
            self._subscribers.append(sub)
            return sub

    def unsubscribe(self, sub: Subscriber) -> None:
        with self.lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)
            sub.close()

    def status(self) -> dict:
        with self.lock:
            return {
                "id": self.id,
                "state": self.state_name,
                "evaluations": self.search_state.evaluations,
                "archive_size": len(self.archive),
                "reference": {
                    "r": list(self.archive.reference.values),
                    "active": self.archive.reference.active,
                },
                "instance": {
                    "name": self.instance.name,
                    "n": self.instance.n,
                    "K": self.instance.K,
                    "capacity": self.instance.capacity,
                },
            }

    def wait_idle(self, timeout: float | None = None) -> None:
        worker = self._worker
        if worker is not None:
            worker.join(timeout=timeout)


def replay_archive(
    instance: KnapsackInstance, config: SearchConfig, event_log: list[dict]
) -> ParetoArchive:
    """Rebuild the final archive from the seed and the logged events.

    Engine-observed reference changes are reapplied at their recorded
    boundary indices; segment ends (pauses) are replayed as scheduled
    stops so the pass structure matches the live run.
    """
    rng = Random(config.seed)
    archive = ParetoArchive(instance.K)
    bounds = compute_bound_sets(instance, config.weight_count, rng)
    for sol in bounds.lower_solutions:
        archive.try_insert(sol)
    state = SearchState(archive, config)
    state.rng = rng

    schedule: list[tuple[int, str, ReferencePoint | None]] = []
    segments = 0
    final_ref: ReferencePoint | None = None
    for event in event_log:
        if event["type"] == "refchange":
            payload = event["payload"]
            ref = ReferencePoint(tuple(payload["r"]), payload["active"])
            final_ref = ref
            if payload.get("origin") != "command":
                schedule.append((payload["boundary"], "ref", ref))
        elif event["type"] == "state":
            payload = event["payload"]
            if payload["state"] == "searching":
                segments += 1
            elif payload["state"] == "paused" and payload.get("reason") == "stopped":
                schedule.append((payload["boundary"], "stop", None))
    state.set_schedule(
        [(b, ref) for b, kind, ref in schedule if kind == "ref" and ref is not None]
    )
    stops = sorted(b for b, kind, _ in schedule if kind == "stop")
    state.set_stop_boundaries(stops)
    for _ in range(max(segments, 0)):
        state.clear_scheduled_stop()
        run_until(state, instance, config)
        if not state.budget_left():
            break
    if final_ref is not None and archive.reference != final_ref:
        archive.set_reference(final_ref)
    return archive


class SessionManager:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = itertools.count(1)

    def create(self, instance_text: str, config: SearchConfig) -> Session:
        instance = parse_instance(instance_text)
        with self._lock:
            session_id = f"s{next(self._counter)}"
        session = Session(instance, config, session_id=session_id)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        return session

    def shutdown(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
        for s in sessions:
            s._halt_worker()

"""What-if analysis HTTP service.

Sessions hold an immutable base graph plus a working graph with analyst
patches folded in. Patches never touch the base graph; an explicit export
returns the patched spec when the analyst wants to keep it. Errors use a
uniform body: {"error": str, "details": [...]}.

No authentication: deploy behind a trusted boundary.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .analysis import rank_paths, vector_consequence_pairs
from .catalog import builtin_catalog, validate_tags
from .errors import (
    AttackGraphError,
    DomainError,
    GraphValidationError,
    SpecParseError,
    UnknownEdgeError,
    UnknownVertexError,
    WrongKindError,
)
from .graph import (
    AttackGraph,
    EdgeUpdate,
    apply_update,
    build_graph,
    edge_weight,
    exploitation_probability,
    graph_to_spec,
    parse_updates,
)
from .render import graph_payload, report_payload


@dataclass
class Session:
    id: str
    base_graph: AttackGraph
    working_graph: AttackGraph
    applied_updates: list[EdgeUpdate] = field(default_factory=list)
    registered_pairs: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def descriptor(self) -> dict[str, Any]:
        return {
            "session": self.id,
            "vertices": self.working_graph.vertex_count,
            "edges": self.working_graph.edge_count,
            "applied_updates": len(self.applied_updates),
            "warnings": list(self.warnings),
        }


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = 0

    def create(self, graph: AttackGraph, warnings: list[str]) -> Session:
        with self._lock:
            self._counter += 1
            session = Session(
                id=f"s{self._counter}",
                base_graph=graph,
                working_graph=graph,
                warnings=warnings,
            )
            self._sessions[session.id] = session
            return session

    def get(self, session_id: str) -> Session | None:
        return self._sessions.get(session_id)

    def all(self) -> list[Session]:
        return list(self._sessions.values())


def _error(status: int, message: str, details: list[str] | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": message, "details": details or []}
    )


def _pair_summary(graph: AttackGraph, start: str, target: str) -> dict[str, Any]:
    report = rank_paths(graph, start, target)
    if report.unreachable:
        return {"unreachable": True, "shortest_path": None, "max_risk_coefficient": None}
    return {
        "unreachable": False,
        "shortest_path": list(report.shortest.path.vertices),
        "max_risk_coefficient": report.max_risk.risk_coefficient,
    }


def _validate_updates(graph: AttackGraph, updates: list[EdgeUpdate]) -> list[str]:
    """Pre-flight every patch entry so a failing batch reports all problems
    and leaves the session untouched."""
    problems: list[str] = []
    edges = dict(graph.edges)
    for update in updates:
        key = (update.source, update.target)
        name = f"edge {update.source}->{update.target}"
        if key not in edges:
            problems.append(f"{name}: does not exist")
            continue
        if update.metrics is not None:
            try:
                exploitation_probability(update.metrics)
            except DomainError as exc:
                problems.append(f"{name}: {exc}")
            continue
        assert update.probability is not None
        if update.probability == 0:
            problems.append(
                f"{name}: probability 0 is not a valid edge; remove the edge "
                "from the spec instead"
            )
        else:
            try:
                edge_weight(update.probability)
            except DomainError as exc:
                problems.append(f"{name}: {exc}")
    return problems


def create_app(preload_spec: Any | None = None, debug: bool = False) -> FastAPI:
    """Build the service app; optionally preload one session from a spec."""
    app = FastAPI(title="attack-graph risk service", version="0.1.0")
    store = SessionStore()
    catalog = builtin_catalog()

    def make_session(graph: AttackGraph) -> Session:
        return store.create(graph, warnings=validate_tags(graph, catalog))

    if preload_spec is not None:
        make_session(build_graph(preload_spec))

    def check_reconstructible(session: Session) -> None:
        if debug:
            rebuilt = apply_update(session.base_graph, session.applied_updates)
            assert rebuilt == session.working_graph, (
                "session working graph diverged from its update history"
            )

    @app.get("/health")
    async def health():
        return {"status": "ok", "sessions": len(store.all())}

    @app.get("/sessions")
    async def list_sessions():
        return {"sessions": [s.descriptor() for s in store.all()]}

    @app.put("/graph")
    async def load_graph(request: Request):
        content_type = request.headers.get("content-type", "")
        if "application/json" not in content_type.lower():
            return _error(415, "content type must be application/json")
        body = await request.body()
        try:
            graph = build_graph(body)
        except SpecParseError as exc:
            return _error(400, "malformed graph spec", [str(exc)])
        except GraphValidationError as exc:
            return _error(400, "graph spec failed validation", exc.violations)
        session = make_session(graph)
        return JSONResponse(status_code=200, content=session.descriptor())

    @app.get("/sessions/{session_id}/rank")
    async def rank(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id!r}")
        params = request.query_params
        start, target = params.get("from"), params.get("to")
        if not start or not target:
            return _error(422, "query parameters 'from' and 'to' are required")
        cost_raw = params.get("cost")
        cost = None
        if cost_raw is not None:
            try:
                cost = float(cost_raw)
            except ValueError:
                return _error(422, f"cost {cost_raw!r} is not a number")
        graph = session.working_graph
        try:
            report = rank_paths(graph, start, target, cost)
        except (UnknownVertexError, WrongKindError) as exc:
            return _error(422, str(exc))
        with session.lock:
            if (start, target) not in session.registered_pairs:
                session.registered_pairs.append((start, target))
        payload = report_payload(report)
        payload["session"] = session.id
        return payload

    @app.patch("/sessions/{session_id}/edges")
    async def whatif(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id!r}")
        body = await request.body()
        try:
            updates = parse_updates(body)
        except SpecParseError as exc:
            return _error(400, "malformed update document", [str(exc)])
        except DomainError as exc:
            return _error(422, "update rejected", [str(exc)])

        with session.lock:
            before_graph = session.working_graph
            problems = _validate_updates(before_graph, updates)
            if problems:
                # Reject-all: no partial application.
                return _error(422, "update batch rejected", problems)
            after_graph = apply_update(before_graph, updates)
            session.working_graph = after_graph
            session.applied_updates.extend(updates)
            pairs = list(session.registered_pairs) or vector_consequence_pairs(
                after_graph
            )
            check_reconstructible(session)

        return {
            "session": session.id,
            "applied": len(updates),
            "applied_total": len(session.applied_updates),
            "pairs": [
                {
                    "from": start,
                    "to": target,
                    "before": _pair_summary(before_graph, start, target),
                    "after": _pair_summary(after_graph, start, target),
                }
                for start, target in pairs
            ],
        }

    @app.post("/sessions/{session_id}/reset")
    async def reset(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id!r}")
        with session.lock:
            session.working_graph = session.base_graph
            session.applied_updates.clear()
            check_reconstructible(session)
        return session.descriptor()

    @app.get("/sessions/{session_id}/graph")
    async def graph_view(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id!r}")
        payload = graph_payload(session.working_graph)
        payload["session"] = session.id
        return payload

    @app.get("/sessions/{session_id}/export")
    async def export_spec(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id!r}")
        return graph_to_spec(session.working_graph)

    @app.exception_handler(AttackGraphError)
    async def attack_graph_error(_request: Request, exc: AttackGraphError):
        status = 422 if isinstance(exc, (UnknownEdgeError, DomainError)) else 500
        return _error(status, str(exc))

    return app


app = create_app()

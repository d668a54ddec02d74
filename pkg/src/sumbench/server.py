"""HTTP API for blind rating sessions.

JSON endpoints consumed by the rater UI:

    GET  /api/session?rater=<id>    session metadata and rater progress
    GET  /api/task/next?rater=<id>  next unrated task (blind fields only)
    POST /api/rating                201 created / 409 duplicate / 422 range
    GET  /api/aggregate             per-model means; 403 unless admin mode

Static UI assets are served from a configurable directory at ``/``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import DuplicateRatingError, OutOfRangeError, UnknownTaskError
from .rater import Rating, RatingSession, RatingStore, aggregate


class RatingBody(BaseModel):
    task_id: str
    rater_id: str
    overall: int
    criteria: dict[str, int] | None = None


def create_app(
    session: RatingSession,
    store: RatingStore,
    static_dir: str | Path | None = None,
    allow_aggregate: bool = False,
) -> FastAPI:
    app = FastAPI(title="sumbench rater service", docs_url=None, redoc_url=None)

    def progress(rater_id: str) -> dict:
        rated = store.rated_by(rater_id) if rater_id else set()
        return {"rated": len(rated), "task_count": len(session.tasks)}

    @app.get("/api/session")
    def get_session(rater: str = Query(default="")):
        return {"task_count": len(session.tasks), "progress": progress(rater)}

    @app.get("/api/task/next")
    def next_task(rater: str = Query(min_length=1)):
        rated = store.rated_by(rater)
        for task in session.tasks:
            if task.task_id not in rated:
                return {"done": False, "task": task.to_payload(), "progress": progress(rater)}
        return {"done": True, "task": None, "progress": progress(rater)}

    @app.post("/api/rating", status_code=201)
    def post_rating(body: RatingBody):
        rating = Rating(
            task_id=body.task_id,
            overall=body.overall,
            rater_id=body.rater_id,
            criteria=body.criteria,
        )
        try:
            stored = store.submit(rating)
        except UnknownTaskError as exc:
            return JSONResponse(status_code=404, content={"error": str(exc)})
        except OutOfRangeError as exc:
            return JSONResponse(status_code=422, content={"error": str(exc)})
        except DuplicateRatingError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        return {"status": "accepted", "task_id": stored.task_id}

    @app.get("/api/aggregate")
    def get_aggregate():
        if not allow_aggregate:
            return JSONResponse(
                status_code=403,
                content={"error": "aggregation is admin-only while the session is open"},
            )
        return {"aggregates": [agg.to_dict() for agg in aggregate(store)]}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app

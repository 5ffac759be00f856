"""HTTP face of the annotation service (JSON bodies, bearer-gated admin)."""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import Depends, FastAPI, Header, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .annotation import (
    AGGREGATION_MAJORITY,
    AnnotationService,
    AnnotationSubmission,
)
from .errors import AnnotationError, DuplicateSubmissionError
from .facts import fact_to_json


class RegisterBody(BaseModel):
    annotator_id: str = Field(alias="id")
    language: str

    model_config = {"populate_by_name": True}


class SubmissionBody(BaseModel):
    annotator_id: str
    marked_fact_ids: list[str] = []
    coverage: str = ""
    issue_text: str = ""
    timestamp: str = ""


def create_app(service: AnnotationService, admin_token: str) -> FastAPI:
    app = FastAPI(title="factalign annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def require_admin(authorization: str = Header(default="")) -> None:
        if authorization != f"Bearer {admin_token}":
            raise HTTPException(status_code=401, detail="missing or bad admin token")

    @app.post("/annotators", status_code=201)
    def register(body: RegisterBody):
        try:
            profile = service.register_annotator(body.annotator_id, body.language)
        except AnnotationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"annotator_id": profile.annotator_id, "language": profile.language}

    @app.get("/tasks/next")
    def next_task(annotator: str, language: str = ""):
        try:
            if not language:
                language = service._annotators[annotator].language if annotator in service._annotators else ""
            task = service.next_task(annotator, language)
        except AnnotationError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        if task is None:
            return Response(status_code=204)
        return task.payload()

    @app.post("/tasks/{task_id}/submission", status_code=201)
    def submit(task_id: str, body: SubmissionBody):
        submission = AnnotationSubmission(
            task_id=task_id,
            annotator_id=body.annotator_id,
            marked_fact_ids=frozenset(body.marked_fact_ids),
            coverage=body.coverage,
            issue_text=body.issue_text,
            timestamp=body.timestamp or datetime.now(timezone.utc).isoformat(),
        )
        try:
            record_id = service.submit_annotation(submission)
        except DuplicateSubmissionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except AnnotationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"record_id": record_id}

    @app.get("/admin/qualify", dependencies=[Depends(require_admin)])
    def qualify(language: str, top_n: int | None = None):
        ranked = service.qualify_annotators(language, top_n)
        return [
            {
                "annotator_id": p.annotator_id,
                "language": p.language,
                "golden_kappa": p.golden_kappa,
                "qualified": p.qualified,
            }
            for p in ranked
        ]

    @app.get("/admin/export", dependencies=[Depends(require_admin)])
    def export(language: str, rule: str = AGGREGATION_MAJORITY):
        counters: dict[str, int] = {}
        try:
            instances = service.export_gold(language, rule, counters=counters)
        except AnnotationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "instances": [
                {
                    "sentence": instance.sentence.text,
                    "language": instance.sentence.language,
                    "section": instance.section,
                    "method": instance.method,
                    "facts": [fact_to_json(f) for f in instance.facts],
                }
                for instance in instances
            ],
            "skipped": counters,
        }

    @app.get("/admin/stats", dependencies=[Depends(require_admin)])
    def stats():
        return service.stats()

    return app

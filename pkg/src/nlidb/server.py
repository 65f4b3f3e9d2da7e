"""HTTP service exposing translation, schema graphs and explanations.

All endpoints return JSON. Pipeline failures inside a request are
reported as a structured ``error`` object with HTTP 200 so clients can
render the failing stage; unknown databases are 404s.
"""

from __future__ import annotations

import json
from functools import lru_cache

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .errors import WorkspaceError
from .graph import export_json
from .pipeline import handle_explain_token, handle_translate
from .workspace import list_databases, load_workspace


class TranslateRequest(BaseModel):
    db: str
    query: str
    tagger: str = "gold"
    explain: bool = False


class ExplainRequest(BaseModel):
    db: str
    query: str
    token_index: int = Field(ge=0)
    tagger: str = "gold"


def create_app(workspace: str | None = None) -> FastAPI:
    app = FastAPI(title="nlidb", version="0.1.0")

    @lru_cache(maxsize=16)
    def bundle(db: str):
        try:
            return load_workspace(db, workspace)
        except WorkspaceError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/api/dbs")
    def dbs():
        return {"databases": list_databases(workspace)}

    @app.post("/api/translate")
    def translate(req: TranslateRequest):
        return handle_translate(bundle(req.db), req.query, req.tagger, req.explain)

    @app.get("/api/schema/{db}/graph")
    def schema_graph(db: str):
        return json.loads(export_json(bundle(db).graph))

    @app.post("/api/explain")
    def explain(req: ExplainRequest):
        return handle_explain_token(
            bundle(req.db), req.query, req.token_index, req.tagger
        )

    return app

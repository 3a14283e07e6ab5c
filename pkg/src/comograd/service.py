"""HTTP query service over a feature database.

The database is loaded once at startup and held immutably; every request is
stateless and independent, so the app can answer them concurrently. Domain
errors (unparseable coordinate bodies, too-short chains, kind mismatches)
become 400 responses and never take the process down.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import ComogradError
from .pipeline import query_bytes
from .store import FeatureDb, load_db


class QueryRequest(BaseModel):
    content: str = Field(description="coordinate file body, fixed-column ATOM records")
    k: int = Field(default=50, ge=1, description="number of hits to return")
    chain: str | None = Field(default=None, description="chain selector; first chain when absent")


class Hit(BaseModel):
    rank: int
    id: str
    distance: float


class QueryResponse(BaseModel):
    kind: str
    hits: list[Hit]


class InfoResponse(BaseModel):
    kind: str
    entries: int
    vector_length: int


def create_app(db: FeatureDb) -> FastAPI:
    app = FastAPI(title="comograd", description="protein tertiary-structure retrieval by gradient descriptors of distance matrices")

    @app.exception_handler(ComogradError)
    async def _domain_error(_request, exc: ComogradError):
        return JSONResponse(
            status_code=400, content={"error": type(exc).__name__, "detail": str(exc)}
        )

    @app.get("/info", response_model=InfoResponse)
    def info() -> InfoResponse:
        return InfoResponse(kind=db.kind.label, entries=len(db), vector_length=db.vector_length)

    @app.post("/query", response_model=QueryResponse)
    def run_query(req: QueryRequest) -> QueryResponse:
        hits = query_bytes(db, req.content, req.k, chain=req.chain)
        return QueryResponse(
            kind=db.kind.label,
            hits=[Hit(rank=h.rank, id=h.id, distance=h.distance) for h in hits],
        )

    return app


def serve(db_path, listen: str = "127.0.0.1:8000") -> None:
    """Load the database and serve it until interrupted."""
    import uvicorn

    host, _, port = listen.rpartition(":")
    uvicorn.run(create_app(load_db(db_path)), host=host or "127.0.0.1", port=int(port))

"""HTTP completion service.

GET /complete?q=<query>&k=<int>&mode=<prefix|conjunctive>&variant=<heap|fwd|fc>
returns the parsed query, ranked results and the per-phase timing breakdown.
GET /healthz reports liveness, GET /stats the corpus statistics. Responses
for a fixed index are a pure function of (q, k, mode, variant); requests
share one immutable index and never mutate state.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from .engine import DEFAULT_K, MODES, VARIANTS, Engine
from .index import Index

MAX_K = 100


def create_app(index: Index) -> FastAPI:
    engine = Engine(index)
    app = FastAPI(title="qac completion service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.get("/complete")
    def complete(q: str | None = Query(default=None),
                 k: int = Query(default=DEFAULT_K),
                 mode: str = Query(default="conjunctive"),
                 variant: str = Query(default="fwd")):
        if not q:
            raise HTTPException(status_code=400, detail="missing or empty query parameter q")
        if not 1 <= k <= MAX_K:
            raise HTTPException(status_code=400, detail=f"k must be in [1, {MAX_K}]")
        if mode not in MODES:
            raise HTTPException(status_code=400, detail=f"mode must be one of {MODES}")
        if variant not in VARIANTS:
            raise HTTPException(status_code=400, detail=f"variant must be one of {VARIANTS}")
        try:
            response = engine.search(q, k=k, mode=mode, variant=variant)
        except Exception as exc:  # pragma: no cover - defensive 500
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return {
            "query": q,
            "parsed": {
                "prefix_ids": list(response.parsed.prefix_ids),
                "suffix": response.parsed.suffix,
            },
            "results": [
                {"rank": s.rank, "docid": s.docid, "score": s.score,
                 "completion": s.completion}
                for s in response.results
            ],
            "timings_us": response.timings_us,
        }

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/stats")
    def stats():
        return {
            "completions": index.meta.completion_count,
            "unique_terms": index.meta.term_count,
            "avg_terms_per_completion": index.meta.avg_terms_per_completion,
        }

    return app


def serve(index: Index, host: str = "127.0.0.1", port: int = 8080) -> None:
    """Run the service until interrupted; uvicorn drains in-flight requests
    on shutdown."""
    import uvicorn

    uvicorn.run(create_app(index), host=host, port=port, log_level="info")

# main.py - FastAPI application for the mapping class group verifier
import os
import time
from contextlib import asynccontextmanager
from typing import Optional

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from functions.presentation_factory import stukow_presentation
from functions.surface_model import SurfaceSpec

# Import URL handlers
from urls import groups, live, presentations, verification
from urls.common import MAX_COSETS, MAX_GENUS
from urls.groups import EnumerateRequest
from urls.presentations import CheckWordRequest

STARTED_AT = int(time.time())


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application lifespan"""
    print("Starting MCG Verifier FastAPI Server...")
    print(f"Genus limit: {MAX_GENUS}, coset limit: {MAX_COSETS}")
    print("Health Check: /health")
    print("\nPress Ctrl+C to stop the server\n")

    # Warm the presentation cache for small surfaces
    for g in range(2, min(MAX_GENUS, 6) + 1):
        for n in (0, 1):
            stukow_presentation(SurfaceSpec(genus=g, boundary=n))
    print("✓ Presentations ready")

    yield

    print("Shutting down FastAPI Server...")


app = FastAPI(
    title="MCG Verifier Server",
    description="Presentations, homology checks and derivation replay for mapping class groups of non-orientable surfaces",
    version="1.0.0",
    lifespan=lifespan
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# ============= ROUTES =============

# Presentation endpoints
@app.get("/present/{genus}/{boundary}")
async def get_presentation_handler(genus: int, boundary: int, enumeration: bool = False):
    return presentations.get_presentation(genus, boundary, enumeration)


@app.post("/check-word")
async def check_word_handler(request: CheckWordRequest):
    return presentations.check_word(request)


# Verification endpoints
@app.get("/oracle/{genus}/{boundary}")
async def oracle_handler(genus: int, boundary: int, family: Optional[str] = None):
    return verification.check_oracle(genus, boundary, family)


@app.get("/replay/{script}/{genus}/{boundary}")
async def replay_handler(script: str, genus: int, boundary: int):
    return verification.replay_script(script, genus, boundary)


# Group endpoints
@app.post("/enumerate")
async def enumerate_handler(request: EnumerateRequest):
    return groups.enumerate_cosets(request)


@app.get("/abelianize/{genus}/{boundary}")
async def abelianize_handler(genus: int, boundary: int):
    return groups.abelianize(genus, boundary)


# Health and status
@app.get("/health")
async def health_check_handler():
    return live.health_check(STARTED_AT, MAX_GENUS, MAX_COSETS)


@app.get("/status")
async def status_handler(max_genus: int = 4):
    return live.view_status(min(max_genus, MAX_GENUS))


# Root endpoint
@app.get("/")
async def root():
    return {
        "name": "MCG Verifier Server",
        "version": "1.0.0",
        "framework": "FastAPI",
        "endpoints": {
            "GET /present/{genus}/{boundary}": "Generators and tagged relators (?enumeration=true adds the flat format)",
            "POST /check-word": "Homology action of a word",
            "GET /oracle/{genus}/{boundary}": "Check every relator on mod-2 homology (?family=TAG)",
            "GET /replay/{script}/{genus}/{boundary}": "Replay a builtin derivation script",
            "POST /enumerate": "Todd-Coxeter coset enumeration",
            "GET /abelianize/{genus}/{boundary}": "Abelian invariants of the presentation",
            "GET /health": "Health check",
            "GET /status": "HTML summary of oracle and replay results",
        }
    }


if __name__ == '__main__':
    uvicorn.run(
        "main:app",
        host=os.getenv("HOST", "0.0.0.0"),
        port=int(os.getenv("PORT", "8000")),
        reload=False,
        log_level="info"
    )

import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.conf.config import config
from src.entity.exceptions import PartySelectionError
from src.routes import axioms, compute

logging.basicConfig(level=config.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

app = FastAPI(title="Party selection")
app.include_router(compute.router, prefix="/api")
app.include_router(axioms.router, prefix="/api")

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(PartySelectionError)
async def party_selection_error_handler(request: Request, err: PartySelectionError):
    return JSONResponse(status_code=err.status_code, content={"detail": str(err)})


@app.get("/api/healthchecker")
async def healthchecker():
    return {"message": "Welcome to party selection!"}

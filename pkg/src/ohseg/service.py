"""HTTP service backing the annotation UI.

File-backed persistence shares the corpus on-disk format, so saved
segmentations are immediately consumable by the evaluation commands.
There is no authentication: the annotator id is a path segment, which is
deliberate and only suitable for a trusted research deployment.
"""

from __future__ import annotations

import threading
from importlib import resources
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from . import corpus as corpus_mod
from .errors import ValidationError


def _load_instructions() -> str:
    ref = resources.files("ohseg").joinpath("data", "instructions.html")
    return ref.read_text(encoding="utf-8")


def create_app(corpus_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    root = Path(corpus_dir)
    loaded = corpus_mod.load_corpus(root)
    transcripts = {t.id: t for t in loaded.transcripts}
    instructions = _load_instructions()

    app = FastAPI(title="ohseg annotation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )

    write_locks: dict[tuple[str, str], threading.Lock] = {}
    locks_guard = threading.Lock()

    def lock_for(annotator: str, transcript_id: str) -> threading.Lock:
        key = (annotator, transcript_id)
        with locks_guard:
            return write_locks.setdefault(key, threading.Lock())

    def seg_path(annotator: str, transcript_id: str) -> Path:
        return root / "segmentations" / annotator / f"{transcript_id}.json"

    @app.get("/api/transcripts")
    def list_transcripts():
        return [
            {"id": t.id, "title": t.title,
             "sentence_count": t.sentence_count,
             "turns_count": len(t.turns)}
            for t in loaded.transcripts
        ]

    @app.get("/api/transcripts/{transcript_id}")
    def get_transcript(transcript_id: str):
        t = transcripts.get(transcript_id)
        if t is None:
            raise HTTPException(status_code=404, detail="unknown transcript")
        # the UI never needs POS tags
        return corpus_mod.transcript_to_dict(t, include_tags=False)

    @app.get("/api/segmentations/{annotator}/{transcript_id}")
    def get_segmentation(annotator: str, transcript_id: str):
        if transcript_id not in transcripts:
            raise HTTPException(status_code=404, detail="unknown transcript")
        path = seg_path(annotator, transcript_id)
        if not path.is_file():
            raise HTTPException(status_code=404, detail="no segmentation saved")
        doc = corpus_mod._read_json(path)
        return doc

    @app.put("/api/segmentations/{annotator}/{transcript_id}")
    async def put_segmentation(annotator: str, transcript_id: str,
                               request: Request):
        t = transcripts.get(transcript_id)
        if t is None:
            raise HTTPException(status_code=404, detail="unknown transcript")
        try:
            body = await request.json()
        except Exception:
            return JSONResponse(status_code=400, content={
                "violations": ["body is not valid JSON"]})
        body = dict(body)
        body["transcript_id"] = transcript_id
        body["annotator"] = annotator
        try:
            seg = corpus_mod.segmentation_from_dict(body)
            corpus_mod.validate_segmentation(seg, t)
        except (ValidationError, TypeError, ValueError) as e:
            return JSONResponse(status_code=400, content={
                "violations": [str(e)]})
        with lock_for(annotator, transcript_id):
            path = seg_path(annotator, transcript_id)
            revision = 1
            if path.is_file():
                try:
                    old = corpus_mod._read_json(path)
                    revision = int(old.get("revision", 0)) + 1
                except Exception:
                    revision = 1
            doc = corpus_mod.segmentation_to_dict(seg)
            doc.pop("revision", None)
            doc["revision"] = revision
            corpus_mod.write_json_atomic(path, doc)
        return {"revision": revision}

    @app.get("/instructions", response_class=HTMLResponse)
    def get_instructions():
        return instructions

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")

    return app

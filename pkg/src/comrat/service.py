"""HTTP facade over the analysis engine.

Commit analysis is synchronous; module analysis runs as a background job
with polled progress, since large histories take minutes against the
real API. Jobs live in memory under an LRU cap. Tokens arrive in the
request body, exist only for the lifetime of their job, and are scrubbed
from any error text before it becomes visible.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from collections import OrderedDict
from contextlib import asynccontextmanager
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

from fastapi import FastAPI, HTTPException, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .classify import AdapterCrashed, AdapterProtocolError, AdapterTimeout, ClassifierSpec
from .commit_analyzer import DEFAULT_THRESHOLD, analyze_commit_message, commit_report_document
from .errors import scrub_secret
from .github_ingest import ModuleRef, fetch_commits
from .pipeline import build_dataset, dataset_fetched_at
from .report import build_report, export_dataset_csv, serialize_report

__all__ = ["Job", "JobRegistry", "create_app", "MAX_MESSAGE_BYTES"]

MAX_MESSAGE_BYTES = 64 * 1024
# Body cap leaves room for JSON escaping of a maximum-size message.
_MAX_BODY_BYTES = 8 * MAX_MESSAGE_BYTES

_STATE_ORDER = {"queued": 0, "fetching": 1, "classifying": 2, "analyzing": 3, "done": 4, "failed": 4}
_TERMINAL = frozenset({"done", "failed"})


@dataclass
class Job:
    """One module analysis run. All mutation goes through the methods below,
    which enforce forward-only state transitions and monotone progress."""

    id: str
    module_url: str
    created_at: datetime
    state: str = "queued"
    fetched_commits: int = 0
    total_commits: int | None = None
    classified_sentences: int = 0
    total_sentences: int | None = None
    error: str | None = None
    report_bytes: bytes | None = None
    csv_bytes: bytes | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def advance(self, state: str) -> None:
        with self._lock:
            if self.state in _TERMINAL:
                return
            if _STATE_ORDER[state] < _STATE_ORDER[self.state]:
                raise ValueError(f"job cannot move {self.state} -> {state}")
            self.state = state

    def update_fetched(self, n: int) -> None:
        with self._lock:
            self.fetched_commits = max(self.fetched_commits, n)

    def set_total_commits(self, n: int) -> None:
        with self._lock:
            self.fetched_commits = max(self.fetched_commits, n)
            self.total_commits = n

    def update_classified(self, done: int, total: int) -> None:
        with self._lock:
            self.classified_sentences = max(self.classified_sentences, done)
            self.total_sentences = total

    def finish(self, report_bytes: bytes, csv_bytes: bytes) -> None:
        with self._lock:
            if self.state in _TERMINAL:
                return
            self.report_bytes = report_bytes
            self.csv_bytes = csv_bytes
            self.state = "done"

    def fail(self, message: str) -> None:
        with self._lock:
            if self.state in _TERMINAL:
                return
            self.error = message
            self.state = "failed"

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "job_id": self.id,
                "module_url": self.module_url,
                "state": self.state,
                "created_at": self.created_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "progress": {
                    "fetched_commits": self.fetched_commits,
                    "total_commits": self.total_commits,
                    "classified_sentences": self.classified_sentences,
                    "total_sentences": self.total_sentences,
                },
                "error": self.error,
            }


class JobRegistry:
    """In-memory job store with an LRU cap.

    Eviction prefers finished jobs, then queued ones (their worker skips
    execution once evicted); running jobs go only as a last resort.
    """

    def __init__(self, cap: int):
        if cap < 1:
            raise ValueError("job capacity must be at least 1")
        self._cap = cap
        self._jobs: OrderedDict[str, Job] = OrderedDict()
        self._lock = threading.Lock()

    def add(self, job: Job) -> None:
        with self._lock:
            while len(self._jobs) >= self._cap:
                self._evict_one()
            self._jobs[job.id] = job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is not None:
                self._jobs.move_to_end(job_id)
            return job

    def contains(self, job_id: str) -> bool:
        with self._lock:
            return job_id in self._jobs

    def _evict_one(self) -> None:
        for jid, job in self._jobs.items():
            if job.state in _TERMINAL:
                del self._jobs[jid]
                return
        for jid, job in self._jobs.items():
            if job.state == "queued":
                del self._jobs[jid]
                return
        self._jobs.popitem(last=False)


def _json_object(raw: bytes) -> dict:
    try:
        data = json.loads(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail="request body is not valid JSON")
    if not isinstance(data, dict):
        raise HTTPException(status_code=400, detail="request body must be a JSON object")
    return data


def create_app(
    classifier_spec: ClassifierSpec | None = None,
    cors_origins: list[str] | None = None,
    max_jobs: int = 16,
    workers: int = 2,
    rate_limit_policy: str = "wait",
    cache_dir: str | None = None,
    sleep: Callable[[float], None] = time.sleep,
    now: Callable[[], float] = time.time,
) -> FastAPI:
    spec = classifier_spec or ClassifierSpec(kind="lexicon")
    registry = JobRegistry(max_jobs)
    executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="comrat-job")

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        try:
            yield
        finally:
            executor.shutdown(wait=False, cancel_futures=True)

    app = FastAPI(title="comrat", lifespan=lifespan)
    app.state.registry = registry
    app.state.executor = executor
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request body"})

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.post("/api/commit-analysis")
    async def commit_analysis(request: Request):
        raw = await request.body()
        if len(raw) > _MAX_BODY_BYTES:
            raise HTTPException(status_code=413, detail="request body too large")
        data = _json_object(raw)
        message = data.get("message")
        if not isinstance(message, str):
            raise HTTPException(status_code=400, detail="field 'message' must be a string")
        if len(message.encode("utf-8")) > MAX_MESSAGE_BYTES:
            raise HTTPException(status_code=413, detail="message exceeds 64 KiB")
        threshold = data.get("threshold", DEFAULT_THRESHOLD)
        if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
            raise HTTPException(status_code=400, detail="field 'threshold' must be a number")
        try:
            report = await run_in_threadpool(
                analyze_commit_message, message, spec, float(threshold)
            )
        except (AdapterCrashed, AdapterProtocolError, AdapterTimeout) as exc:
            raise HTTPException(status_code=502, detail=f"classifier adapter failed: {exc}")
        return commit_report_document(report)

    def _run_job(job: Job, module: ModuleRef) -> None:
        if not registry.contains(job.id):
            return  # evicted while queued
        try:
            job.advance("fetching")
            commits = fetch_commits(
                module,
                rate_limit_policy,
                sleep=sleep,
                now=now,
                progress=job.update_fetched,
            )
            job.set_total_commits(len(commits))
            fetched_at = dataset_fetched_at(module)
            job.advance("classifying")
            dataset = build_dataset(
                commits, spec, module=module, fetched_at=fetched_at, progress=job.update_classified
            )
            job.advance("analyzing")
            report = build_report(dataset, classifier=spec.kind)
            job.finish(serialize_report(report), export_dataset_csv(dataset))
        except Exception as exc:  # noqa: BLE001  (job boundary: everything becomes a failed state)
            job.fail(scrub_secret(str(exc) or type(exc).__name__, module.token))

    @app.post("/api/module-analysis", status_code=202)
    async def module_analysis(request: Request):
        raw = await request.body()
        if len(raw) > _MAX_BODY_BYTES:
            raise HTTPException(status_code=413, detail="request body too large")
        data = _json_object(raw)
        url = data.get("module_url")
        if not isinstance(url, str) or not url:
            raise HTTPException(status_code=400, detail="field 'module_url' must be a non-empty string")
        token = data.get("token")
        if token is not None and not isinstance(token, str):
            raise HTTPException(status_code=400, detail="field 'token' must be a string")
        try:
            module = ModuleRef(api_url=url, token=token or None, cache_dir=cache_dir)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        job = Job(
            id=secrets.token_hex(8),
            # display copy: if the caller pasted the token into the URL,
            # it must not surface in status snapshots either
            module_url=scrub_secret(url, module.token),
            created_at=datetime.now(timezone.utc),
        )
        registry.add(job)
        executor.submit(_run_job, job, module)
        return {"job_id": job.id}

    def _job_or_404(job_id: str) -> Job:
        job = registry.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail="unknown job")
        return job

    @app.get("/api/jobs/{job_id}")
    async def job_status(job_id: str):
        return _job_or_404(job_id).snapshot()

    @app.get("/api/jobs/{job_id}/report")
    async def job_report(job_id: str):
        job = _job_or_404(job_id)
        snap = job.snapshot()
        if snap["state"] != "done":
            raise HTTPException(status_code=409, detail=f"job is {snap['state']}, not done")
        return Response(content=job.report_bytes, media_type="application/json")

    @app.get("/api/jobs/{job_id}/dataset.csv")
    async def job_dataset(job_id: str):
        job = _job_or_404(job_id)
        snap = job.snapshot()
        if snap["state"] != "done":
            raise HTTPException(status_code=409, detail=f"job is {snap['state']}, not done")
        return Response(content=job.csv_bytes, media_type="text/csv; charset=utf-8")

    return app

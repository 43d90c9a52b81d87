"""Commit-history ingestion from the GitHub REST API.

Fetches the full history of a module (a path inside a repository, via the
``/repos/{owner}/{repo}/commits?path=...`` endpoint), following
pagination with ``per_page=100`` until an empty page, de-duplicating by
sha. Rate-limit headers are tracked after every response; when the
authenticated hourly budget runs out the caller either waits for the
reset or aborts keeping what was fetched. An optional on-disk cache
avoids burning the budget on repeated runs of retrospective analyses.

Timing is injectable (``sleep``/``now``) so tests drive a fake clock.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable
from urllib.parse import urlparse

import requests

from .errors import ComratError

__all__ = [
    "ModuleRef",
    "Commit",
    "RateLimitState",
    "CacheEntry",
    "AuthError",
    "RateLimited",
    "NotFound",
    "NetworkError",
    "MalformedResponse",
    "fetch_commits",
    "check_rate_limit",
    "cache_store",
    "cache_load",
    "load_cache_entry",
    "parse_github_datetime",
]

logger = logging.getLogger(__name__)

PER_PAGE = 100
_RETRY_DELAYS = (1.0, 2.0, 4.0)
_MAX_RATE_LIMIT_WAITS = 10
_SHA_RE = re.compile(r"^[0-9a-f]{40}$")
_LOOPBACK_HOSTS = frozenset({"localhost", "127.0.0.1", "::1", "[::1]"})


class AuthError(ComratError):
    """401, or a 403 that is not rate-limit exhaustion."""


class NotFound(ComratError):
    """404 from the commits endpoint."""


class NetworkError(ComratError):
    """Transport failure or 5xx that survived the retry budget."""


class MalformedResponse(ComratError):
    """Response body is not the commit-list shape this client expects."""


class RateLimited(ComratError):
    """Hourly request budget exhausted.

    ``reset_at`` is when the budget refills; ``partial`` holds the
    commits fetched before exhaustion.
    """

    def __init__(self, message: str, reset_at: datetime | None, partial: list["Commit"] | None = None):
        super().__init__(message)
        self.reset_at = reset_at
        self.partial = partial or []


@dataclass(frozen=True)
class ModuleRef:
    """A module to analyze: the GitHub commits-endpoint URL for one path.

    The token, when present, travels only in request headers; it is never
    logged, cached, or echoed into reports.
    """

    api_url: str
    token: str | None = None
    cache_dir: str | None = None

    def __post_init__(self):
        parsed = urlparse(self.api_url)
        if parsed.scheme != "https" and not (
            parsed.scheme == "http" and parsed.hostname in _LOOPBACK_HOSTS
        ):
            raise ValueError(f"module URL must be https (got {parsed.scheme!r})")
        if "/repos/" not in parsed.path or "/commits" not in parsed.path:
            raise ValueError("module URL must be a GitHub /repos/.../commits endpoint")


@dataclass(frozen=True)
class Commit:
    sha: str
    author_id: str
    author_name: str
    committed_at: datetime
    message: str


@dataclass
class RateLimitState:
    remaining: int = 1
    reset_at: datetime | None = None

    def update_from_headers(self, headers) -> None:
        remaining = headers.get("X-RateLimit-Remaining")
        reset = headers.get("X-RateLimit-Reset")
        if remaining is not None and remaining.isdigit():
            self.remaining = int(remaining)
        if reset is not None and reset.isdigit():
            self.reset_at = datetime.fromtimestamp(int(reset), tz=timezone.utc)


@dataclass(frozen=True)
class CacheEntry:
    api_url: str
    fetched_at: datetime
    commits: list[Commit]


def parse_github_datetime(value: str) -> datetime:
    """ISO 8601 with trailing Z (GitHub's wire format) to an aware UTC datetime."""
    if value.endswith("Z"):
        value = value[:-1] + "+00:00"
    dt = datetime.fromisoformat(value)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def check_rate_limit(state: RateLimitState, policy: str) -> datetime | None:
    """Decide whether the next request may go out.

    Returns None to proceed, or the reset instant the caller must wait
    for. Under ``policy="abort"`` an exhausted budget raises RateLimited
    instead.
    """
    if policy not in ("wait", "abort"):
        raise ValueError(f"unknown rate-limit policy: {policy!r}")
    if state.remaining > 0:
        return None
    if policy == "abort":
        raise RateLimited("GitHub rate limit exhausted", reset_at=state.reset_at)
    return state.reset_at


def _parse_commit(entry) -> Commit:
    if not isinstance(entry, dict):
        raise MalformedResponse(f"commit entry is not an object: {entry!r}")
    sha = entry.get("sha")
    commit = entry.get("commit")
    if not isinstance(sha, str) or not _SHA_RE.match(sha) or not isinstance(commit, dict):
        raise MalformedResponse(f"commit entry missing sha/commit: {entry!r}")
    message = commit.get("message")
    if not isinstance(message, str):
        raise MalformedResponse(f"commit {sha} has no message field")
    author = commit.get("author") or {}
    committer = commit.get("committer") or {}
    date = committer.get("date") or author.get("date")
    if not isinstance(date, str):
        raise MalformedResponse(f"commit {sha} has no date")
    try:
        committed_at = parse_github_datetime(date)
    except ValueError:
        raise MalformedResponse(f"commit {sha} has unparseable date {date!r}")
    name = author.get("name") or ""
    email = author.get("email") or ""
    return Commit(
        sha=sha,
        author_id=email or name,
        author_name=name,
        committed_at=committed_at,
        message=message,
    )


def _link_has_next(link_header: str | None) -> bool | None:
    """None when no Link header; otherwise whether it advertises rel="next"."""
    if link_header is None:
        return None
    return 'rel="next"' in link_header


def fetch_commits(
    module: ModuleRef,
    policy: str = "wait",
    *,
    session: requests.Session | None = None,
    sleep: Callable[[float], None] = time.sleep,
    now: Callable[[], float] = time.time,
    progress: Callable[[int], None] | None = None,
) -> list[Commit]:
    """All commits of the module, newest-first as the API delivers them.

    Serves from the cache when ``module.cache_dir`` holds a matching
    entry; otherwise pages through the endpoint and stores the result.
    """
    if module.cache_dir:
        cached = cache_load(module)
        if cached is not None:
            if progress:
                progress(len(cached))
            return cached

    session = session or requests.Session()
    headers = {"Accept": "application/vnd.github+json", "User-Agent": "comrat"}
    if module.token:
        headers["Authorization"] = f"Bearer {module.token}"

    state = RateLimitState()
    commits: list[Commit] = []
    seen: set[str] = set()
    separator = "&" if "?" in module.api_url else "?"
    page = 1
    rate_limit_waits = 0

    def _wait_until(reset_at: datetime | None) -> None:
        nonlocal rate_limit_waits
        rate_limit_waits += 1
        if rate_limit_waits > _MAX_RATE_LIMIT_WAITS:
            raise NetworkError("giving up: rate limit did not recover after repeated waits")
        delay = 1.0 if reset_at is None else reset_at.timestamp() - now()
        if delay > 0:
            logger.info("rate limit exhausted; waiting %.1fs for reset", delay)
            sleep(delay)

    while True:
        try:
            wait_for = check_rate_limit(state, policy)
        except RateLimited as exc:
            raise RateLimited(str(exc), reset_at=exc.reset_at, partial=commits)
        if wait_for is not None or state.remaining == 0:
            try:
                _wait_until(wait_for)
            except NetworkError:
                raise
            state.remaining = 1  # optimistic; next response corrects it

        url = f"{module.api_url}{separator}per_page={PER_PAGE}&page={page}"
        response = _get_with_retries(session, url, headers, sleep)
        state.update_from_headers(response.headers)

        if response.status_code in (403, 429) and state.remaining == 0:
            if policy == "abort":
                raise RateLimited(
                    "GitHub rate limit exhausted mid-fetch",
                    reset_at=state.reset_at,
                    partial=commits,
                )
            _wait_until(state.reset_at)
            state.remaining = 1
            continue  # retry the same page
        if response.status_code in (401, 403):
            raise AuthError(f"GitHub rejected the request with {response.status_code}")
        if response.status_code == 404:
            raise NotFound(f"module endpoint not found: {module.api_url}")
        if response.status_code != 200:
            raise NetworkError(f"unexpected status {response.status_code} from GitHub")

        try:
            payload = response.json()
        except ValueError:
            raise MalformedResponse("response body is not JSON")
        if not isinstance(payload, list):
            raise MalformedResponse(f"expected a JSON array, got {type(payload).__name__}")
        if not payload:
            break
        for entry in payload:
            commit = _parse_commit(entry)
            if commit.sha not in seen:
                seen.add(commit.sha)
                commits.append(commit)
        if progress:
            progress(len(commits))
        if _link_has_next(response.headers.get("Link")) is False:
            break
        page += 1

    if module.cache_dir:
        cache_store(module, commits)
    return commits


def _get_with_retries(session, url, headers, sleep) -> requests.Response:
    last_error: Exception | None = None
    for attempt, delay in enumerate((*_RETRY_DELAYS, None)):
        try:
            response = session.get(url, headers=headers, timeout=30)
        except requests.RequestException as exc:
            last_error = exc
        else:
            if response.status_code < 500:
                return response
            last_error = NetworkError(f"server error {response.status_code}")
        if delay is None:
            break
        sleep(delay)
    raise NetworkError(f"request failed after retries: {last_error}")


def _cache_path(module: ModuleRef) -> Path:
    digest = hashlib.sha256(module.api_url.encode("utf-8")).hexdigest()[:16]
    return Path(module.cache_dir) / f"commits-{digest}.json"


def cache_store(module: ModuleRef, commits: list[Commit], fetched_at: datetime | None = None) -> Path:
    """Persist the commit list for this module; returns the cache file path."""
    path = _cache_path(module)
    path.parent.mkdir(parents=True, exist_ok=True)
    fetched_at = fetched_at or datetime.now(tz=timezone.utc)
    document = {
        "api_url": module.api_url,
        "fetched_at": fetched_at.isoformat(),
        "commits": [
            {
                "sha": c.sha,
                "author_id": c.author_id,
                "author_name": c.author_name,
                "committed_at": c.committed_at.isoformat(),
                "message": c.message,
            }
            for c in commits
        ],
    }
    path.write_text(json.dumps(document, ensure_ascii=False), encoding="utf-8")
    return path


def load_cache_entry(module: ModuleRef) -> CacheEntry | None:
    """Full cache record (commits plus fetch time), or None on miss.

    A corrupt cache file is a miss with a warning, never an error.
    """
    path = _cache_path(module)
    if not path.exists():
        return None
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
        if document["api_url"] != module.api_url:
            return None
        commits = [
            Commit(
                sha=c["sha"],
                author_id=c["author_id"],
                author_name=c["author_name"],
                committed_at=datetime.fromisoformat(c["committed_at"]),
                message=c["message"],
            )
            for c in document["commits"]
        ]
        fetched_at = datetime.fromisoformat(document["fetched_at"])
    except (KeyError, TypeError, ValueError) as exc:
        logger.warning("ignoring corrupt cache file %s: %s", path, exc)
        return None
    return CacheEntry(api_url=document["api_url"], fetched_at=fetched_at, commits=commits)


def cache_load(module: ModuleRef) -> list[Commit] | None:
    entry = load_cache_entry(module)
    return entry.commits if entry else None

"""GitHub REST ingestion against a scripted mock server."""

from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest

from comrat.github_ingest import (
    AuthError,
    MalformedResponse,
    ModuleRef,
    NetworkError,
    NotFound,
    RateLimited,
    cache_load,
    cache_store,
    fetch_commits,
    load_cache_entry,
    parse_github_datetime,
)

from conftest import wire_corpus
from mock_github import FakeClock, MockGitHub, RateLimitScenario, wire_commit


def module_for(mock: MockGitHub, token: str | None = None, cache_dir: str | None = None) -> ModuleRef:
    return ModuleRef(api_url=mock.url, token=token, cache_dir=cache_dir)


class TestModuleRef:
    def test_requires_https_for_remote_hosts(self):
        with pytest.raises(ValueError, match="https"):
            ModuleRef(api_url="http://api.github.com/repos/a/b/commits")

    def test_loopback_http_allowed(self):
        ModuleRef(api_url="http://127.0.0.1:9999/repos/a/b/commits")
        ModuleRef(api_url="http://localhost:9999/repos/a/b/commits")

    def test_requires_commits_endpoint_path(self):
        with pytest.raises(ValueError, match="commits"):
            ModuleRef(api_url="https://api.github.com/repos/a/b/issues")
        with pytest.raises(ValueError):
            ModuleRef(api_url="https://api.github.com/users/a")

    def test_query_parameters_accepted(self):
        ModuleRef(api_url="https://api.github.com/repos/a/b/commits?path=mm/slob.c")


def test_parse_github_datetime_z_suffix():
    parsed = parse_github_datetime("2021-03-02T10:00:00Z")
    assert parsed == datetime(2021, 3, 2, 10, 0, tzinfo=timezone.utc)


class TestPagination:
    def test_three_pages_fetch_everything_in_order(self, corpus_217):
        with MockGitHub(commits=corpus_217) as mock:
            commits = fetch_commits(module_for(mock))
        assert len(commits) == 217
        assert [c.sha for c in commits] == [w["sha"] for w in corpus_217]
        assert [r["page"] for r in mock.requests] == [1, 2, 3]
        assert all(r["per_page"] == 100 for r in mock.requests)
        first = commits[0]
        wire = corpus_217[0]
        assert first.author_id == wire["commit"]["author"]["email"]
        assert first.author_name == wire["commit"]["author"]["name"]
        assert first.message == wire["commit"]["message"]
        assert first.committed_at == parse_github_datetime(wire["commit"]["committer"]["date"])

    def test_without_link_headers_stops_on_empty_page(self, corpus_217):
        with MockGitHub(commits=corpus_217, link_headers=False) as mock:
            commits = fetch_commits(module_for(mock))
        assert len(commits) == 217
        assert [r["page"] for r in mock.requests] == [1, 2, 3, 4]

    def test_exact_page_multiple(self):
        with MockGitHub(commits=wire_corpus(200)) as mock:
            commits = fetch_commits(module_for(mock))
        assert len(commits) == 200

    def test_empty_history(self):
        with MockGitHub(commits=[]) as mock:
            assert fetch_commits(module_for(mock)) == []

    def test_duplicate_shas_deduplicated(self, corpus_217):
        doubled = corpus_217 + corpus_217[:5]
        with MockGitHub(commits=doubled) as mock:
            commits = fetch_commits(module_for(mock))
        assert len(commits) == 217

    def test_progress_reports_cumulative_counts(self, corpus_217):
        seen = []
        with MockGitHub(commits=corpus_217) as mock:
            fetch_commits(module_for(mock), progress=seen.append)
        assert seen == [100, 200, 217]


class TestAuthAndErrors:
    def test_token_sent_as_bearer(self, corpus_217):
        with MockGitHub(commits=corpus_217[:3], required_token="s3cret") as mock:
            fetch_commits(module_for(mock, token="s3cret"))
            assert mock.requests[-1]["auth"] == "Bearer s3cret"

    def test_missing_token_is_auth_error(self, corpus_217):
        with MockGitHub(commits=corpus_217[:3], required_token="s3cret") as mock:
            with pytest.raises(AuthError):
                fetch_commits(module_for(mock))

    def test_not_found(self):
        with MockGitHub(not_found=True) as mock:
            with pytest.raises(NotFound):
                fetch_commits(module_for(mock))

    def test_server_errors_retried_then_succeed(self, corpus_217):
        delays = []
        with MockGitHub(commits=corpus_217[:5], fail_times=2) as mock:
            commits = fetch_commits(module_for(mock), sleep=delays.append)
        assert len(commits) == 5
        assert delays == [1, 2]
        # two failed tries, the successful page 1, and the empty-page probe
        # (a lone page carries no Link header, like GitHub's single-page answers)
        assert [r["page"] for r in mock.requests] == [1, 1, 1, 2]

    def test_retry_budget_exhausted(self):
        with MockGitHub(commits=[], fail_times=10) as mock:
            with pytest.raises(NetworkError):
                fetch_commits(module_for(mock), sleep=lambda s: None)
        assert len(mock.requests) == 4  # initial try + 3 retries

    def test_malformed_body(self):
        with MockGitHub(commits=wire_corpus(3), malformed_page=1) as mock:
            with pytest.raises(MalformedResponse):
                fetch_commits(module_for(mock))

    def test_malformed_entry(self):
        bad = [{"sha": "not-a-sha", "commit": {"message": "x"}}]
        with MockGitHub(commits=bad) as mock:
            with pytest.raises(MalformedResponse):
                fetch_commits(module_for(mock))


class TestRateLimit:
    def test_wait_policy_delays_until_reset(self, corpus_217):
        clock = FakeClock()
        reset_at = clock.time() + 120
        scenario = RateLimitScenario(kind="headers", page=1, reset_at=reset_at)
        with MockGitHub(commits=corpus_217, rate_limit=scenario, clock=clock) as mock:
            commits = fetch_commits(
                module_for(mock), policy="wait", sleep=clock.sleep, now=clock.time
            )
        assert len(commits) == 217
        by_page = {r["page"]: r for r in mock.requests}
        assert by_page[1]["time"] < reset_at
        assert by_page[2]["time"] >= reset_at

    def test_wait_policy_retries_rejected_page(self, corpus_217):
        clock = FakeClock()
        reset_at = clock.time() + 90
        scenario = RateLimitScenario(kind="reject", page=2, reset_at=reset_at)
        with MockGitHub(commits=corpus_217, rate_limit=scenario, clock=clock) as mock:
            commits = fetch_commits(
                module_for(mock), policy="wait", sleep=clock.sleep, now=clock.time
            )
        assert len(commits) == 217
        page2_times = [r["time"] for r in mock.requests if r["page"] == 2]
        assert page2_times[0] < reset_at  # rejected attempt
        assert all(t >= reset_at for t in page2_times[1:])

    def test_abort_policy_raises_with_partial(self, corpus_217):
        clock = FakeClock()
        scenario = RateLimitScenario(kind="headers", page=1, reset_at=clock.time() + 300)
        with MockGitHub(commits=corpus_217, rate_limit=scenario, clock=clock) as mock:
            with pytest.raises(RateLimited) as err:
                fetch_commits(module_for(mock), policy="abort", sleep=clock.sleep, now=clock.time)
        assert len(err.value.partial) == 100
        assert err.value.reset_at is not None
        assert "rate limit" in str(err.value).lower()

    def test_unknown_policy_rejected(self, corpus_217):
        with MockGitHub(commits=corpus_217[:1]) as mock:
            with pytest.raises(ValueError):
                fetch_commits(module_for(mock), policy="panic")


class TestCache:
    def test_fetch_stores_and_reuses_cache(self, corpus_217, tmp_path):
        with MockGitHub(commits=corpus_217) as mock:
            module = module_for(mock, cache_dir=str(tmp_path))
            first = fetch_commits(module)
            assert len(mock.requests) == 3
            second = fetch_commits(module)
            assert len(mock.requests) == 3  # served from cache, no new requests
        assert first == second
        entry = load_cache_entry(module)
        assert entry is not None
        assert entry.api_url == module.api_url
        assert entry.fetched_at.tzinfo is not None

    def test_cache_round_trip_preserves_commits(self, tmp_path):
        from conftest import make_commit

        module = ModuleRef(
            api_url="https://api.github.com/repos/a/b/commits", cache_dir=str(tmp_path)
        )
        commits = [make_commit(i, message=f"Fix thing {i}.") for i in range(7)]
        cache_store(module, commits, fetched_at=datetime(2024, 1, 2, tzinfo=timezone.utc))
        assert cache_load(module) == commits
        assert load_cache_entry(module).fetched_at == datetime(2024, 1, 2, tzinfo=timezone.utc)

    def test_corrupt_cache_is_a_miss(self, corpus_217, tmp_path):
        with MockGitHub(commits=corpus_217[:4]) as mock:
            module = module_for(mock, cache_dir=str(tmp_path))
            fetch_commits(module)
            cache_files = list(tmp_path.glob("*.json"))
            assert len(cache_files) == 1
            cache_files[0].write_text("{ nope", encoding="utf-8")
            before = len(mock.requests)
            commits = fetch_commits(module)  # refetches instead of failing
        assert len(commits) == 4
        assert len(mock.requests) > before

    def test_cache_keyed_by_url(self, tmp_path):
        from conftest import make_commit

        module_a = ModuleRef(
            api_url="https://api.github.com/repos/a/b/commits?path=x.c", cache_dir=str(tmp_path)
        )
        module_b = ModuleRef(
            api_url="https://api.github.com/repos/a/b/commits?path=y.c", cache_dir=str(tmp_path)
        )
        cache_store(module_a, [make_commit(1)])
        assert cache_load(module_b) is None

    def test_token_never_written_to_cache(self, corpus_217, tmp_path):
        token = "ghp_supersecretvalue123"
        with MockGitHub(commits=corpus_217[:3], required_token=token) as mock:
            module = module_for(mock, token=token, cache_dir=str(tmp_path))
            fetch_commits(module)
        for path in tmp_path.rglob("*"):
            assert token.encode() not in path.read_bytes(), path

    def test_cache_file_is_plain_json(self, corpus_217, tmp_path):
        with MockGitHub(commits=corpus_217[:2]) as mock:
            module = module_for(mock, cache_dir=str(tmp_path))
            fetch_commits(module)
        payload = json.loads(next(tmp_path.glob("*.json")).read_text(encoding="utf-8"))
        assert payload["api_url"] == module.api_url
        assert len(payload["commits"]) == 2

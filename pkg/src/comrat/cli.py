"""Command-line entry point.

Three subcommands: `module` runs the full pipeline against a GitHub
commits endpoint and writes the dataset, report, and figures; `commit`
analyzes a single message from a file or stdin; `serve` hosts the HTTP
service. Exit codes are part of the contract:

  module: 0 ok, 2 usage, 3 ingest failure, 4 classifier failure
  commit: 0 success verdict, 1 warning verdict, 2 empty with --strict
  serve:  4 when a configured adapter command cannot be found
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import shutil
import socket
import sys
from pathlib import Path

from .classify import (
    AdapterCrashed,
    AdapterProtocolError,
    AdapterTimeout,
    ClassifierSpec,
)
from .commit_analyzer import (
    DEFAULT_THRESHOLD,
    analyze_commit_message,
    commit_report_document,
    format_commit_report,
)
from .errors import scrub_secret
from .github_ingest import (
    AuthError,
    MalformedResponse,
    ModuleRef,
    NetworkError,
    NotFound,
    RateLimited,
    fetch_commits,
)
from .pipeline import build_dataset, dataset_fetched_at
from .report import build_report, export_dataset_csv, export_figures, format_summary, serialize_report

__all__ = ["main"]

DEFAULT_ADDR = "127.0.0.1:8787"

_ADAPTER_ERRORS = (AdapterCrashed, AdapterProtocolError, AdapterTimeout)
_INGEST_ERRORS = (AuthError, NotFound, NetworkError, MalformedResponse, RateLimited)


def _classifier_arg(value: str) -> ClassifierSpec:
    if value == "lexicon":
        return ClassifierSpec(kind="lexicon")
    if value.startswith("adapter:"):
        command = value[len("adapter:") :].strip()
        if not command:
            raise argparse.ArgumentTypeError("adapter command is empty")
        return ClassifierSpec(kind="adapter", adapter_command=command)
    raise argparse.ArgumentTypeError("classifier must be 'lexicon' or 'adapter:<command>'")


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _cmd_module(args: argparse.Namespace) -> int:
    token = None
    if args.token_env:
        token = os.environ.get(args.token_env)
        if token is None:
            _fail(f"environment variable {args.token_env} is not set")
            return 2
    try:
        module = ModuleRef(api_url=args.url, token=token, cache_dir=args.cache)
    except ValueError as exc:
        _fail(str(exc))
        return 2

    try:
        commits = fetch_commits(module, policy=args.rate_limit)
    except _INGEST_ERRORS as exc:
        _fail(scrub_secret(f"ingest failed: {exc}", token))
        return 3
    fetched_at = dataset_fetched_at(module)

    try:
        dataset = build_dataset(commits, args.classifier, module=module, fetched_at=fetched_at)
    except _ADAPTER_ERRORS as exc:
        _fail(f"classifier failed: {exc}")
        return 4

    report = build_report(dataset, classifier=args.classifier.kind)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "dataset.csv").write_bytes(export_dataset_csv(dataset))
    (out / "report.json").write_bytes(serialize_report(report))
    export_figures(report, out)
    print(format_summary(report))
    return 0


def _cmd_commit(args: argparse.Namespace) -> int:
    if args.file:
        try:
            raw = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            _fail(f"cannot read {args.file}: {exc}")
            return 2
    else:
        raw = sys.stdin.read()

    try:
        report = analyze_commit_message(raw, args.classifier, threshold=args.threshold)
    except _ADAPTER_ERRORS as exc:
        _fail(f"classifier failed: {exc}")
        return 4

    if args.format == "doc":
        print(json.dumps(commit_report_document(report), indent=2))
    else:
        print(format_commit_report(report))

    if report.verdict == "empty":
        return 2 if args.strict else 0
    return 0 if report.verdict == "success" else 1


def _parse_addr(addr: str) -> tuple[str, int]:
    host, _, port_s = addr.rpartition(":")
    if not host or not port_s.isdigit():
        raise ValueError(f"address must be HOST:PORT, got {addr!r}")
    return host.strip("[]"), int(port_s)


def _cmd_serve(args: argparse.Namespace) -> int:
    addr = args.addr or os.environ.get("COMRAT_ADDR") or DEFAULT_ADDR
    try:
        host, port = _parse_addr(addr)
    except ValueError as exc:
        _fail(str(exc))
        return 2

    spec = args.classifier
    if spec.kind == "adapter":
        executable = shlex.split(spec.adapter_command)[0]
        if shutil.which(executable) is None and not Path(executable).exists():
            _fail(f"adapter command not found: {executable}")
            return 4

    # Surface an occupied port as a clean error instead of a traceback.
    probe = socket.socket(socket.AF_INET6 if ":" in host else socket.AF_INET)
    try:
        probe.bind((host, port))
    except OSError as exc:
        _fail(f"cannot bind {addr}: {exc}")
        return 1
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    app = create_app(
        classifier_spec=spec,
        cors_origins=args.cors_origin,
        rate_limit_policy=args.rate_limit,
        cache_dir=args.cache,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="comrat", description="Commit-message rationale analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    module = sub.add_parser("module", help="analyze a module's full commit history")
    module.add_argument("--url", required=True, help="GitHub commits API URL for the module path")
    module.add_argument("--token-env", help="name of the environment variable holding the API token")
    module.add_argument("--cache", help="directory for the commit cache")
    module.add_argument(
        "--classifier",
        type=_classifier_arg,
        default=ClassifierSpec(kind="lexicon"),
        help="'lexicon' (default) or 'adapter:<command>'",
    )
    module.add_argument("--out", default="comrat-out", help="output directory (default: comrat-out)")
    module.add_argument("--rate-limit", choices=("wait", "abort"), default="wait")
    module.set_defaults(func=_cmd_module)

    commit = sub.add_parser("commit", help="analyze a single commit message")
    commit.add_argument("--file", help="read the message from this file instead of stdin")
    commit.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    commit.add_argument("--format", choices=("text", "doc"), default="text")
    commit.add_argument("--strict", action="store_true", help="exit 2 when the message has no sentences")
    commit.add_argument(
        "--classifier",
        type=_classifier_arg,
        default=ClassifierSpec(kind="lexicon"),
        help="'lexicon' (default) or 'adapter:<command>'",
    )
    commit.set_defaults(func=_cmd_commit)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--addr", help=f"HOST:PORT to listen on (default: $COMRAT_ADDR or {DEFAULT_ADDR})")
    serve.add_argument(
        "--classifier",
        type=_classifier_arg,
        default=ClassifierSpec(kind="lexicon"),
        help="'lexicon' (default) or 'adapter:<command>'",
    )
    serve.add_argument("--cache", help="directory for the commit cache")
    serve.add_argument("--rate-limit", choices=("wait", "abort"), default="wait")
    serve.add_argument(
        "--cors-origin",
        action="append",
        help="origin allowed to call the API (repeatable)",
    )
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

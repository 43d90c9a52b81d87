"""Shared exception hierarchy and error-text hygiene."""

from __future__ import annotations


class ComratError(Exception):
    """Base class for all errors raised by this package."""


def scrub_secret(message: str, secret: str | None) -> str:
    """Redact a secret wherever it appears in user-facing error text."""
    if secret:
        message = message.replace(secret, "[redacted]")
    return message

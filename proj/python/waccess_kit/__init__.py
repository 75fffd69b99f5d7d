"""Static WCAG 2.0/2.1/2.2 accessibility auditor."""

import json

from ._core import (
    ColorParseError,
    ParseError,
    audit_console,
    audit_json,
    contrast_ratio,
    parse_color,
    registry,
    relative_luminance,
)


def audit(html, url="", rules=None, fetched_at=""):
    """Audit an HTML document and return the report as a dict."""
    return json.loads(audit_json(html, url, rules, fetched_at))


__all__ = [
    "ColorParseError",
    "ParseError",
    "audit",
    "audit_console",
    "audit_json",
    "contrast_ratio",
    "parse_color",
    "registry",
    "relative_luminance",
]

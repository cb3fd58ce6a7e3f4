"""
Lenient parsers for the two LLM answer formats. Surrounding prose is
ignored; only answers without a well-formed core are rejected.
"""
from __future__ import annotations

import re

from pydantic import ValidationError

from llm_ens.errors import CatalogParseError, CategorizationParseError

from .catalog import CatalogSource, SituationCatalog

# split between entries: a comma or newline followed by "<name>:"
_ENTRY_BOUNDARY = re.compile(r"(?:,|\n)\s*(?=[^,:{}\n]+:)")
_INTEGER = re.compile(r"\d+")
_STRIP = " \t\r\n\"'[]"
_REASON_LEAD = " \t\r\n,;:.-–—\"'[]"
_TRAILING_ELLIPSIS = re.compile(r"[,\s]*(?:\.\.\.|…)[,\s]*\Z")


def _brace_block(text: str) -> str | None:
    start = text.find("{")
    end = text.rfind("}")
    if start == -1 or end <= start:
        return None
    return text[start + 1:end]


def parse_output_format_1(text: str, env_name: str = "") -> SituationCatalog:
    block = _brace_block(text)
    if block is None:
        raise CatalogParseError("no {...} block in situation answer")

    pairs = []
    block = _TRAILING_ELLIPSIS.sub("", block)
    for entry in _ENTRY_BOUNDARY.split(block):
        entry = entry.strip(_STRIP + ",")
        if not entry or entry in ("...", "…"):
            continue
        name, sep, description = entry.partition(":")
        name, description = name.strip(_STRIP), description.strip(_STRIP)
        if not sep or not name or not description:
            raise CatalogParseError(f"malformed situation entry {entry!r}")
        pairs.append((name, description))

    if len(pairs) < 2:
        raise CatalogParseError(
            f"need at least 2 situations, found {len(pairs)}")
    names = [name for name, _ in pairs]
    if len(set(names)) != len(names):
        raise CatalogParseError(f"duplicate situation names in {names}")

    try:
        return SituationCatalog.from_pairs(env_name, pairs, CatalogSource.LLM)
    except ValidationError as e:
        raise CatalogParseError(str(e)) from e


def parse_output_format_2(text: str) -> tuple[int, str]:
    """
    (situation_id, reason) from an answer like "{2, the agent is ...}".
    Range checking against a catalog is left to the caller.
    """
    block = _brace_block(text)
    if block is None:
        block = text
    match = _INTEGER.search(block)
    if match is None:
        raise CategorizationParseError(
            f"no situation id in answer {text[:80]!r}")
    reason = block[match.end():].strip(_REASON_LEAD)
    return int(match.group()), reason

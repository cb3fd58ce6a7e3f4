from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

import httpx

from llm_ens.errors import ScriptExhaustedError, TransientGatewayError
from llm_ens.utils.json_io import read_json_file


@dataclass(frozen=True)
class TransportResponse:
    status_code: int
    text: str


class Transport(Protocol):
    requires_credentials: bool

    def send(self, url: str, payload: dict, headers: dict[str, str],
             timeout_s: float) -> TransportResponse:
        ...


class HttpTransport:
    """POSTs JSON bodies with httpx; timeouts and connection drops are transient."""

    requires_credentials = True

    def __init__(self, client: httpx.Client | None = None):
        self.client = client or httpx.Client()

    def send(self, url, payload, headers, timeout_s):
        try:
            response = self.client.post(url,
                                        json=payload,
                                        headers=headers,
                                        timeout=timeout_s)
        except httpx.TimeoutException as e:
            raise TransientGatewayError(f"timeout after {timeout_s}s") from e
        except httpx.TransportError as e:
            raise TransientGatewayError(f"transport error: {e}") from e
        return TransportResponse(response.status_code, response.text)

    def close(self):
        self.client.close()


def completion_body(content: str) -> str:
    return json.dumps({"choices": [{"message": {"role": "assistant",
                                                "content": content}}]})


@dataclass
class RecordedRequest:
    url: str
    payload: dict
    headers: dict[str, str]


@dataclass
class MockTransport:
    """
    Replays a script in order and records every request.

    A script entry is either the completion text itself, or a dict with
    `status` and either `content` (wrapped as a completion) or a raw
    `body`, or `{"timeout": true}`.
    """

    script: list[Any]
    requests: list[RecordedRequest] = field(default_factory=list)
    requires_credentials: bool = False

    @property
    def call_count(self) -> int:
        return len(self.requests)

    def send(self, url, payload, headers, timeout_s):
        self.requests.append(RecordedRequest(url, payload, dict(headers)))
        index = len(self.requests) - 1
        if index >= len(self.script):
            raise ScriptExhaustedError(
                f"mock script has {len(self.script)} entries, "
                f"call {index + 1} has none")

        entry = self.script[index]
        if isinstance(entry, str):
            return TransportResponse(200, completion_body(entry))
        if entry.get("timeout"):
            raise TransientGatewayError("scripted timeout")
        status = int(entry.get("status", 200))
        if "body" in entry:
            return TransportResponse(status, entry["body"])
        return TransportResponse(status, completion_body(entry.get("content",
                                                                    "")))


def mock_transport(script: list[Any]) -> MockTransport:
    return MockTransport(list(script))


def load_mock_script(path: str | Path) -> MockTransport:
    script = read_json_file(path)
    if not isinstance(script, list):
        raise ValueError(f"{path}: a mock script must be a JSON list")
    return mock_transport(script)

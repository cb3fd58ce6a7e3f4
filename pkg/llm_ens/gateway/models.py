from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from llm_ens.utils.json_io import canonical_json

API_KEY_ENV = "LLM_ENS_API_KEY"
DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"


class GatewayConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    endpoint_url: str = DEFAULT_ENDPOINT
    model_name: str = "gpt-4o-mini"
    temperature: float = Field(1.0, ge=0.0)
    timeout_ms: int = Field(30000, gt=0)
    max_retries: int = Field(3, ge=0)
    cache_enabled: bool = True
    cache_dir: Path = Path(".llm_ens_cache")


class ChatMessage(BaseModel):
    model_config = ConfigDict(frozen=True)

    role: Literal["system", "user", "assistant"]
    content: str


class ChatRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: str
    temperature: float = Field(ge=0.0)
    messages: tuple[ChatMessage, ...]

    @model_validator(mode="after")
    def _check_messages(self):
        if not self.messages:
            raise ValueError("a chat request needs at least one message")
        return self

    @classmethod
    def build(cls, config: GatewayConfig,
              messages: list[tuple[str, str]]) -> "ChatRequest":
        return cls(model=config.model_name,
                   temperature=config.temperature,
                   messages=tuple(
                       ChatMessage(role=role, content=content)
                       for role, content in messages))

    def payload(self) -> dict:
        """OpenAI-compatible request body. Never carries credentials."""
        return {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [m.model_dump() for m in self.messages],
        }


def cache_key(request: ChatRequest) -> str:
    """Hex SHA-256 of the canonical request body."""
    return hashlib.sha256(
        canonical_json(request.payload()).encode("utf-8")).hexdigest()

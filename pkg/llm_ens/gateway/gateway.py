from __future__ import annotations

import json
import logging
import os
import threading
import time
from collections.abc import Callable

from tenacity import (RetryError, Retrying, before_sleep_log,
                      retry_if_exception_type, stop_after_attempt,
                      wait_exponential_jitter)

from llm_ens.errors import (GatewayHTTPError, MalformedResponseError,
                            MissingCredentialError, RetriesExhaustedError,
                            TransientGatewayError)

from .cache import ResponseCache
from .models import API_KEY_ENV, ChatRequest, GatewayConfig, cache_key
from .transport import HttpTransport, Transport, TransportResponse

logger = logging.getLogger(__name__)

BACKOFF_BASE_S = 0.5
BACKOFF_FACTOR = 2
BACKOFF_JITTER_S = 0.25


class LLMGateway:
    """
    Chat-completion client with on-disk caching and retry on 429, 5xx and
    timeouts. Failures are never cached.
    """

    def __init__(self,
                 config: GatewayConfig,
                 transport: Transport | None = None,
                 cache: ResponseCache | None = None,
                 sleep: Callable[[float], None] = time.sleep):
        self.config = config
        self.transport = transport or HttpTransport()
        if cache is None and config.cache_enabled:
            cache = ResponseCache(config.cache_dir)
        self.cache = cache if config.cache_enabled else None
        self._sleep = sleep
        self._lock = threading.Lock()
        self.call_count = 0
        self.cache_hits = 0

    def complete(self, request: ChatRequest) -> str:
        key = cache_key(request)
        if self.cache is not None:
            cached = self.cache.get(key)
            if cached is not None:
                logger.debug("cache hit %s", key[:12])
                with self._lock:
                    self.cache_hits += 1
                return cached

        headers = self._headers()
        retrying = Retrying(
            stop=stop_after_attempt(self.config.max_retries + 1),
            wait=wait_exponential_jitter(initial=BACKOFF_BASE_S,
                                         exp_base=BACKOFF_FACTOR,
                                         jitter=BACKOFF_JITTER_S),
            retry=retry_if_exception_type(TransientGatewayError),
            before_sleep=before_sleep_log(logger, logging.WARNING),
            sleep=self._sleep,
        )
        try:
            text = retrying(self._attempt, request.payload(), headers)
        except RetryError as e:
            cause = e.last_attempt.exception()
            raise RetriesExhaustedError(
                f"gave up after {self.config.max_retries + 1} attempts: "
                f"{cause}") from cause

        if self.cache is not None:
            self.cache.put(key, text)
        return text

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if getattr(self.transport, "requires_credentials", False):
            api_key = os.environ.get(API_KEY_ENV, "").strip()
            if not api_key:
                raise MissingCredentialError(
                    f"set {API_KEY_ENV} to call {self.config.endpoint_url}")
            headers["Authorization"] = f"Bearer {api_key}"
        return headers

    def _attempt(self, payload: dict, headers: dict[str, str]) -> str:
        with self._lock:
            self.call_count += 1
        response = self.transport.send(self.config.endpoint_url, payload,
                                       headers,
                                       self.config.timeout_ms / 1000)
        return _read_completion(response)


def _read_completion(response: TransportResponse) -> str:
    status = response.status_code
    if status == 429 or 500 <= status < 600:
        raise TransientGatewayError(f"HTTP {status}")
    if not 200 <= status < 300:
        raise GatewayHTTPError(status, response.text)
    try:
        content = json.loads(response.text)["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as e:
        raise MalformedResponseError(
            f"no choices[0].message.content in response: "
            f"{response.text[:200]!r}") from e
    if not isinstance(content, str):
        raise MalformedResponseError("completion content is not a string")
    return content


def complete(config: GatewayConfig,
             request: ChatRequest,
             transport: Transport | None = None) -> str:
    return LLMGateway(config, transport).complete(request)

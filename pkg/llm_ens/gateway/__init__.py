from .cache import ResponseCache
from .gateway import LLMGateway, complete
from .models import (API_KEY_ENV, ChatMessage, ChatRequest, GatewayConfig,
                     cache_key)
from .transport import (HttpTransport, MockTransport, Transport,
                        TransportResponse, load_mock_script, mock_transport)

__all__ = [
    "API_KEY_ENV",
    "ChatMessage",
    "ChatRequest",
    "GatewayConfig",
    "HttpTransport",
    "LLMGateway",
    "MockTransport",
    "ResponseCache",
    "Transport",
    "TransportResponse",
    "cache_key",
    "complete",
    "load_mock_script",
    "mock_transport",
]

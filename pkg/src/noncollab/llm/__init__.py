from . import schema
from .gateway import CallLog, CallRecord, LLMGateway
from .providers import HTTPProvider, Provider, ScriptedProvider
from .types import (
    ROLE_TAGS,
    ChatRequest,
    ChatResponse,
    Decoding,
    GatewayError,
    ProviderUnconfigured,
    SchemaValidationError,
    TransportError,
    Usage,
    prompt_hash,
)

__all__ = [
    "ROLE_TAGS",
    "CallLog",
    "CallRecord",
    "ChatRequest",
    "ChatResponse",
    "Decoding",
    "GatewayError",
    "HTTPProvider",
    "LLMGateway",
    "Provider",
    "ProviderUnconfigured",
    "SchemaValidationError",
    "ScriptedProvider",
    "TransportError",
    "Usage",
    "prompt_hash",
    "schema",
]

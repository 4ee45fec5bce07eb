"""
Minimal Langfuse integration for the engine.
Traces each CLI command and records typed events from the symbolic core.

Tracing is opt-in by credentials: without LANGFUSE_PUBLIC_KEY and
LANGFUSE_SECRET_KEY (or with tracing.enabled set to false) every call
here is a no-op and nothing leaves the process.
"""

from typing import Optional, Dict, Any
from contextlib import contextmanager
import os
from dotenv import load_dotenv
from langfuse import Langfuse
from pathlib import Path

from core.config_loader import load_config

# Global Langfuse instance
_langfuse_client: Optional[Langfuse] = None
_resolved = False

EVENT_TYPES = ("orbit", "classification", "construction", "verification")


class _NullSpan:
    def update(self, **kwargs) -> None:
        pass


def get_langfuse() -> Optional[Langfuse]:
    """
    Get the global Langfuse client, or None when tracing is off.
    Reads from environment variables:
    - LANGFUSE_PUBLIC_KEY
    - LANGFUSE_SECRET_KEY
    - LANGFUSE_HOST (or LANGFUSE_BASE_URL)
    """
    global _langfuse_client, _resolved

    if not _resolved:
        _resolved = True
        env_file = Path(__file__).parent.parent / ".env"
        load_dotenv(dotenv_path=env_file, override=False)

        if not load_config().get("tracing", {}).get("enabled", True):
            return None

        public_key = os.getenv("LANGFUSE_PUBLIC_KEY")
        secret_key = os.getenv("LANGFUSE_SECRET_KEY")
        if not public_key or not secret_key:
            return None
        host = os.getenv("LANGFUSE_HOST") or os.getenv("LANGFUSE_BASE_URL", "https://us.cloud.langfuse.com")

        # Set OTEL endpoint to ensure OpenTelemetry uses the correct server
        os.environ.setdefault("OTEL_EXPORTER_OTLP_ENDPOINT", host)

        _langfuse_client = Langfuse(
            public_key=public_key,
            secret_key=secret_key,
            base_url=host,
            debug=False
        )

    return _langfuse_client


def reset_langfuse() -> None:
    """Forget the resolved client (tests toggle credentials between cases)."""
    global _langfuse_client, _resolved
    _langfuse_client = None
    _resolved = False


@contextmanager
def trace_request(name: str, metadata: Optional[Dict[str, Any]] = None):
    """
    Root trace for one CLI command; everything logged inside nests under it.

    Usage:
        with trace_request("dld_orbit", {"expression": "x/(1+x)"}) as trace:
            ...
            trace.update(output={"period": 2})
    """
    client = get_langfuse()
    if client is None:
        yield _NullSpan()
        return

    with client.start_as_current_span(
        name=name,
        metadata=metadata or {}
    ) as span:
        yield span


@contextmanager
def trace_span(name: str, input_data: Optional[Dict[str, Any]] = None, metadata: Optional[Dict[str, Any]] = None):
    """
    Nested span within the current trace, one per pipeline stage.

    Usage:
        with trace_span("parse", {"text": "x/(1-x)"}) as span:
            ...
            span.update(output={"ok": True})
    """
    client = get_langfuse()
    if client is None:
        yield _NullSpan()
        return

    with client.start_as_current_observation(
        as_type="span",
        name=name,
        input=input_data or {},
        metadata=metadata or {}
    ) as span:
        yield span


def log_event(event_type: str, **data) -> None:
    """
    Unified event logging.

    Args:
        event_type: one of
            - "orbit": orbit summary (steps, preperiod, period, truncated, note)
            - "classification": classifier verdict and extracted parameters
            - "construction": closed-form family instance (family, a, c)
            - "verification": numeric cross-check summary
        **data: event-specific keyword arguments

    Examples:
        log_event("orbit", steps=3, preperiod=1, period=2, truncated=False, note=None)
        log_event("classification", kind="period2", a="1", c="-1")
        log_event("verification", check="cross_validate", max_rel_err=1e-11, passed=True)
    """
    if event_type not in EVENT_TYPES:
        raise ValueError(f"Unknown event_type: {event_type}. Must be one of: {', '.join(EVENT_TYPES)}")

    client = get_langfuse()
    if client is None:
        return
    metadata = data.pop('metadata', {})

    match event_type:
        case "orbit":
            client.create_event(
                name="orbit",
                input={"steps": data.get('steps')},
                output={
                    "preperiod": data.get('preperiod'),
                    "period": data.get('period'),
                    "truncated": data.get('truncated'),
                    "note": data.get('note'),
                },
                metadata={**metadata, "type": "orbit"}
            )

        case "classification":
            kind = data.get('kind')
            client.create_event(
                name=f"classify_{kind}",
                output={k: v for k, v in data.items() if k != 'kind'},
                metadata={**metadata, "type": "classification", "kind": kind}
            )

        case "construction":
            client.create_event(
                name=f"construct_{data['family']}",
                input={k: v for k, v in data.items() if k != 'family'},
                metadata={**metadata, "type": "construction", "family": data['family']}
            )

        case "verification":
            client.create_event(
                name=f"verify_{data.get('check', 'equiv')}",
                output={k: v for k, v in data.items() if k != 'check'},
                metadata={**metadata, "type": "verification"}
            )


def flush() -> None:
    """Flush any pending traces to Langfuse."""
    client = get_langfuse()
    if client is not None:
        client.flush()

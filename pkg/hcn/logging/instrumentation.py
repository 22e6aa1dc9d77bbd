from __future__ import annotations

import functools
import os
import sys

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import (
    BatchSpanProcessor,
    ConsoleSpanExporter,
)

try:
    from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
except ImportError:
    OTLPSpanExporter = None  # optional

from hcn import __version__

_tracer = None


def _service_name() -> str:
    return os.getenv("HCN_SERVICE_NAME", "hcn")


def init_tracing():
    """Install a tracer provider when ``HCN_OTEL_ENABLED`` is set; returns the tracer or None."""
    global _tracer
    if os.getenv("HCN_OTEL_ENABLED", "0") in ("0", "false", "False"):
        return None

    resource = Resource.create({
        "service.name": _service_name(),
        "service.version": __version__,
    })
    provider = TracerProvider(resource=resource)

    # Console exporter on stderr; stdout may carry CSV
    provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))

    endpoint = os.getenv("OTEL_EXPORTER_OTLP_ENDPOINT")  # e.g. http://localhost:4318/v1/traces
    if endpoint and OTLPSpanExporter:
        provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint)))

    trace.set_tracer_provider(provider)
    _tracer = trace.get_tracer(_service_name())
    return _tracer


def get_tracer():
    return _tracer or trace.get_tracer(_service_name())


# Decorator helper
def traced(name: str | None = None):
    def deco(fn):
        span_name = name or fn.__qualname__

        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            tracer = get_tracer()
            with tracer.start_as_current_span(span_name) as span:
                span.set_attribute("code.function", fn.__name__)
                try:
                    return fn(*args, **kwargs)
                except Exception as e:
                    span.record_exception(e)
                    span.set_status(trace.status.Status(trace.status.StatusCode.ERROR, str(e)))
                    raise

        return wrapper

    return deco

from __future__ import annotations

import logging
import os
import sys
from typing import Any, Optional, TextIO

import structlog

DEFAULT_SERVICE_NAME = "hcn"


def _service_name() -> str:
    return os.getenv("HCN_SERVICE_NAME", DEFAULT_SERVICE_NAME)


def _add_service(_, __, event_dict: dict[str, Any]) -> dict[str, Any]:
    event_dict["service"] = _service_name()
    return event_dict


def configure_logging(level: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """Configure stdlib + structlog once at process start.

    ``level`` overrides ``HCN_LOG_LEVEL``; output goes to stderr unless ``stream`` is given,
    so CSV written to stdout is never interleaved with log lines.
    """
    level_name = (level or os.getenv("HCN_LOG_LEVEL", "INFO")).upper()
    log_level = getattr(logging, level_name, logging.INFO)
    log_json = os.getenv("HCN_LOG_JSON", "1") not in ("0", "false", "False")
    timestamper = structlog.processors.TimeStamper(fmt="iso", utc=True)
    shared_processors = [
        timestamper,
        _add_service,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if log_json:
        renderer = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=(stream or sys.stderr).isatty())

    def logger_factory(*_args: Any) -> structlog.PrintLogger:
        # sys.stderr looked up per logger, it may be swapped after configuration
        return structlog.PrintLogger(stream or sys.stderr)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            *shared_processors,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        logger_factory=logger_factory,
        context_class=dict,
        cache_logger_on_first_use=False,
    )

    # stdlib logging (scipy/numpy warnings routed through logging) -> same stream
    logging.basicConfig(level=log_level, format="%(message)s", stream=stream or sys.stderr, force=True)


def get_logger(name: str | None = None):
    return structlog.get_logger(name or _service_name())

import uuid
from typing import Any

import structlog


def new_run_context(**fields: Any) -> str:
    """Bind a fresh run id (plus any extra fields, e.g. the seed) to every log line of this run."""
    rid = str(uuid.uuid4())
    structlog.contextvars.bind_contextvars(run_id=rid, **fields)
    return rid


def clear_run_context():
    structlog.contextvars.clear_contextvars()

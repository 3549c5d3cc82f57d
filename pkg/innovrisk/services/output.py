"""
Artifact writing: atomic file replacement and orjson serialization of schemas.
"""

import logging
import os
import tempfile
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import orjson
import pandas as pd
from pydantic import BaseModel

logger = logging.getLogger(__name__)


def to_json_bytes(payload: BaseModel | Sequence[BaseModel] | dict[str, Any]) -> bytes:
    """Pretty JSON of a schema, a list of schemas or a plain dict (aliases applied)."""
    if isinstance(payload, BaseModel):
        data: Any = payload.model_dump(mode="json", by_alias=True)
    elif isinstance(payload, dict):
        data = payload
    else:
        data = [item.model_dump(mode="json", by_alias=True) for item in payload]
    return orjson.dumps(data, option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY) + b"\n"


def write_atomic(path: Path | str, content: str | bytes) -> Path:
    """
    Write content to path via a temporary file in the same directory and os.replace.

    Readers never see a partially written artifact.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    data = content.encode("utf-8") if isinstance(content, str) else content
    fd, temp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(temp_name, target)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise
    logger.info("Wrote %s (%d bytes)", target, len(data))
    return target


def write_json(path: Path | str, payload: BaseModel | Sequence[BaseModel] | dict[str, Any]) -> Path:
    return write_atomic(path, to_json_bytes(payload))


def write_frame_csv(path: Path | str, frame: pd.DataFrame) -> Path:
    return write_atomic(path, frame.to_csv(index=False, lineterminator="\n"))

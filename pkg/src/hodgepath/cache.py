"""Content-addressed cache for computed minimal models.

Keyed by sha256 of (canonical input document, horizon, engine version); a hit
reproduces byte-identical output.  Writes are atomic (write then rename), so
concurrent identical invocations may duplicate work but never corrupt.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ENV_VAR = "HODGEPATH_CACHE"
ENGINE_VERSION = "0.1.0"


def cache_dir():
    return os.environ.get(ENV_VAR)


def cache_key(doc: dict, max_degree: int) -> str:
    payload = json.dumps({"doc": doc, "max_degree": max_degree,
                          "engine": ENGINE_VERSION},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def lookup(key: str):
    base = cache_dir()
    if not base:
        return None
    path = os.path.join(base, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8")


def store(key: str, text: str):
    base = cache_dir()
    if not base:
        return
    os.makedirs(base, exist_ok=True)
    path = os.path.join(base, key + ".json")
    fd, tmp = tempfile.mkstemp(dir=base, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

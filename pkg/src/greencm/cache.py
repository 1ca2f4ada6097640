"""Disk cache for exact basis expansions.

Files are JSON with a versioned header and a payload checksum; rationals are
serialized as [numerator, denominator] pairs.  Writes are atomic
(write-temp-then-rename) and corrupt files trigger recomputation.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

CACHE_FORMAT_VERSION = 1


def cache_dir(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("GREENCM_CACHE")
    if env:
        return Path(env)
    return Path(".greencm_cache")


def _payload_digest(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()


def store(key: str, data, directory: str | None = None) -> Path:
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(data, sort_keys=True)
    doc = json.dumps(
        {"format": CACHE_FORMAT_VERSION, "sha256": _payload_digest(payload), "payload": payload},
        sort_keys=True,
    )
    path = d / f"{key}.json"
    fd, tmp = tempfile.mkstemp(dir=d, prefix=key, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(doc)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def load(key: str, directory: str | None = None):
    """Return the cached payload, or None on miss/corruption."""
    path = cache_dir(directory) / f"{key}.json"
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        if doc.get("format") != CACHE_FORMAT_VERSION:
            return None
        payload = doc["payload"]
        if _payload_digest(payload) != doc["sha256"]:
            return None
        return json.loads(payload)
    except (json.JSONDecodeError, KeyError, OSError):
        return None


def frac_out(x: Fraction):
    return [x.numerator, x.denominator]


def frac_in(pair) -> Fraction:
    return Fraction(pair[0], pair[1])

"""On-disk JSON cache for CLI results.

One file per canonical key.  Entries that fail to parse or whose stored key
does not match are deleted and recomputed, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

import platformdirs

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


def default_cache_dir() -> Path:
    return Path(platformdirs.user_cache_dir("setseq"))


def canonical_key(computation: str, model_key: str, args: dict) -> str:
    return json.dumps(
        {"v": FORMAT_VERSION, "computation": computation, "model": model_key, "args": args},
        sort_keys=True,
        separators=(",", ":"),
    )


class ResultCache:
    def __init__(self, directory=None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled

    def _path(self, key: str) -> Path:
        return self.directory / (hashlib.sha256(key.encode()).hexdigest() + ".json")

    def get(self, key: str):
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except (OSError, ValueError):
            log.warning("discarding unreadable cache entry %s", path)
            self._discard(path)
            return None
        if not isinstance(doc, dict) or doc.get("key") != key or "payload" not in doc:
            log.warning("discarding mismatched cache entry %s", path)
            self._discard(path)
            return None
        return doc["payload"]

    def put(self, key: str, payload) -> None:
        if not self.enabled:
            return
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"key": key, "payload": payload}, fh, sort_keys=True)
            os.replace(tmp, self._path(key))
        except OSError as exc:
            log.warning("could not write cache entry: %s", exc)

    def fetch(self, key: str, compute):
        payload = self.get(key)
        if payload is None:
            payload = compute()
            self.put(key, payload)
        return payload

    @staticmethod
    def _discard(path):
        try:
            path.unlink()
        except OSError:
            pass

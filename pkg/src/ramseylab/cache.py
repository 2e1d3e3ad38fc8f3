"""Append-only JSON-lines results cache."""

from __future__ import annotations

import json
import os
from pathlib import Path

from ._version import __version__

__all__ = ["ResultsCache", "default_cache_path"]


def default_cache_path() -> Path:
    env = os.environ.get("RAMSEYLAB_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ramseylab" / "cache.jsonl"


def _key_string(key: dict) -> str:
    return json.dumps(key, sort_keys=True, separators=(",", ":"))


class ResultsCache:
    """Records are ``{"key": {...}, "toolkit_version": ..., "value": ...}``.

    Later lines win over earlier ones with the same key.  Lines that fail to
    parse are skipped so a torn final write never poisons the file.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._index: dict[str, dict] | None = None

    def _load(self) -> dict[str, dict]:
        if self._index is None:
            self._index = {}
            if self.path.exists():
                with self.path.open(encoding="utf-8") as fh:
                    for line in fh:
                        try:
                            rec = json.loads(line)
                            self._index[_key_string(rec["key"])] = rec
                        except (json.JSONDecodeError, KeyError, TypeError):
                            continue
        return self._index

    def get(self, key: dict):
        rec = self._load().get(_key_string(key))
        return None if rec is None else rec["value"]

    def put(self, key: dict, value) -> None:
        rec = {"key": key, "toolkit_version": __version__, "value": value}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._load()[_key_string(key)] = rec

    def __len__(self) -> int:
        return len(self._load())

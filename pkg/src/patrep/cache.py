"""On-disk cache of computed counts, keyed by canonical partition, n and method."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import __version__

ENV_VAR = "PATREP_CACHE_DIR"


@dataclass
class CacheRecord:
    key: tuple[str, int, str]
    value: object
    version: str = __version__

    @property
    def slot(self) -> str:
        return "|".join(str(k) for k in self.key)


class CacheMismatch(RuntimeError):
    pass


class ResultCache:
    def __init__(self, directory: Optional[os.PathLike | str], verify: bool = False):
        self.path = Path(directory) / "results.json" if directory else None
        self.verify = verify
        self._entries: dict[str, dict] = {}
        if self.path is not None and self.path.exists():
            data = json.loads(self.path.read_text())
            if data.get("version") == __version__:
                self._entries = data.get("entries", {})

    @classmethod
    def from_env(cls, directory: Optional[str] = None, verify: bool = False) -> "ResultCache":
        return cls(directory or os.environ.get(ENV_VAR), verify)

    def get_or_compute(self, key: tuple[str, int, str], compute: Callable[[], object]) -> object:
        record = CacheRecord(key, None)
        hit = self._entries.get(record.slot)
        if hit is not None and hit.get("version") == __version__:
            if self.verify:
                fresh = compute()
                if fresh != hit["value"]:
                    raise CacheMismatch(f"cache entry {record.slot} holds {hit['value']}, recomputed {fresh}")
            return hit["value"]
        record.value = compute()
        self._entries[record.slot] = {"value": record.value, "version": record.version}
        return record.value

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"version": __version__, "entries": dict(sorted(self._entries.items()))}
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=1) + "\n")
        tmp.replace(self.path)

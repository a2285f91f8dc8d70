"""Content-addressed result cache.

An entry is keyed by sha256 over (canonical input, operation, version) and
holds the canonical result document.  Writes go to a temporary file in the
same directory followed by an atomic rename, so concurrent readers never see
a partial entry.
"""

from __future__ import annotations

import hashlib
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .documents import DocumentError, dumps, loads

ENV_VAR = "HSTAB_CACHE_DIR"


def cache_key(operation: str, input_doc: Any, version: str = __version__) -> str:
    h = hashlib.sha256()
    for part in (dumps(input_doc), operation, version):
        h.update(part.encode())
        h.update(b"\0")
    return h.hexdigest()


class Cache:
    def __init__(self, directory: str | os.PathLike | None, version: str = __version__, log=None):
        self.dir = Path(directory) if directory else None
        self.version = version
        self._log = log

    @property
    def log(self):
        return self._log or sys.stderr

    @classmethod
    def from_env(cls, flag: str | None = None, **kw) -> "Cache":
        return cls(flag or os.environ.get(ENV_VAR) or None, **kw)

    @property
    def enabled(self) -> bool:
        return self.dir is not None and self.dir.is_dir()

    def _path(self, key: str) -> Path:
        return self.dir / key[:2] / f"{key}.json"

    def get_or_compute(self, operation: str, input_doc: Any, thunk: Callable[[], Any]) -> Any:
        if not self.enabled:
            return thunk()
        key = cache_key(operation, input_doc, self.version)
        path = self._path(key)
        if path.exists():
            try:
                entry = loads(path.read_text(encoding="utf-8"))
                if not isinstance(entry, dict) or entry.get("key") != key or "value" not in entry:
                    raise DocumentError("entry does not match its key")
                print(f"cache hit {operation} {key[:16]}", file=self.log)
                return entry["value"]
            except (OSError, UnicodeDecodeError, DocumentError) as exc:
                print(f"warning: corrupt cache entry {path.name} ({exc}); recomputing", file=self.log)
        print(f"cache miss {operation} {key[:16]}", file=self.log)
        value = thunk()
        entry = {"key": key, "operation": operation, "version": self.version, "value": value}
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(dumps(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return loads(dumps(value))

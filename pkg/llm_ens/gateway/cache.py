from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path

logger = logging.getLogger(__name__)


class ResponseCache:
    """
    One file per key under `cache_dir`, named by the key, holding the
    response text. Entries are never overwritten: the first writer wins.
    """

    def __init__(self, cache_dir: str | Path):
        self.cache_dir = Path(cache_dir)

    def path(self, key: str) -> Path:
        return self.cache_dir / key

    def get(self, key: str) -> str | None:
        try:
            return self.path(key).read_text(encoding="utf-8")
        except FileNotFoundError:
            return None

    def put(self, key: str, text: str) -> None:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(text)
            try:
                os.link(tmp, self.path(key))
            except FileExistsError:
                logger.debug("cache entry %s already written", key[:12])
        finally:
            os.unlink(tmp)

    def __contains__(self, key: str) -> bool:
        return self.path(key).exists()

import threading
from typing import Callable, Dict, Hashable, Optional, TypeVar

T = TypeVar("T")


class ResultCatalog:
    """In-memory store for results that depend only on the group datum.

    Keys start with (n, a); values are immutable models, so readers on other
    threads may share them freely.
    """

    def __init__(self):
        self.entries: Dict[Hashable, object] = {}
        self.group_keys: Dict[tuple, list] = {}  # (n, a) -> keys stored for it
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def store(self, key: tuple, value: T) -> T:
        """Store a result under its key and return it."""
        with self._lock:
            if key not in self.entries:
                self.group_keys.setdefault(key[:2], []).append(key)
            self.entries[key] = value
        return value

    def get(self, key: tuple) -> Optional[object]:
        with self._lock:
            value = self.entries.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def get_or_compute(self, key: tuple, compute: Callable[[], T]) -> T:
        """Return the cached value, computing and storing it on a miss."""
        value = self.get(key)
        if value is None:
            value = self.store(key, compute())
        return value

    def get_group_stats(self, n: int, a: int) -> Dict:
        """Statistics for the entries stored for one group."""
        with self._lock:
            keys = self.group_keys.get((n, a), [])
            return {
                "entries": len(keys),
                "kinds": sorted({key[2] for key in keys}),
                "hits": self.hits,
                "misses": self.misses,
            }

    def clear(self):
        with self._lock:
            self.entries.clear()
            self.group_keys.clear()
            self.hits = 0
            self.misses = 0


catalog = ResultCatalog()

"""
Persistent memo tables.

A cache file is line-oriented text so an interrupted run loses at most the
entries not yet flushed::

    # strictbs-cache format=1 rank=6
    1,5,6,4,2,3	unresolvable
    4,5,6,1,2,3	resolvable	1,2,4,3,5,6	3,5,6,1,2,4

A file whose header does not match the expected format version and rank, or
whose entries are inconsistent, is ignored as a whole.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Optional

from .bruhat import Split
from .permutation import Permutation, identity
from .singularity import is_smooth_variety

__all__ = ["FORMAT_VERSION", "CacheError", "default_cache_path", "load_cache", "CacheWriter"]

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
RESOLVABLE = "resolvable"
UNRESOLVABLE = "unresolvable"


class CacheError(ValueError):
    pass


def _header(rank: int) -> str:
    return f"# strictbs-cache format={FORMAT_VERSION} rank={rank}\n"


def default_cache_path(rank: int) -> Path:
    root = os.environ.get("STRICTBS_CACHE_DIR")
    base = Path(root) if root else Path.home() / ".cache" / "strictbs"
    return base / f"s{rank}.cache"


def _is_identity(w: Permutation) -> bool:
    return w == identity(len(w))


def _parse(lines: list[str], rank: int) -> dict:
    if not lines or lines[0] != _header(rank).strip():
        raise CacheError(f"header mismatch (want format={FORMAT_VERSION} rank={rank})")
    memo: dict[Permutation, Optional[Split]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        try:
            w = Permutation.parse(fields[0])
            if fields[1] == UNRESOLVABLE and len(fields) == 2:
                value = None
            elif fields[1] == RESOLVABLE and len(fields) == 4:
                value = Split(Permutation.parse(fields[2]), Permutation.parse(fields[3]))
            else:
                raise CacheError(f"unknown entry kind {fields[1]!r}")
        except (ValueError, IndexError) as exc:
            raise CacheError(f"line {lineno}: {exc}") from exc
        if len(w) != rank:
            raise CacheError(f"line {lineno}: rank {len(w)} entry in a rank {rank} cache")
        if value is not None and (value.product != w or not value.is_reduced()
                                  or _is_identity(value.w1) or _is_identity(value.w2)):
            raise CacheError(f"line {lineno}: split does not factor {w}")
        if w in memo and memo[w] != value:
            raise CacheError(f"line {lineno}: conflicting entries for {w}")
        memo[w] = value
    for w, split in memo.items():
        if split is None:
            continue
        for f in (split.w1, split.w2):
            if not is_smooth_variety(f) and memo.get(f) is None:
                raise CacheError(f"resolvable entry {w} relies on undecided factor {f}")
    return memo


def load_cache(path: Path, rank: int, strict: bool = False) -> dict:
    """Read a cache file.

    A missing file gives an empty memo.  An unusable file gives an empty memo
    with a warning, or raises CacheError when ``strict``.
    """
    path = Path(path)
    if not path.exists():
        return {}
    text = path.read_text(encoding="utf-8")
    # a killed run may leave a partial final line
    text = text[: text.rfind("\n") + 1]
    try:
        return _parse(text.splitlines(), rank)
    except CacheError as exc:
        if strict:
            raise
        log.warning("ignoring cache %s: %s", path, exc)
        return {}


def _drop_partial_line(path: Path) -> None:
    with open(path, "rb+") as fh:
        data = fh.read()
        if data and not data.endswith(b"\n"):
            fh.truncate(data.rfind(b"\n") + 1)


class CacheWriter:
    """Single appending writer; flushes to disk every ``flush_every`` entries.

    Pass ``valid=False`` to discard an existing unusable file.
    """

    def __init__(self, path: Path, rank: int, valid: bool = True, flush_every: int = 256):
        self.path = Path(path)
        self.flush_every = max(1, flush_every)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not valid or not self.path.exists() or self.path.stat().st_size == 0
        if not fresh:
            _drop_partial_line(self.path)
        self._fh = open(self.path, "w" if fresh else "a", encoding="utf-8")
        if fresh:
            self._fh.write(_header(rank))
        self._pending = 0

    def write(self, entries: list) -> None:
        for w, split in entries:
            if split is None:
                self._fh.write(f"{w.csv()}\t{UNRESOLVABLE}\n")
            else:
                self._fh.write(f"{w.csv()}\t{RESOLVABLE}\t{split.w1.csv()}\t{split.w2.csv()}\n")
            self._pending += 1
        if self._pending >= self.flush_every:
            self.flush()

    def flush(self) -> None:
        self._fh.flush()
        os.fsync(self._fh.fileno())
        self._pending = 0

    def close(self) -> None:
        self.flush()
        self._fh.close()

    def __enter__(self) -> "CacheWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

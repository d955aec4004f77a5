"""Plain-text trace cache.

Format (ASCII, LF line endings)::

    #fermat-trace-cache v1 m=<m>
    <p> <t_p>
    ...

sorted by p.  One writer at a time; readers may open the file concurrently
because rewrites go through a temporary file and an atomic rename.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ConflictingEntry, FormatMismatch

FORMAT_VERSION = "v1"
_HEADER = re.compile(r"^#fermat-trace-cache (v\d+) m=(\d+)$")


def default_cache_dir() -> Path:
    env = os.environ.get("FERMAT_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "fermatdeg"


def default_cache_path(m: int) -> Path:
    return default_cache_dir() / f"traces-m{m}.txt"


@dataclass
class TraceCache:
    m: int
    entries: dict[int, int] = field(default_factory=dict)
    path: Path | None = None

    @classmethod
    def load(cls, path: str | os.PathLike, m: int | None = None) -> "TraceCache":
        path = Path(path)
        if not path.exists():
            if m is None:
                raise FileNotFoundError(path)
            return cls(m, {}, path)
        with open(path, "r", encoding="ascii", newline="") as fh:
            text = fh.read()
        lines = text.split("\n")
        mt = _HEADER.match(lines[0]) if lines else None
        if not mt:
            raise FormatMismatch(f"{path}: bad header {lines[0]!r}" if lines else f"{path}: empty")
        version, mm = mt.group(1), int(mt.group(2))
        if version != FORMAT_VERSION:
            raise FormatMismatch(f"{path}: unsupported version {version}")
        if m is not None and mm != m:
            raise FormatMismatch(f"{path}: cache is for m={mm}, expected m={m}")
        entries: dict[int, int] = {}
        prev = -1
        for lineno, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise FormatMismatch(f"{path}:{lineno}: malformed line {line!r}")
            p, t = int(parts[0]), int(parts[1])
            if p <= prev:
                raise FormatMismatch(f"{path}:{lineno}: entries not strictly sorted")
            prev = p
            entries[p] = t
        return cls(mm, entries, path)

    def header(self) -> str:
        return f"#fermat-trace-cache {FORMAT_VERSION} m={self.m}"

    def render(self) -> str:
        body = "".join(f"{p} {self.entries[p]}\n" for p in sorted(self.entries))
        return self.header() + "\n" + body

    def save(self, path: str | os.PathLike | None = None) -> Path:
        path = Path(path or self.path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="ascii", newline="") as fh:
            fh.write(self.render())
        os.replace(tmp, path)
        self.path = path
        return path

    def update(self, new: Mapping[int, int]) -> None:
        """Add entries and persist; appends when sortedness allows, else rewrites."""
        fresh = {}
        for p, t in new.items():
            old = self.entries.get(p)
            if old is not None and old != t:
                raise ConflictingEntry(f"p={p}: cached {old}, computed {t}", p=p)
            if old is None:
                fresh[p] = t
        if not fresh:
            return
        top = max(self.entries) if self.entries else -1
        self.entries.update(fresh)
        if self.path is None:
            return
        if self.path.exists() and min(fresh) > top:
            with open(self.path, "a", encoding="ascii", newline="") as fh:
                fh.write("".join(f"{p} {fresh[p]}\n" for p in sorted(fresh)))
        else:
            self.save()

    def get(self, p: int) -> int | None:
        return self.entries.get(p)

    def __contains__(self, p: int) -> bool:
        return p in self.entries

    def __len__(self):
        return len(self.entries)


def cache_merge(paths: Iterable[str | os.PathLike]) -> TraceCache:
    """Union of several caches for the same m; disagreeing values abort."""
    caches = [TraceCache.load(p) for p in paths]
    if not caches:
        raise FormatMismatch("nothing to merge")
    m = caches[0].m
    merged: dict[int, int] = {}
    for c in caches:
        if c.m != m:
            raise FormatMismatch(f"{c.path}: m={c.m} differs from m={m}")
        for p, t in c.entries.items():
            if p in merged and merged[p] != t:
                raise ConflictingEntry(f"p={p}: {merged[p]} vs {t} in {c.path}", p=p)
            merged[p] = t
    return TraceCache(m, dict(sorted(merged.items())))

"""Binary SPF cache file.

Layout (little-endian)::

    b"SPLB"            magic
    u32                format version
    u64                limit
    u32 * (limit + 1)  spf[0..limit], with spf[0] = spf[1] = 0
"""

from __future__ import annotations

import math
import os
import struct
from pathlib import Path

import numpy as np

from .errors import CacheFormatError
from .sieve import SpfTable, primes_upto

MAGIC = b"SPLB"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sIQ")
CACHE_FILENAME = "spf.splb"
ENV_CACHE_DIR = "SIGMA_PHI_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sigma-phi-lab"


def cache_path(cache_dir: str | os.PathLike | None = None) -> Path:
    return Path(cache_dir if cache_dir is not None else default_cache_dir()) / CACHE_FILENAME


def write_spf_cache(path: str | os.PathLike, table: SpfTable) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, FORMAT_VERSION, table.limit))
        fh.write(np.ascontiguousarray(table.spf, dtype="<u4").tobytes())
    os.replace(tmp, path)
    return path


def read_header(path: str | os.PathLike) -> int:
    """Validate the header and file length; return the stored limit."""
    path = Path(path)
    size = path.stat().st_size
    with open(path, "rb") as fh:
        raw = fh.read(HEADER.size)
    if len(raw) < HEADER.size:
        raise CacheFormatError(f"{path}: truncated header ({len(raw)} bytes)", offset=len(raw))
    magic, version, limit = HEADER.unpack(raw)
    if magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}", offset=0)
    if version != FORMAT_VERSION:
        raise CacheFormatError(
            f"{path}: format version {version}, this build reads version {FORMAT_VERSION}", offset=4
        )
    expected = HEADER.size + 4 * (limit + 1)
    if size != expected:
        raise CacheFormatError(
            f"{path}: {size} bytes on disk, header promises {expected}", offset=min(size, expected)
        )
    return limit


def read_spf_cache(path: str | os.PathLike) -> SpfTable:
    limit = read_header(path)
    spf = np.fromfile(path, dtype="<u4", offset=HEADER.size, count=limit + 1)
    return SpfTable(limit, spf.astype(np.uint32, copy=False))


def check_spf_cache(path: str | os.PathLike, fraction: float = 0.01, seed: int = 0) -> int | None:
    """Recompute a random sample of entries independently.

    Returns None when every sampled entry is right, else the byte offset
    of the first (lowest) mismatching entry.  Structural problems raise
    CacheFormatError.
    """
    table = read_spf_cache(path)
    rng = np.random.default_rng(seed)
    k = max(1, int(round(fraction * (table.limit - 1))))
    sample = np.unique(rng.integers(2, table.limit + 1, size=k, dtype=np.int64))
    sample = np.concatenate(([0, 1], sample))

    truth = np.zeros(sample.size, dtype=np.int64)
    for p in primes_upto(math.isqrt(table.limit) + 1).tolist():
        hit = (truth == 0) & (sample % p == 0) & (sample >= 2)
        truth[hit] = p
    rest = (truth == 0) & (sample >= 2)
    truth[rest] = sample[rest]

    bad = np.flatnonzero(table.spf[sample].astype(np.int64) != truth)
    if bad.size == 0:
        return None
    return HEADER.size + 4 * int(sample[bad[0]])


def load_if_covers(cache_dir, needed: int) -> SpfTable | None:
    """The cached table if one exists, is valid and reaches ``needed``."""
    path = cache_path(cache_dir)
    if not path.exists():
        return None
    try:
        if read_header(path) < needed:
            return None
        return read_spf_cache(path)
    except CacheFormatError:
        return None

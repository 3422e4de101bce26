"""On-disk half-sum table cache.

Binary layout (all little-endian):

    magic    4 bytes  b"BCHS"
    version  u32
    lambda   f64 (exact binary64 key)
    L        u32
    count    u64      (= 2^(L/2))
    payload  count f64 values, sorted ascending
    crc32    u32      of header + payload

Round trips are bit-exact; loads validate everything before use and a
CRC over the whole stream catches any byte-level corruption.
"""

from __future__ import annotations

import os
import struct
import zlib
from pathlib import Path

import numpy as np

from .errors import IntegrityError
from .tables import HalfSumTable, cumulative_power, default_eta, validate_table

MAGIC = b"BCHS"
VERSION = 1
_HEADER = struct.Struct("<4sIdIQ")
CACHE_DIR_ENV = "BCTENT_CACHE_DIR"


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_DIR_ENV)
    return Path(env) if env else None


def cache_path(cache_dir: Path, lam: float, depth: int) -> Path:
    key = struct.pack("<d", lam).hex()
    return Path(cache_dir) / f"bchs_{key}_L{depth}.bin"


def cache_store(table: HalfSumTable, cache_dir: Path) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, table.lam, table.depth)
    header = _HEADER.pack(MAGIC, VERSION, table.lam, table.depth, table.size)
    payload = np.ascontiguousarray(table.halves, dtype="<f8").tobytes()
    crc = zlib.crc32(payload, zlib.crc32(header))
    path.write_bytes(header + payload + struct.pack("<I", crc))
    return path


def cache_load(
    lam: float, depth: int, cache_dir: Path, eta: float | None = None
) -> HalfSumTable:
    path = cache_path(Path(cache_dir), lam, depth)
    if not path.is_file():
        raise FileNotFoundError(path)
    raw = path.read_bytes()
    if len(raw) < _HEADER.size + 4:
        raise IntegrityError(f"{path}: truncated cache file")
    header, body = raw[: _HEADER.size], raw[_HEADER.size : -4]
    (stored_crc,) = struct.unpack("<I", raw[-4:])
    if zlib.crc32(body, zlib.crc32(header)) != stored_crc:
        raise IntegrityError(f"{path}: checksum mismatch")
    magic, version, file_lam, file_depth, count = _HEADER.unpack(header)
    if magic != MAGIC:
        raise IntegrityError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise IntegrityError(f"{path}: unsupported format version {version}")
    if struct.pack("<d", file_lam) != struct.pack("<d", lam):
        raise IntegrityError(f"{path}: lambda key mismatch")
    if file_depth != depth:
        raise IntegrityError(f"{path}: depth mismatch")
    if count != 1 << (depth // 2) or len(body) != 8 * count:
        raise IntegrityError(f"{path}: entry count disagrees with payload")

    halves = np.frombuffer(body, dtype="<f8").astype(np.float64)
    halves.setflags(write=False)
    half = depth // 2
    table = HalfSumTable(
        lam=lam,
        depth=depth,
        halves=halves,
        combine_scale=cumulative_power(lam, half),
        norm=1.0 / lam - 1.0,
        eta=default_eta(depth) if eta is None else eta,
    )
    validate_table(table)
    return table

"""Binary table cache: round trips and corruption detection."""

import struct

import numpy as np
import pytest

from bctent import (
    IntegrityError,
    build_half_sum_table,
    cache_load,
    cache_path,
    cache_store,
    count_le,
)
from bctent.cache import _HEADER, MAGIC, VERSION


def test_roundtrip_bit_exact(tmp_path):
    t = build_half_sum_table(0.8123, 20)
    path = cache_store(t, tmp_path)
    assert path.is_file()
    loaded = cache_load(0.8123, 20, tmp_path)
    assert np.array_equal(t.halves, loaded.halves)
    assert loaded.combine_scale == t.combine_scale
    assert loaded.norm == t.norm
    assert loaded.lam == t.lam and loaded.depth == t.depth


def test_loaded_table_counts_identically(tmp_path):
    t = build_half_sum_table(0.77, 16)
    cache_store(t, tmp_path)
    loaded = cache_load(0.77, 16, tmp_path)
    for x in np.linspace(0.0, 1.0, 37):
        assert count_le(t, float(x)) == count_le(loaded, float(x))


def test_cache_path_distinguishes_keys(tmp_path):
    paths = {
        cache_path(tmp_path, lam, depth)
        for lam in (0.75, 0.7500000000000001)
        for depth in (16, 18)
    }
    assert len(paths) == 4


def test_missing_file_raises_file_not_found(tmp_path):
    with pytest.raises(FileNotFoundError):
        cache_load(0.8, 16, tmp_path)


@pytest.mark.parametrize("offset", [0, 5, _HEADER.size + 11, -2])
def test_single_byte_corruption_detected(tmp_path, offset):
    t = build_half_sum_table(0.66, 14)
    path = cache_store(t, tmp_path)
    raw = bytearray(path.read_bytes())
    raw[offset] ^= 0x40
    path.write_bytes(bytes(raw))
    with pytest.raises(IntegrityError):
        cache_load(0.66, 14, tmp_path)


def test_truncated_file_detected(tmp_path):
    t = build_half_sum_table(0.66, 14)
    path = cache_store(t, tmp_path)
    path.write_bytes(path.read_bytes()[:10])
    with pytest.raises(IntegrityError):
        cache_load(0.66, 14, tmp_path)


def test_key_mismatches_detected(tmp_path):
    t = build_half_sum_table(0.66, 14)
    path = cache_store(t, tmp_path)
    # same bytes presented under a different lambda key
    other = cache_path(tmp_path, 0.67, 14)
    other.write_bytes(path.read_bytes())
    with pytest.raises(IntegrityError):
        cache_load(0.67, 14, tmp_path)
    # and under a different depth
    other = cache_path(tmp_path, 0.66, 16)
    other.write_bytes(path.read_bytes())
    with pytest.raises(IntegrityError):
        cache_load(0.66, 16, tmp_path)


def test_unsupported_version_detected(tmp_path):
    t = build_half_sum_table(0.66, 14)
    path = cache_store(t, tmp_path)
    raw = path.read_bytes()
    header = _HEADER.pack(MAGIC, VERSION + 1, 0.66, 14, t.size)
    body = raw[_HEADER.size : -4]
    import zlib

    crc = zlib.crc32(body, zlib.crc32(header))
    path.write_bytes(header + body + struct.pack("<I", crc))
    with pytest.raises(IntegrityError):
        cache_load(0.66, 14, tmp_path)


def test_payload_tampering_beyond_crc_caught_by_validation(tmp_path):
    # rewrite an unsorted payload with a fresh valid CRC: the structural
    # validator must still reject it
    import zlib

    t = build_half_sum_table(0.66, 14)
    path = cache_store(t, tmp_path)
    raw = path.read_bytes()
    header = raw[: _HEADER.size]
    halves = np.frombuffer(raw[_HEADER.size : -4], dtype="<f8").copy()
    halves[0], halves[-1] = halves[-1], halves[0]
    body = halves.tobytes()
    crc = zlib.crc32(body, zlib.crc32(header))
    path.write_bytes(header + body + struct.pack("<I", crc))
    with pytest.raises(IntegrityError):
        cache_load(0.66, 14, tmp_path)

import struct

import numpy as np
import pytest

from sigma_phi_lab import CacheFormatError, build_spf_table
from sigma_phi_lab.cache import (
    FORMAT_VERSION,
    HEADER,
    check_spf_cache,
    load_if_covers,
    read_spf_cache,
    write_spf_cache,
)


@pytest.fixture
def cache_file(tmp_path):
    return write_spf_cache(tmp_path / "spf.splb", build_spf_table(10**5))


def test_header_layout(cache_file):
    raw = cache_file.read_bytes()
    assert raw[:4] == b"SPLB"
    assert struct.unpack("<I", raw[4:8])[0] == FORMAT_VERSION
    assert struct.unpack("<Q", raw[8:16])[0] == 10**5
    assert len(raw) == 16 + 4 * (10**5 + 1)


def test_roundtrip(cache_file):
    t = read_spf_cache(cache_file)
    assert t.limit == 10**5
    assert np.array_equal(t.spf, build_spf_table(10**5).spf)


def test_check_fresh(cache_file):
    assert check_spf_cache(cache_file, fraction=0.05) is None


def test_truncated_rejected(cache_file):
    raw = cache_file.read_bytes()
    cache_file.write_bytes(raw[:-10])
    with pytest.raises(CacheFormatError) as exc:
        read_spf_cache(cache_file)
    assert exc.value.offset == len(raw) - 10


def test_version_mismatch_rejected(cache_file):
    raw = bytearray(cache_file.read_bytes())
    raw[4:8] = struct.pack("<I", FORMAT_VERSION + 1)
    cache_file.write_bytes(bytes(raw))
    with pytest.raises(CacheFormatError, match="version"):
        read_spf_cache(cache_file)


def test_bad_magic_rejected(cache_file):
    raw = bytearray(cache_file.read_bytes())
    raw[:4] = b"NOPE"
    cache_file.write_bytes(bytes(raw))
    with pytest.raises(CacheFormatError, match="magic"):
        read_spf_cache(cache_file)


def test_corrupt_entry_reported_at_offset(cache_file):
    raw = bytearray(cache_file.read_bytes())
    # corrupt every entry from n = 5000 on; the first sampled one >= 5000 is reported
    bad = np.frombuffer(bytes(raw[HEADER.size:]), dtype="<u4").copy()
    bad[5000:] = 1
    cache_file.write_bytes(bytes(raw[: HEADER.size]) + bad.tobytes())
    offset = check_spf_cache(cache_file, fraction=0.05)
    assert offset is not None
    n = (offset - HEADER.size) // 4
    assert 5000 <= n < 5200


def test_load_if_covers(tmp_path):
    write_spf_cache(tmp_path / "spf.splb", build_spf_table(1000))
    assert load_if_covers(tmp_path, 500).limit == 1000
    assert load_if_covers(tmp_path, 5000) is None
    assert load_if_covers(tmp_path / "missing", 10) is None

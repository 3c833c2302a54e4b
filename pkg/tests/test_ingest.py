import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from infometer.corpus import get
from infometer.ingest import (IngestError, SymbolizationPolicy, ingest_bytes, ingest_file,
                              serialize)

BIT = SymbolizationPolicy("bit")
BYTE = SymbolizationPolicy("byte")


def test_bit_mode_is_msb_first():
    assert b"".join(ingest_bytes(b"\xb0", BIT).pattern) == b"10110000"
    assert b"".join(ingest_bytes(b"\x01\x80", BIT).pattern) == b"0000000110000000"


def test_text_fixture_counts():
    rep = ingest_bytes(get("X_D").content.encode(), SymbolizationPolicy("utf8-char", newline="strip"))
    assert len(rep.pattern) == 101 and len(rep.pattern.alphabet) == 12


def test_token_tail_is_dropped_with_warning():
    rep = ingest_bytes(b"abcde", SymbolizationPolicy("token", 2))
    assert rep.pattern.symbols == (b"ab", b"cd")
    assert rep.dropped_symbols == 1 and rep.warnings
    assert len(rep.pattern) * 2 + rep.dropped_symbols == rep.source_bytes


def test_files(tmp_path):
    data = random.Random(1).randbytes(10000)
    path = tmp_path / "x.bin"
    path.write_bytes(data)
    assert len(ingest_file(path, BYTE).pattern) == 10000
    assert len(ingest_file(path, BIT).pattern) == 80000
    assert ingest_file(path, BIT) == ingest_bytes(data, BIT)
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    rep = ingest_file(empty, BYTE)
    assert len(rep.pattern) == 0 and rep.source_bytes == 0


def test_missing_file_names_the_path(tmp_path):
    with pytest.raises(IngestError, match="nope.bin"):
        ingest_file(tmp_path / "nope.bin", BYTE)


def test_malformed_utf8_reports_offset():
    with pytest.raises(IngestError, match="offset 2"):
        ingest_bytes(b"ab\xffcd", SymbolizationPolicy("utf8-char"))


def test_newline_policies():
    text = "ab\r\ncd\ne".encode()
    strip = ingest_bytes(text, SymbolizationPolicy("utf8-char", newline="strip"))
    assert strip.pattern.text() == "abcde" and strip.stripped_newlines == 3
    lf = ingest_bytes(text, SymbolizationPolicy("utf8-char", newline="lf"))
    assert lf.pattern.text() == "ab\ncd\ne"
    keep = ingest_bytes(text, SymbolizationPolicy("utf8-char", newline="keep"))
    assert len(keep.pattern) == 8
    assert SymbolizationPolicy("byte").effective_newline == "keep"
    assert SymbolizationPolicy("utf8-char").effective_newline == "strip"


def test_code_points_are_single_symbols():
    rep = ingest_bytes("éé".encode(), SymbolizationPolicy("utf8-char"))
    assert len(rep.pattern) == 3


@pytest.mark.parametrize("kwargs", [dict(mode="nibble"), dict(mode="token", width=0),
                                    dict(newline="crlf"), dict(declared_alphabet=0)])
def test_invalid_policies(kwargs):
    with pytest.raises(IngestError):
        SymbolizationPolicy(**kwargs)


def test_policy_parse():
    assert SymbolizationPolicy.parse("token:4") == SymbolizationPolicy("token", 4)
    with pytest.raises(IngestError):
        SymbolizationPolicy.parse("token:x")


def test_declared_alphabet_must_cover_observed():
    with pytest.raises(IngestError):
        ingest_bytes(b"abc", SymbolizationPolicy("byte", declared_alphabet=2))


@given(st.binary(max_size=200))
def test_byte_round_trip_and_bit_byte_consistency(data):
    byte = ingest_bytes(data, BYTE)
    bit = ingest_bytes(data, BIT)
    assert serialize(byte.pattern, BYTE) == data
    assert serialize(bit.pattern, BIT) == data
    assert len(bit.pattern) == 8 * len(byte.pattern)


@given(st.binary(max_size=100), st.sampled_from(["bit", "byte", "token:3"]))
def test_policy_determinism(data, mode):
    policy = SymbolizationPolicy.parse(mode)
    assert ingest_bytes(data, policy) == ingest_bytes(data, policy)

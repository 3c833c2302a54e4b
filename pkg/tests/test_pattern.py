import pytest

from infometer import Alphabet, Block, Pattern


def test_symbols_are_canonical_bytes():
    p = Pattern("aé")
    assert p.symbols == (b"a", "é".encode())
    assert Pattern([1, 22]).symbols == (b"1", b"22")
    assert Pattern(b"\x00\xff").symbols == (b"\x00", b"\xff")


def test_alphabet_is_sorted_and_sized():
    p = Pattern("banana")
    assert p.alphabet == Alphabet((b"a", b"b", b"n"))
    assert p.alphabet.size == 3 and b"n" in p.alphabet and "z" not in p.alphabet
    with pytest.raises(ValueError):
        Alphabet((b"b", b"a"))


def test_length_and_equality():
    assert len(Pattern("")) == 0
    assert Pattern("abc") == Pattern(["a", "b", "c"])
    assert Pattern("abc") != Pattern("abd")
    assert hash(Pattern("xy")) == hash(Pattern("xy"))


def test_from_bytes_matches_generic_constructor():
    data = bytes([5, 1, 5, 200, 1])
    assert Pattern.from_bytes(data) == Pattern([bytes([b]) for b in data])


def test_from_codes_drops_unused_symbols():
    p = Pattern.from_codes([0, 0, 2], [b"a", b"b", b"c"])
    assert p.symbols == (b"a", b"a", b"c")
    assert len(p.alphabet) == 2
    with pytest.raises(ValueError):
        Pattern.from_codes([3], [b"a"])


def test_concatenation_repeat_reverse_and_slices():
    assert Pattern("ab") + Pattern("xa") == Pattern("abxa")
    assert Pattern("ab") * 3 == Pattern("ababab")
    assert Pattern("abc").reversed() == Pattern("cba")
    assert Pattern("abcd")[1:3] == Pattern("bc")
    assert Pattern("abcd")[0] == b"a"


def test_pattern_is_immutable_through_codes():
    p = Pattern("ab")
    codes = p.codes
    codes[0] = 1
    assert p == Pattern("ab")


def test_empty_symbols_rejected():
    with pytest.raises(ValueError):
        Pattern([b""])
    with pytest.raises(TypeError):
        Pattern([1.5])


def test_block_canonical_form():
    assert Block((b"a", b"b")).canonical() == b"ab"
    assert Block((b"ab", b"c")).canonical() != Block((b"a", b"bc")).canonical()

"""Discrete patterns, alphabets and frequency tables.

A :class:`Pattern` stores its symbols as integer codes into a sorted
alphabet of canonical byte strings. Every measure works on the codes; the
byte strings only matter for ordering, equality and display.
"""

from __future__ import annotations

from array import array
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

SymbolLike = Union[bytes, str, int]


def canonical(symbol: SymbolLike) -> bytes:
    """Return the canonical byte string of a symbol.

    ``str`` symbols are UTF-8 encoded, ints use their decimal text form and
    bytes are taken as-is. Empty symbols are rejected.
    """
    if isinstance(symbol, bytes):
        out = symbol
    elif isinstance(symbol, str):
        out = symbol.encode("utf-8")
    elif isinstance(symbol, int):
        out = str(symbol).encode("ascii")
    elif isinstance(symbol, (bytearray, memoryview)):
        out = bytes(symbol)
    else:
        raise TypeError(f"unsupported symbol type: {type(symbol).__name__}")
    if not out:
        raise ValueError("symbols must be non-empty")
    return out


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[bytes, ...]

    def __post_init__(self):
        if list(self.symbols) != sorted(set(self.symbols)):
            raise ValueError("alphabet symbols must be distinct and sorted")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol) -> bool:
        return canonical(symbol) in set(self.symbols)

    @classmethod
    def of(cls, symbols: Iterable[SymbolLike]) -> "Alphabet":
        return cls(tuple(sorted({canonical(s) for s in symbols})))


class Pattern:
    """Immutable finite sequence of symbols.

    ``Pattern("0110")`` treats each character as a symbol; pass bytes to
    :meth:`from_bytes` for one symbol per byte, or any iterable of tokens.
    """

    __slots__ = ("_alphabet", "_codes", "_hash")

    def __init__(self, symbols: Union[str, Iterable[SymbolLike]] = ()):
        if isinstance(symbols, (bytes, bytearray)):
            # iterating bytes yields ints, which would canonicalise to digits
            symbols = [bytes((b,)) for b in symbols]
        items = [canonical(s) for s in symbols]
        alphabet = tuple(sorted(set(items)))
        index = {s: i for i, s in enumerate(alphabet)}
        self._alphabet = alphabet
        self._codes = array("I", [index[s] for s in items])
        self._hash = None

    @classmethod
    def from_codes(cls, codes: Sequence[int], alphabet: Sequence[bytes]) -> "Pattern":
        """Build from codes into ``alphabet``; unused alphabet entries are dropped."""
        alphabet = tuple(alphabet)
        if list(alphabet) != sorted(set(alphabet)):
            raise ValueError("alphabet must be sorted and distinct")
        codes = array("I", codes)
        used = sorted(set(codes))
        if used and used[-1] >= len(alphabet):
            raise ValueError("code outside alphabet")
        self = cls.__new__(cls)
        if len(used) == len(alphabet):
            self._alphabet = alphabet
            self._codes = codes
        else:
            remap = {old: new for new, old in enumerate(used)}
            self._alphabet = tuple(alphabet[i] for i in used)
            self._codes = array("I", [remap[c] for c in codes])
        self._hash = None
        return self

    @classmethod
    def from_bytes(cls, data: bytes) -> "Pattern":
        data = bytes(data)
        used = sorted(set(data))
        table = bytearray(256)
        for new, old in enumerate(used):
            table[old] = new
        self = cls.__new__(cls)
        self._alphabet = tuple(bytes((b,)) for b in used)
        self._codes = array("I", array("B", data.translate(bytes(table))))
        self._hash = None
        return self

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self._alphabet)

    @property
    def codes(self) -> array:
        """Codes into :attr:`alphabet`, as a fresh ``array('I')`` copy."""
        return array("I", self._codes)

    @property
    def symbols(self) -> tuple[bytes, ...]:
        alphabet = self._alphabet
        return tuple(alphabet[c] for c in self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    def __iter__(self) -> Iterator[bytes]:
        alphabet = self._alphabet
        return (alphabet[c] for c in self._codes)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Pattern.from_codes(self._codes[index], self._alphabet)
        return self._alphabet[self._codes[index]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._alphabet == other._alphabet and self._codes == other._codes

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._alphabet, self._codes.tobytes()))
        return self._hash

    def __add__(self, other: "Pattern") -> "Pattern":
        if not isinstance(other, Pattern):
            return NotImplemented
        merged = tuple(sorted(set(self._alphabet) | set(other._alphabet)))
        index = {s: i for i, s in enumerate(merged)}
        left = [index[s] for s in self._alphabet]
        right = [index[s] for s in other._alphabet]
        codes = array("I", (left[c] for c in self._codes))
        codes.extend(right[c] for c in other._codes)
        return Pattern.from_codes(codes, merged)

    def __mul__(self, times: int) -> "Pattern":
        return Pattern.from_codes(self._codes * times, self._alphabet)

    def reversed(self) -> "Pattern":
        codes = array("I", self._codes)
        codes.reverse()
        return Pattern.from_codes(codes, self._alphabet)

    def text(self, encoding: str = "utf-8") -> str:
        return b"".join(self).decode(encoding, errors="replace")

    def __repr__(self) -> str:
        head = b"".join(self[:40]).decode("utf-8", errors="replace")
        more = "..." if len(self) > 40 else ""
        return f"Pattern({head!r}{more}, n={len(self)}, k={len(self._alphabet)})"


@dataclass(frozen=True)
class Block:
    """Contiguous run of ``r`` symbols; compares by content only."""

    contents: tuple[bytes, ...]

    def __len__(self) -> int:
        return len(self.contents)

    def canonical(self, uniform: bool | None = None) -> bytes:
        """Encode as one symbol of the coarser scale.

        ``uniform`` says whether every symbol of the source alphabet has the
        same width; when unknown it is judged from this block alone.
        """
        if uniform is None:
            uniform = len({len(s) for s in self.contents}) <= 1
        if uniform:
            return b"".join(self.contents)
        # length-prefix mixed-width symbols so the encoding stays injective
        return b"".join(len(s).to_bytes(4, "big") + s for s in self.contents)


@dataclass(frozen=True)
class FrequencyTable:
    counts: Mapping[bytes, int]
    total: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to total")

    def p(self, symbol: SymbolLike) -> float:
        return self.counts[canonical(symbol)] / self.total

    def __len__(self) -> int:
        return len(self.counts)


def frequencies(p: Pattern) -> FrequencyTable:
    counts = Counter(p._codes)
    alphabet = p._alphabet
    return FrequencyTable({alphabet[c]: counts[c] for c in sorted(counts)}, len(p))


def as_pattern(x) -> Pattern:
    if isinstance(x, Pattern):
        return x
    if isinstance(x, (bytes, bytearray)):
        return Pattern.from_bytes(x)
    return Pattern(x)

"""Turn raw bytes and files into patterns under an explicit symbolization policy.

Bit mode expands every byte most-significant bit first, so ``0xB0`` becomes
``10110000``. Text newline handling defaults to ``strip`` for ``utf8-char``
and to ``keep`` for the binary modes.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path
from typing import Optional, Union

from .pattern import Pattern

MODES = ("bit", "byte", "utf8-char", "token")
NEWLINES = ("keep", "strip", "lf")

_BITS = (b"0", b"1")


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolizationPolicy:
    mode: str = "byte"
    width: int = 1
    newline: Optional[str] = None
    declared_alphabet: Optional[int] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise IngestError(f"unknown symbol mode {self.mode!r}")
        if self.mode == "token" and self.width < 1:
            raise IngestError("token width must be >= 1")
        if self.newline is not None and self.newline not in NEWLINES:
            raise IngestError(f"unknown newline policy {self.newline!r}")
        if self.declared_alphabet is not None and self.declared_alphabet < 1:
            raise IngestError("declared alphabet size must be >= 1")

    @property
    def effective_newline(self) -> str:
        if self.newline is not None:
            return self.newline
        return "strip" if self.mode == "utf8-char" else "keep"

    @classmethod
    def parse(cls, symbol: str = "byte", newline: Optional[str] = None,
              declared_alphabet: Optional[int] = None) -> "SymbolizationPolicy":
        """Build from CLI-style strings such as ``bit`` or ``token:4``."""
        if symbol.startswith("token:"):
            try:
                width = int(symbol.split(":", 1)[1])
            except ValueError:
                raise IngestError(f"bad token width in {symbol!r}") from None
            return cls("token", width, newline, declared_alphabet)
        return cls(symbol, 1, newline, declared_alphabet)

    def describe(self) -> dict:
        return {
            "mode": self.mode if self.mode != "token" else f"token:{self.width}",
            "newline": self.effective_newline,
            "declared_alphabet": self.declared_alphabet,
        }


@dataclass(frozen=True)
class IngestReport:
    pattern: Pattern
    source_bytes: int
    dropped_symbols: int
    stripped_newlines: int
    policy: SymbolizationPolicy
    warnings: tuple[str, ...] = field(default=())


def _apply_newline_bytes(data: bytes, policy: str) -> tuple[bytes, int]:
    if policy == "keep":
        return data, 0
    if policy == "strip":
        out = data.replace(b"\r", b"").replace(b"\n", b"")
    else:
        out = data.replace(b"\r\n", b"\n").replace(b"\r", b"\n")
    return out, len(data) - len(out)


def _apply_newline_text(text: str, policy: str) -> tuple[str, int]:
    if policy == "keep":
        return text, 0
    if policy == "strip":
        out = text.replace("\r", "").replace("\n", "")
    else:
        out = text.replace("\r\n", "\n").replace("\r", "\n")
    return out, len(text) - len(out)


def bits_pattern(data: bytes) -> Pattern:
    """MSB-first bit expansion of ``data`` over the alphabet ``{0, 1}``."""
    if not data:
        return Pattern()
    text = bin(int.from_bytes(data, "big"))[2:].zfill(8 * len(data))
    codes = array("B", text.encode("ascii").translate(bytes.maketrans(b"01", b"\x00\x01")))
    return Pattern.from_codes(codes, _BITS)


def ingest_bytes(data: bytes, policy: SymbolizationPolicy = SymbolizationPolicy()) -> IngestReport:
    data = bytes(data)
    newline = policy.effective_newline
    warnings: list[str] = []
    dropped = 0
    if policy.mode == "utf8-char":
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise IngestError(f"invalid UTF-8 at byte offset {e.start}") from e
        text, stripped = _apply_newline_text(text, newline)
        pattern = Pattern(text)
    else:
        body, stripped = _apply_newline_bytes(data, newline)
        if policy.mode == "bit":
            pattern = bits_pattern(body)
        elif policy.mode == "byte":
            pattern = Pattern.from_bytes(body)
        else:
            w = policy.width
            whole = len(body) // w * w
            dropped = len(body) - whole
            if dropped:
                warnings.append(f"dropped {dropped} trailing byte(s) not filling a {w}-byte token")
            pattern = Pattern(body[i:i + w] for i in range(0, whole, w))
    if policy.declared_alphabet is not None and policy.declared_alphabet < len(pattern.alphabet):
        raise IngestError(
            f"declared alphabet {policy.declared_alphabet} is smaller than the "
            f"{len(pattern.alphabet)} observed symbols")
    return IngestReport(pattern, len(data), dropped, stripped, policy, tuple(warnings))


def ingest_file(path: Union[str, PathLike], policy: SymbolizationPolicy = SymbolizationPolicy()) -> IngestReport:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise IngestError(f"{path}: {e.strerror or e}") from e
    return ingest_bytes(data, policy)


def serialize(pattern: Pattern, policy: SymbolizationPolicy) -> bytes:
    """Inverse of ingestion for the pattern part (dropped input is not restored)."""
    if policy.mode == "bit":
        text = b"".join(pattern).decode("ascii")
        if len(text) % 8:
            raise IngestError("bit pattern length is not a multiple of 8")
        return int(text, 2).to_bytes(len(text) // 8, "big") if text else b""
    return b"".join(pattern)

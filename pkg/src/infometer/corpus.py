"""Reference patterns with published values, and seeded pattern generators.

The multi-line DNA, random-string and English fixtures keep their line
breaks; measured with newlines kept they reproduce the published Shannon
information, and with newlines stripped their length equals the published
length.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ingest import SymbolizationPolicy, serialize
from .pattern import Pattern, canonical


class UnknownFixture(KeyError):
    pass


@dataclass(frozen=True)
class Fixture:
    id: str
    content: str
    unit: str
    length: int
    description: str
    # published whole-bit values: i_max, i_s, i_ssm (None where not printed)
    expected: dict = field(default_factory=dict)

    def pattern(self) -> Pattern:
        return Pattern(self.content)

    def to_bytes(self) -> bytes:
        return to_bytes(self.pattern(), self.unit)

    @property
    def policy(self) -> SymbolizationPolicy:
        """Policy that re-reads :meth:`to_bytes` as :meth:`pattern`."""
        if self.unit == "bit":
            return SymbolizationPolicy("bit")
        return SymbolizationPolicy("utf8-char", newline="keep")


_SKY = "The sky is blue. The sky is blue. The sky is blue."
_SKY_GLUE = "The sky is blue. The sky is glue. The sky is blue."

_FIXTURES = [
    Fixture("X_A", "001101101010111001110010001001000100001000010000", "bit", 48,
            "Random binary pattern.", {"i_max": 48, "i_s": 46, "i_ssm": 40}),
    Fixture("X_B", "101010101010101010101010101010101010101010101010", "bit", 48,
            "Repeating binary pattern.", {"i_max": 48, "i_s": 48, "i_ssm": 2}),
    Fixture("X_C", "111111110000000011111111000000001111111100000000", "bit", 48,
            "Repeating binary pattern.", {"i_max": 48, "i_s": 48, "i_ssm": 13}),
    Fixture("X_D", _SKY + " " + _SKY, "character", 101,
            "Repeating text.", {"i_max": 362, "i_s": 343, "i_ssm": 58}),
    Fixture("X_E", _SKY + " " + _SKY_GLUE, "character", 101,
            "Duplicate text with one character error.", {"i_max": 374, "i_s": 347, "i_ssm": 116}),
    Fixture("X_F", "\n".join([
        "cagtttctagctatattagcgggcacgactccactgcgcctatgcggaag",
        "cttgatcaaattttgaccagatcttaggtaacctgaacaagtcagttcgt",
        "aggcgtcgattggccgacgggtgcgaagaaaaaagtgatcgttgtccaac",
        "atctctagtacccaccgttgtgatgtacgttatacggacacgagcatatt",
    ]), "character", 200, "Random DNA pattern.", {"i_max": 471, "i_s": 422, "i_ssm": 409}),
    Fixture("X_G", "\n".join([
        "cggcagtgaggacaatcagacaactactattcaaacaattgttgaggttc",
        "aacctcaattagagatggaacttacaccagttgttcagactattgaagtg",
        "aatagttttagtggttatttaaaacttactgacaatgtatacattaaaaa",
        "tgcagacattgtggaagaagctaaaaaggtaaaaccaacagtggttgtta",
    ]), "character", 200, "DNA segment of COVID virus.", {"i_max": 471, "i_s": 405, "i_ssm": 388}),
    Fixture("X_H", "\n".join([
        "EK8Pi5sv2npTfzoaMNp87QtT5kbIUQkTJzHwICCstSmg4aksHT",
        "MwztgHFg3j8AoIobN3FycCLidGeyROiNyG5itB9kxyez1LZjFF",
        "HIBjipE7hidZyiJmilXM0mwnxzlzWSfQ0xP1OuFpWosMwS1cjY",
        "t4nyv4ONx1FceWkAf8SdvDGZVzeVzq2EmOqRF6Im2iudcYRswj",
    ]), "character", 200, "Random string (0-9, a-z, A-Z).", {"i_max": 1209, "i_s": 1174, "i_ssm": 1174}),
    Fixture("X_I", "\n".join([
        "I think it was the beginning of Mrs. Bond's ",
        "unquestioning faith in me when she saw me ",
        "quickly enveloping the cat till all you could ",
        "see of him was a small black and white head ",
        "protruding from an immovable cocoon of cloth.",
    ]), "character", 221, "English text (James Herriot's Cat Stories).",
            {"i_max": 1104, "i_s": 971, "i_ssm": 971}),
    Fixture("T3a", "123456789 123456789 123456789", "character", 29,
            "Clean repetition.", {"i_ssm": 29}),
    Fixture("T3b", "223456789 123456789 123456789", "character", 29,
            "Repetition with one substituted element.", {"i_ssm": 50}),
]

FIXTURES = {f.id: f for f in _FIXTURES}


def get(id: str) -> Fixture:
    try:
        return FIXTURES[id]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {id!r}; known: {', '.join(FIXTURES)}") from None


def fixture(id: str) -> Pattern:
    return get(id).pattern()


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a synthetic pattern.

    ``kind`` is one of ``uniform-random``, ``repeat``, ``repeat-with-errors``,
    ``ramp`` or ``words``. ``period`` is used by the two repeat kinds, whose
    alphabet defaults to the period's symbols; the other kinds default to
    ``0``/``1``.
    """

    kind: str
    length: int
    alphabet: Optional[Sequence] = None
    period: Optional[Sequence] = None
    error_rate: float = 0.0
    seed: int = 0


KINDS = ("uniform-random", "repeat", "repeat-with-errors", "ramp", "words")

_WORDS = (
    "the", "of", "and", "a", "to", "in", "is", "you", "that", "it", "he", "was",
    "for", "on", "are", "as", "with", "his", "they", "I", "at", "be", "this",
    "have", "from", "or", "one", "had", "by", "word", "but", "not", "what",
    "all", "were", "we", "when", "your", "can", "said", "there", "use", "an",
    "each", "which", "she", "do", "how", "their", "if", "will", "up", "other",
    "about", "out", "many", "then", "them", "these", "so", "some", "her",
    "would", "make", "like", "him", "into", "time", "has", "look", "two",
    "more", "write", "go", "see", "number", "no", "way", "could", "people",
    "my", "than", "first", "water", "been", "call", "who", "oil", "its", "now",
    "find", "long", "down", "day", "did", "get", "come", "made", "may", "part",
)


def generate(spec: GeneratorSpec) -> Pattern:
    if spec.kind not in KINDS:
        raise ValueError(f"unknown generator kind {spec.kind!r}")
    if spec.length < 0:
        raise ValueError("length must be non-negative")
    n = spec.length
    rng = random.Random(spec.seed)
    if spec.kind in ("repeat", "repeat-with-errors"):
        period = [canonical(s) for s in (spec.period or ())]
        if not period:
            raise ValueError("repeat kinds need a non-empty period")
        alphabet = sorted({canonical(s) for s in (spec.alphabet or period)})
        if not set(period) <= set(alphabet):
            raise ValueError("period uses symbols outside the alphabet")
        out = [period[i % len(period)] for i in range(n)]
        if spec.kind == "repeat-with-errors":
            out = _corrupt(out, alphabet, spec.error_rate, rng)
        return Pattern(out)
    if spec.kind == "words":
        words = []
        total = 0
        weights = [1.0 / (i + 1) for i in range(len(_WORDS))]
        while total < n:
            w = rng.choices(_WORDS, weights)[0]
            words.append(w)
            total += len(w) + 1
        text = " ".join(words)
        return Pattern(text[:n])
    alphabet = [canonical(s) for s in (("0", "1") if spec.alphabet is None else spec.alphabet)]
    if not alphabet:
        raise ValueError("alphabet must not be empty")
    if spec.kind == "uniform-random":
        return Pattern(rng.choice(alphabet) for _ in range(n))
    # ramp: a staircase rising once through the alphabet over the pattern
    k = len(alphabet)
    return Pattern(alphabet[i * k // n] for i in range(n))


def _corrupt(symbols: list, alphabet: list, rate: float, rng: random.Random) -> list:
    """Substitute ``round(rate * len)`` distinct positions by a different symbol."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError("error rate must lie in [0, 1]")
    if len(alphabet) < 2:
        raise ValueError("substitutions need at least two symbols")
    out = list(symbols)
    count = round(rate * len(out))
    for pos in sorted(rng.sample(range(len(out)), count)):
        choices = [a for a in alphabet if a != out[pos]]
        out[pos] = rng.choice(choices)
    return out


def trend_signals(n_bits: int = 80000, period_bits: int = 800, error_rate: float = 0.05,
                  seed: int = 0) -> dict[str, Pattern]:
    """Three binary signals of increasing complexity for ranking checks.

    ``periodic`` repeats one random period, ``noisy-periodic`` flips a
    fraction ``error_rate`` of its bits and ``random`` is uniform noise.
    """
    rng = random.Random(seed)
    period = [rng.choice("01") for _ in range(period_bits)]
    return {
        "periodic": generate(GeneratorSpec("repeat", n_bits, period=period)),
        "noisy-periodic": generate(GeneratorSpec("repeat-with-errors", n_bits, ("0", "1"),
                                                 period, error_rate, seed + 1)),
        "random": generate(GeneratorSpec("uniform-random", n_bits, seed=seed + 2)),
    }


def to_bytes(p: Pattern, unit: str) -> bytes:
    """File form of a pattern: packed MSB-first for ``bit``, joined symbols otherwise."""
    if unit == "bit":
        return serialize(p, SymbolizationPolicy("bit"))
    return b"".join(p)

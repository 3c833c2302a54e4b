"""Shannon information, information spectra and spectrum-minimum information.

All quantities are in bits (base-2 logarithms) and kept at full precision;
rounding to whole bits happens only when reports are displayed.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import _backend
from ._pure import entropy_from_counts
from .pattern import Block, Pattern, as_pattern

RAW = "raw"
MAXIMAL = "maximal"
NORMALIZED = "normalized"
KINDS = (RAW, MAXIMAL, NORMALIZED)


class InvalidScale(ValueError):
    pass


def round_bits(x: float) -> int:
    """Round half up to whole bits."""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class Spectrum:
    kind: str
    values: dict[int, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, r: int) -> float:
        return self.values[r]

    def scales(self) -> list[int]:
        return sorted(self.values)

    def argmin(self) -> int:
        """Smallest scale attaining the minimum; 0 for an empty spectrum."""
        if not self.values:
            return 0
        best = min(self.values.values())
        return min(r for r, v in self.values.items() if v == best)


@dataclass(frozen=True)
class MeasureReport:
    n: int
    k: int
    i_max: float
    i_shannon: float
    i_ssm: float
    argmin_scale: int
    i_shannon_rel: float
    i_ssm_rel: float

    def as_dict(self) -> dict:
        return asdict(self)

    def rounded(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "i_max": round_bits(self.i_max),
            "i_shannon": round_bits(self.i_shannon),
            "i_ssm": round_bits(self.i_ssm),
            "argmin_scale": self.argmin_scale,
        }


@dataclass(frozen=True)
class SpectrumSet:
    """The three spectra of one pattern plus per-scale distinct-block counts."""

    raw: Spectrum
    maximal: Spectrum
    normalized: Spectrum
    distinct: dict[int, int]
    n: int
    k: int

    def by_kind(self, kind: str) -> Spectrum:
        return {RAW: self.raw, MAXIMAL: self.maximal, NORMALIZED: self.normalized}[kind]


def _alphabet_size(p: Pattern, k: Optional[int]) -> int:
    observed = len(p.alphabet)
    if k is None:
        return observed
    if k < max(observed, 1):
        raise ValueError(f"declared alphabet size {k} is smaller than the {observed} observed symbols")
    return k


def shannon_information(p) -> float:
    """Sum over positions of ``log2(1/p(x_i))``, i.e. ``sum f(x) log2(N/f(x))``."""
    p = as_pattern(p)
    n = len(p)
    if n == 0:
        return 0.0
    return entropy_from_counts(Counter(p._codes).values(), n)


def max_information(n: int, k: int) -> float:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n == 0 or k == 1:
        return 0.0
    return n * math.log2(k)


def relative_information(i: float, i_max: float) -> float:
    if i < 0 or i_max < 0:
        raise ValueError("information values must be non-negative")
    return i / i_max if i_max > 0 else 0.0


def blocks(p, r: int) -> list[Block]:
    """Non-overlapping length-``r`` blocks; a shorter tail is dropped."""
    p = as_pattern(p)
    n = len(p)
    if r < 1 or r > n:
        raise InvalidScale(f"scale {r} outside 1..{n}")
    symbols = p.symbols
    return [Block(symbols[j:j + r]) for j in range(0, (n // r) * r, r)]


def partition(p, r: int) -> Pattern:
    """The pattern re-symbolised into blocks of length ``r``."""
    p = as_pattern(p)
    uniform = len({len(s) for s in p.alphabet.symbols}) <= 1
    return Pattern(b.canonical(uniform) for b in blocks(p, r))


def _sampled_scales(top: int, max_scales: int) -> list[int]:
    """Deterministic subset of ``1..top``: a dense head plus a log-spaced tail."""
    if max_scales >= top:
        return list(range(1, top + 1))
    if max_scales < 1:
        raise ValueError("max_scales must be >= 1")
    head = max(1, max_scales // 2)
    chosen = set(range(1, head + 1))
    tail = max_scales - head
    if tail > 0:
        ratio = (top / head) ** (1.0 / tail)
        for i in range(1, tail + 1):
            chosen.add(min(top, max(head + 1, round(head * ratio ** i))))
    chosen.add(top)
    return sorted(chosen)


def _chunks(top: int, parts: int) -> list[tuple[int, int]]:
    # equal shares of the ~N*ln(top) block operations, i.e. geometric bounds
    bounds = sorted({1, top + 1} | {max(1, round((top + 1) ** (i / parts))) for i in range(1, parts)})
    return list(zip(bounds[:-1], bounds[1:]))


def _raw_stats(p: Pattern, max_scales: Optional[int], workers: int):
    n = len(p)
    top = n // 2
    if top < 1:
        return {}, {}
    kernel = _backend.kernel
    prep = kernel.prepare(p._codes)
    bits: dict[int, float] = {}
    distinct: dict[int, int] = {}
    if max_scales is not None:
        for r in _sampled_scales(top, max_scales):
            bits[r], distinct[r] = kernel.scale_stats(prep, r)
        return bits, distinct
    if workers > 1:
        ranges = _chunks(top, workers * 4)
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda lh: kernel.spectrum_range(prep, *lh), ranges))
        for (lo, _), (b, d) in zip(ranges, parts):
            for i, r in enumerate(range(lo, lo + len(b))):
                bits[r], distinct[r] = b[i], d[i]
        return bits, distinct
    b, d = kernel.spectrum_range(prep, 1, top + 1)
    for r in range(1, top + 1):
        bits[r], distinct[r] = b[r - 1], d[r - 1]
    return bits, distinct


def spectrum(p, *, max_scales: Optional[int] = None, workers: int = 1) -> Spectrum:
    """Shannon information of the block sequence at every scale ``1..N//2``."""
    p = as_pattern(p)
    bits, _ = _raw_stats(p, max_scales, workers)
    return Spectrum(RAW, bits)


def _sms(m: int, r: int, k: int) -> float:
    if k < 2:
        return 0.0
    # min(k**r, m) by repeated multiplication that stops once m is reached
    cap = 1
    for _ in range(r):
        cap *= k
        if cap >= m:
            cap = m
            break
    return m * math.log2(cap)


def max_spectrum(p, k: Optional[int] = None, *, max_scales: Optional[int] = None) -> Spectrum:
    """Upper bound ``m log2(min(K^r, m))`` on the raw spectrum at each scale."""
    p = as_pattern(p)
    k = _alphabet_size(p, k)
    n = len(p)
    top = n // 2
    scales = range(1, top + 1) if max_scales is None else _sampled_scales(top, max_scales) if top else []
    return Spectrum(MAXIMAL, {r: _sms(n // r, r, k) for r in scales})


def _normalize(n: int, k: int, raw: dict[int, float], distinct: dict[int, int],
               shannon: float) -> dict[int, float]:
    i_max = max_information(n, k)
    out = {}
    for r, bits in raw.items():
        if distinct[r] > 1:
            sms = _sms(n // r, r, k)
            assert sms > 0, "two distinct blocks imply m >= 2"
            out[r] = bits / sms * i_max
        else:
            out[r] = r * (shannon / n)
    return out


def spectra(p, k: Optional[int] = None, *, max_scales: Optional[int] = None,
            workers: int = 1) -> SpectrumSet:
    """Raw, maximal and normalized spectra from a single pass over the scales."""
    p = as_pattern(p)
    k = _alphabet_size(p, k)
    n = len(p)
    raw, distinct = _raw_stats(p, max_scales, workers)
    shannon = shannon_information(p)
    maximal = {r: _sms(n // r, r, k) for r in raw}
    normalized = _normalize(n, k, raw, distinct, shannon) if raw else {}
    return SpectrumSet(Spectrum(RAW, raw), Spectrum(MAXIMAL, maximal),
                       Spectrum(NORMALIZED, normalized), distinct, n, k)


def normalized_spectrum(p, k: Optional[int] = None, *,
                        max_scales: Optional[int] = None) -> Spectrum:
    return spectra(p, k, max_scales=max_scales).normalized


def ssm_information(p, k: Optional[int] = None, *, max_scales: Optional[int] = None,
                    workers: int = 1) -> tuple[float, int]:
    """Minimum of the normalized spectrum and the smallest scale attaining it.

    Patterns shorter than 2 give ``(0.0, 0)``; a single-symbol pattern gives
    ``(0.0, 1)``. With ``max_scales`` only a subset of scales is scanned, so
    the result is an upper bound on the full minimum.
    """
    p = as_pattern(p)
    _alphabet_size(p, k)
    if len(p) < 2:
        return 0.0, 0
    if len(p.alphabet) < 2:
        return 0.0, 1
    norm = spectra(p, k, max_scales=max_scales, workers=workers).normalized
    r = norm.argmin()
    return norm[r], r


def _report(p: Pattern, k: int, shannon: float, ssm: float, argmin: int) -> MeasureReport:
    i_max = max_information(len(p), k) if k >= 1 else 0.0
    return MeasureReport(
        n=len(p),
        k=k,
        i_max=i_max,
        i_shannon=shannon,
        i_ssm=ssm,
        argmin_scale=argmin,
        i_shannon_rel=relative_information(shannon, i_max),
        i_ssm_rel=relative_information(ssm, i_max),
    )


def measure(p, k: Optional[int] = None, *, max_scales: Optional[int] = None,
            workers: int = 1) -> MeasureReport:
    p = as_pattern(p)
    if len(p) == 0:
        return _report(p, 0 if k is None else k, 0.0, 0.0, 0)
    k = _alphabet_size(p, k)
    ssm, argmin = ssm_information(p, k, max_scales=max_scales, workers=workers)
    return _report(p, k, shannon_information(p), ssm, argmin)


def report_from_spectra(p, s: SpectrumSet) -> MeasureReport:
    """Build a report from already computed spectra without rescanning."""
    p = as_pattern(p)
    if s.n == 0:
        return _report(p, s.k, 0.0, 0.0, 0)
    shannon = shannon_information(p)
    if s.n < 2:
        return _report(p, s.k, shannon, 0.0, 0)
    if len(p.alphabet) < 2:
        return _report(p, s.k, shannon, 0.0, 1)
    r = s.normalized.argmin()
    return _report(p, s.k, shannon, s.normalized[r], r)


@dataclass(frozen=True)
class ScaleTiming:
    scale: int
    blocks: int
    distinct: int
    seconds: float


def profile_spectrum(p, *, max_scales: Optional[int] = None) -> list[ScaleTiming]:
    """Per-scale block-operation counts and wall time of the raw spectrum."""
    p = as_pattern(p)
    n = len(p)
    top = n // 2
    if top < 1:
        return []
    kernel = _backend.kernel
    prep = kernel.prepare(p._codes)
    scales = range(1, top + 1) if max_scales is None else _sampled_scales(top, max_scales)
    out = []
    clock = time.perf_counter
    for r in scales:
        t0 = clock()
        _, d = kernel.scale_stats(prep, r)
        out.append(ScaleTiming(r, n // r, d, clock() - t0))
    return out

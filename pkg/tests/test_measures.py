import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import infometer as im
from infometer.corpus import fixture

import oracle

XA = "001101101010111001110010001001000100001000010000"
XB = "10" * 24
XC = "1111111100000000" * 3


def test_frequencies_examples():
    f = im.frequencies(im.Pattern("0011"))
    assert dict(f.counts) == {b"0": 2, b"1": 2} and f.total == 4
    f = im.frequencies(im.Pattern(XA))
    assert dict(f.counts) == {b"0": 30, b"1": 18}
    f = im.frequencies(im.Pattern(""))
    assert dict(f.counts) == {} and f.total == 0


def test_shannon_examples(kernel):
    assert im.shannon_information(XB) == 48.0
    assert round(im.shannon_information(XA), 2) == 45.81
    assert im.round_bits(im.shannon_information(XA)) == 46
    assert im.shannon_information("aaaa") == 0.0
    assert im.shannon_information("") == 0.0


def test_max_information():
    assert im.round_bits(im.max_information(101, 12)) == 362
    assert im.max_information(101, 12) == pytest.approx(362.081, abs=1e-3)
    assert im.max_information(48, 2) == 48.0
    assert im.max_information(5, 1) == 0.0
    assert im.max_information(0, 7) == 0.0
    with pytest.raises(ValueError):
        im.max_information(3, 0)


def test_relative_information():
    assert im.relative_information(2, 48) == pytest.approx(0.0417, abs=1e-4)
    assert im.relative_information(0, 0) == 0
    assert im.relative_information(48, 48) == 1.0


def test_partition():
    assert im.partition("abcdef", 2) == im.Pattern(["ab", "cd", "ef"])
    assert im.partition("abcde", 2) == im.Pattern(["ab", "cd"])
    assert [b.canonical() for b in im.blocks(XC, 16)] == [b"1111111100000000"] * 3
    assert im.partition("abc", 1) == im.Pattern("abc")
    for bad in (0, 7):
        with pytest.raises(im.InvalidScale):
            im.partition("abcdef", bad)


def test_partition_mixed_width_symbols_stay_distinct():
    p = im.Pattern([b"ab", b"c", b"a", b"bc"])
    assert len(im.partition(p, 2).alphabet) == 2


def test_spectrum_spot_values(kernel):
    s = im.spectrum(XC)
    assert s.scales() == list(range(1, 25))
    assert s[8] == 6.0 and s[4] == 12.0
    assert im.spectrum(XB)[2] == 0.0
    assert len(im.spectrum("a")) == 0 and len(im.spectrum("")) == 0


def test_max_spectrum():
    assert im.max_spectrum(XC)[4] == pytest.approx(12 * math.log2(12))
    assert im.max_spectrum("01" * 24)[1] == 48.0
    for n in (4, 5, 17, 48):
        p = "01" * (n // 2) + "0" * (n % 2)
        assert im.max_spectrum(p)[n // 2] == 2.0


def test_max_spectrum_large_scales_do_not_overflow():
    p = im.Pattern(str(i % 7) for i in range(5000))
    s = im.max_spectrum(p, k=1000)
    m = 5000 // 2500
    assert s[2500] == m * math.log2(m)


def test_normalized_spectrum(kernel):
    assert im.normalized_spectrum(XC)[4] == pytest.approx(13.39, abs=0.01)
    assert im.normalized_spectrum(XB)[2] == 2.0
    assert set(im.normalized_spectrum("a" * 20).values.values()) == {0.0}


def test_ssm_examples(kernel):
    assert im.ssm_information(XB) == (2.0, 2)
    bits, r = im.ssm_information(XC)
    assert r == 4 and bits == pytest.approx(13.389261391254234, abs=1e-12)
    assert im.ssm_information("0000") == (0.0, 1)
    assert im.ssm_information("0") == (0.0, 0)


def test_measure_examples(kernel):
    r = im.measure(fixture("X_A")).rounded()
    assert (r["n"], r["k"], r["i_max"], r["i_shannon"], r["i_ssm"]) == (48, 2, 48, 46, 40)
    r = im.measure(fixture("X_E")).rounded()
    assert (r["n"], r["k"], r["i_max"], r["i_shannon"], r["i_ssm"]) == (101, 13, 374, 347, 116)
    empty = im.measure("")
    assert (empty.n, empty.i_max, empty.i_shannon, empty.i_ssm, empty.i_ssm_rel) == (0, 0, 0, 0, 0)


def test_declared_alphabet():
    r = im.measure(XA, k=4)
    assert r.k == 4 and r.i_max == 96.0
    assert r.i_ssm <= r.i_shannon <= r.i_max
    with pytest.raises(ValueError):
        im.measure("abc", k=2)


def test_tie_break_is_smallest_scale():
    # r=2 and r=4 both reach the single-block branch; r=2 must win
    assert im.ssm_information("01" * 8)[1] == 2


def test_max_scales_subsample_upper_bounds_full_minimum(kernel):
    rng = random.Random(5)
    p = "".join(rng.choice("01") for _ in range(600))
    full, _ = im.ssm_information(p)
    capped, _ = im.ssm_information(p, max_scales=20)
    assert len(im.spectrum(p, max_scales=20)) <= 21
    assert capped >= full


def test_workers_give_identical_spectra(kernel):
    rng = random.Random(9)
    p = im.Pattern(rng.choice("abc") for _ in range(3000))
    assert im.spectra(p, workers=4) == im.spectra(p)


@pytest.mark.parametrize("seed", range(5))
def test_matches_oracle_on_random_text(kernel, seed):
    rng = random.Random(seed)
    s = "".join(rng.choice("abcd"[: rng.randint(2, 4)]) for _ in range(rng.randint(2, 60)))
    sp = im.spectra(s)
    for r in sp.raw.scales():
        assert sp.raw[r] == pytest.approx(oracle.sp(s, r), abs=1e-9)
        assert sp.maximal[r] == pytest.approx(oracle.sms(s, r), abs=1e-9)
        assert sp.normalized[r] == pytest.approx(oracle.sns(s, r), abs=1e-9)
    assert im.ssm_information(s)[0] == pytest.approx(oracle.ssm(s), abs=1e-9)


patterns = st.text(alphabet="abcde", min_size=0, max_size=80)


@settings(max_examples=200, deadline=None)
@given(patterns)
def test_frequency_conservation(s):
    f = im.frequencies(im.Pattern(s))
    assert sum(f.counts.values()) == len(s) == f.total
    assert all(0 < f.p(x) <= 1 for x in f.counts)


@settings(max_examples=200, deadline=None)
@given(patterns, st.randoms(use_true_random=False))
def test_permutation_degeneracy(s, rnd):
    shuffled = list(s)
    rnd.shuffle(shuffled)
    assert im.shannon_information("".join(shuffled)) == pytest.approx(im.shannon_information(s), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(patterns)
def test_reversal(s):
    p = im.Pattern(s)
    assert im.shannon_information(p.reversed()) == im.shannon_information(p)
    fwd, back = im.spectrum(p), im.spectrum(p.reversed())
    for r in fwd.scales():
        if len(s) % r == 0:
            assert back[r] == fwd[r]


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="abcdefgh", min_size=2, max_size=80))
def test_ordering_chain_and_raw_below_maximal(s):
    sp = im.spectra(s)
    r = im.measure(s)
    assert r.i_ssm <= r.i_shannon + 1e-9 <= r.i_max + 2e-9
    for scale, d in sp.distinct.items():
        if d > 1:
            assert sp.raw[scale] <= sp.maximal[scale] + 1e-9


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=12), st.integers(2, 5))
def test_repetition_bound(period, times):
    k = len(set(period))
    bits, _ = im.ssm_information(period * times)
    assert bits <= len(period) * math.log2(k) + 1e-9 if k > 1 else bits == 0


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=30), st.text(alphabet="xyz", min_size=1, max_size=30))
def test_superadditive_shannon_for_disjoint_alphabets(x, y):
    assert im.shannon_information(x + y) > im.shannon_information(x) + im.shannon_information(y)

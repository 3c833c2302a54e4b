"""Literal transcription of the measures, sharing no code with the package.

Deliberately slow: per-position log terms, string slicing for blocks and
K**r materialised as a Python integer.
"""

import math


def shannon(seq):
    n = len(seq)
    total = 0.0
    for x in seq:
        p = seq.count(x) / n
        total += math.log2(1 / p)
    return total


def partition(seq, r):
    m = len(seq) // r
    return [tuple(seq[j * r:(j + 1) * r]) for j in range(m)]


def i_max(seq, k=None):
    k = len(set(seq)) if k is None else k
    return len(seq) * math.log2(k) if len(seq) and k > 1 else 0.0


def sp(seq, r):
    return shannon(partition(seq, r))


def sms(seq, r, k=None):
    k = len(set(seq)) if k is None else k
    m = len(seq) // r
    return m * math.log2(min(k ** r, m))


def sns(seq, r, k=None):
    n = len(seq)
    if len(set(partition(seq, r))) > 1:
        return sp(seq, r) / sms(seq, r, k) * i_max(seq, k)
    return r * sp(seq, 1) / n


def ssm(seq, k=None):
    if len(seq) < 2 or len(set(seq)) < 2:
        return 0.0
    return min(sns(seq, r, k) for r in range(1, len(seq) // 2 + 1))

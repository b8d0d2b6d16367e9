"""Ground-truth counts: exhaustive word enumeration and the RSK tableau sum."""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

from .gessel import CountResult, Method, _check_params, total_words
from .symfunc import f_lambda, kostka_g, partitions_of

__all__ = [
    "DEFAULT_CAP",
    "EnumerationTooLarge",
    "lis_length",
    "multiset_words",
    "lis_distribution",
    "count_via_brute",
    "count_via_rsk",
]

DEFAULT_CAP = 10**8


class EnumerationTooLarge(RuntimeError):
    """The brute-force enumeration would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(
            f"brute-force enumeration needs {required} words, above the cap of {cap}"
        )
        self.required = required
        self.cap = cap


def lis_length(word: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tails: list[int] = []
    for x in word:
        # bisect_left: an equal letter replaces, never extends, so the chain stays strict
        i = bisect_left(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


def multiset_words(r: int, n: int) -> Iterator[tuple[int, ...]]:
    """Every arrangement of 1^r 2^r ... n^r, in lexicographic order."""
    word = [letter for letter in range(1, n + 1) for _ in range(r)]
    size = len(word)
    while True:
        yield tuple(word)
        # next permutation: rightmost ascent, swap with the rightmost larger letter, reverse tail
        i = size - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return
        j = size - 1
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1 :] = reversed(word[i + 1 :])


@lru_cache(maxsize=None)
def lis_distribution(r: int, n: int) -> dict[int, int]:
    """Histogram {LIS length: number of words} over all words with content 1^r..n^r."""
    return dict(Counter(lis_length(w) for w in multiset_words(r, n)))


def count_via_brute(d: int, r: int, n: int, cap: int = DEFAULT_CAP) -> CountResult:
    _check_params(d, r, n)
    size = total_words(r, n)
    if size > cap:
        raise EnumerationTooLarge(size, cap)
    value = sum(c for length, c in lis_distribution(r, n).items() if length <= d)
    return CountResult(d + 1, r, n, value, Method.BRUTE)


def count_via_rsk(d: int, r: int, n: int) -> CountResult:
    """Sum of f_lambda * K_{lambda,(r^n)} over |lambda| = rn with at most d rows."""
    _check_params(d, r, n)
    value = sum(f_lambda(lam) * kostka_g(lam, r, n) for lam in partitions_of(r * n, d))
    return CountResult(d + 1, r, n, value, Method.RSK)

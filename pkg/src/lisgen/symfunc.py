"""Partitions and symmetric functions in the normalized power sums t_j = p_j / j.

Everything is truncated to the first r variables: t_j = 0 for j > r.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .polyring import TPoly, det_laplace, factorial, gaussian_pairing

__all__ = [
    "Partition",
    "CycleTypeData",
    "partitions_of",
    "complete_homogeneous",
    "cycle_index",
    "cycle_index_power",
    "schur",
    "f_lambda",
    "kostka_g",
    "kostka_ssyt_oracle",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def weight(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


@dataclass(frozen=True)
class CycleTypeData:
    partition: Partition
    z_mu: int
    conjugacy_class_size: int

    @classmethod
    def of(cls, mu: Sequence[int]) -> "CycleTypeData":
        mu = Partition(mu)
        z = 1
        for part, mult in mu.multiplicities().items():
            z *= part**mult * factorial(mult)
        size, rem = divmod(factorial(mu.weight()), z)
        assert rem == 0
        return cls(mu, z, size)


def partitions_of(weight: int, max_length: int) -> list[Partition]:
    """All partitions of ``weight`` into at most ``max_length`` parts.

    Ordered decreasing lexicographically, e.g. (4), (3, 1), (2, 2), ...
    """
    if weight < 0 or max_length < 0:
        raise ValueError("weight and max_length must be nonnegative")
    return [Partition(p) for p in _partitions(weight, max_length, weight)]


def _partitions(weight: int, max_length: int, largest: int) -> Iterator[tuple[int, ...]]:
    if weight == 0:
        yield ()
        return
    if max_length == 0:
        return
    for first in range(min(weight, largest), 0, -1):
        # the remaining parts cannot absorb more than first * (max_length - 1)
        if first * max_length < weight:
            break
        for rest in _partitions(weight - first, max_length - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def complete_homogeneous(k: int, r: int) -> TPoly:
    """h_k(t_1, ..., t_r, 0, 0, ...), the z^k coefficient of exp(sum t_j z^j)."""
    if r < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        return TPoly.zero(r)
    if k == 0:
        return TPoly.one(r)
    # k h_k = sum_j j t_j h_{k-j}, from differentiating the generating function
    acc = TPoly.zero(r)
    for j in range(1, min(k, r) + 1):
        acc = acc + (TPoly.var(j, r) * complete_homogeneous(k - j, r)).scale(j)
    return acc.scale(Fraction(1, k))


@lru_cache(maxsize=None)
def cycle_index(r: int) -> TPoly:
    """Cycle index of S_r: sum over cycle types mu of |C_mu|/r! * prod t_{mu_i}."""
    if r < 1:
        raise ValueError("r must be positive")
    terms = {}
    for mu in partitions_of(r, r):
        exps = [0] * r
        for part in mu:
            exps[part - 1] += 1
        data = CycleTypeData.of(mu)
        terms[tuple(exps)] = Fraction(data.conjugacy_class_size, factorial(r))
    return TPoly(terms, r)


@lru_cache(maxsize=None)
def cycle_index_power(r: int, n: int) -> TPoly:
    return cycle_index(r).power(n)


@lru_cache(maxsize=4096)
def schur(lam: Sequence[int], r: int) -> TPoly:
    """Schur polynomial via the Jacobi-Trudi determinant det(h_{lam_i - i + j})."""
    lam = Partition(lam)
    ell = len(lam)
    if ell == 0:
        return TPoly.one(r)
    matrix = [
        [complete_homogeneous(lam[i] - i + j, r) for j in range(ell)] for i in range(ell)
    ]
    # every minor in the row expansion is homogeneous, so nothing needs pruning
    return det_laplace(matrix, TPoly.one(r))


def f_lambda(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape lam (hook-length formula)."""
    lam = Partition(lam)
    conj = lam.conjugate()
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    count, rem = divmod(factorial(lam.weight()), hooks)
    assert rem == 0
    return count


def kostka_g(lam: Sequence[int], r: int, n: int) -> int:
    """Kostka number K_{lam, (r^n)} as the Gaussian pairing <s_lam, Cyc_r^n>."""
    lam = Partition(lam)
    if lam.weight() != r * n:
        raise ValueError(f"|lambda| = {lam.weight()} but r*n = {r * n}")
    value = gaussian_pairing(schur(lam, r), cycle_index_power(r, n))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Kostka pairing {value} for {lam}, r={r}")
    return int(value)


def kostka_ssyt_oracle(lam: Sequence[int], content: Sequence[int]) -> int:
    """Count semistandard tableaux of shape lam and the given content by backtracking."""
    lam = Partition(lam)
    content = list(content)
    if sum(content) != lam.weight():
        raise ValueError("content must sum to |lambda|")
    if any(c < 0 for c in content):
        raise ValueError("content entries must be nonnegative")
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    grid = [[0] * row for row in lam]
    remaining = content[:]
    nletters = len(content)

    def fill(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        low = 0
        if j > 0:
            low = grid[i][j - 1]
        if i > 0:
            low = max(low, grid[i - 1][j] + 1)
        total = 0
        for letter in range(low, nletters):
            if remaining[letter]:
                remaining[letter] -= 1
                grid[i][j] = letter
                total += fill(pos + 1)
                remaining[letter] += 1
        return total

    return fill(0)

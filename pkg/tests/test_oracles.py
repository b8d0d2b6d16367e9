import random
from itertools import combinations, permutations, product
from math import factorial

import pytest

from lisgen.gessel import Method
from lisgen.oracles import (
    EnumerationTooLarge,
    count_via_brute,
    count_via_rsk,
    lis_length,
    multiset_words,
)
from lisgen.symfunc import f_lambda, kostka_g, partitions_of


def lis_exhaustive(word):
    for k in range(len(word), 0, -1):
        for sub in combinations(word, k):
            if all(a < b for a, b in zip(sub, sub[1:])):
                return k
    return 0


def lds_length(word):
    return lis_length([-x for x in word])


class TestLis:
    @pytest.mark.parametrize(
        "word,expected", [((1, 2, 1, 2), 2), ((2, 2, 1, 1), 1), ((1, 3, 2, 3, 1, 2), 3), ((), 0)]
    )
    def test_examples(self, word, expected):
        assert lis_length(word) == expected == lis_exhaustive(word)

    @pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 2), (6, 1), (1, 6)])
    def test_all_small_words(self, r, n):
        for w in multiset_words(r, n):
            assert lis_length(w) == lis_exhaustive(w)

    def test_random_words(self):
        rng = random.Random(3)
        for _ in range(400):
            word = [rng.randint(1, 5) for _ in range(rng.randint(0, 10))]
            assert lis_length(word) == lis_exhaustive(word)

    def test_reversal_symmetry(self):
        rng = random.Random(11)
        for _ in range(300):
            word = [rng.randint(1, 4) for _ in range(rng.randint(0, 12))]
            assert lis_length(word) == lds_length(word[::-1])


class TestMultisetWords:
    @pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 2), (2, 2), (1, 0), (3, 1)])
    def test_each_arrangement_once_in_order(self, r, n):
        words = list(multiset_words(r, n))
        base = [x for x in range(1, n + 1) for _ in range(r)]
        assert words == sorted(set(permutations(base)))
        assert len(words) == factorial(r * n) // factorial(r) ** n


class TestBrute:
    @pytest.mark.parametrize(
        "d,r,n,expected", [(2, 2, 2, 6), (1, 3, 2, 1), (2, 2, 3, 43), (3, 1, 0, 1)]
    )
    def test_examples(self, d, r, n, expected):
        res = count_via_brute(d, r, n)
        assert res.value == expected
        assert res.method is Method.BRUTE

    def test_cap(self):
        with pytest.raises(EnumerationTooLarge) as info:
            count_via_brute(2, 2, 4, cap=100)
        assert info.value.required == 2520
        assert "2520" in str(info.value)

    def test_filter_of_all_words(self):
        # independent route: filter the raw product space
        for w_d in (1, 2, 3):
            count = sum(
                1
                for w in product(range(1, 4), repeat=6)
                if sorted(w) == [1, 1, 2, 2, 3, 3] and lis_exhaustive(w) <= w_d
            )
            assert count_via_brute(w_d, 2, 3).value == count


class TestRsk:
    @pytest.mark.parametrize("d,r,n,expected", [(2, 3, 3, 374), (3, 4, 3, 34650), (2, 2, 0, 1)])
    def test_examples(self, d, r, n, expected):
        res = count_via_rsk(d, r, n)
        assert res.value == expected
        assert res.method is Method.RSK

    @pytest.mark.parametrize("d", range(1, 5))
    @pytest.mark.parametrize("n", range(0, 8))
    def test_r1_sum_of_squares(self, d, n):
        lams = partitions_of(n, d)
        assert all(kostka_g(lam, 1, n) == f_lambda(lam) for lam in lams)
        assert count_via_rsk(d, 1, n).value == sum(f_lambda(lam) ** 2 for lam in lams)

    @pytest.mark.parametrize(
        "d,r,n",
        [(d, r, n) for d in range(1, 5) for r in range(1, 5) for n in range(0, 11)
         if r * n <= 10 and factorial(r * n) // factorial(r) ** n <= 10**6],
    )
    def test_agrees_with_brute(self, d, r, n):
        assert count_via_rsk(d, r, n).value == count_via_brute(d, r, n).value

"""Counting words with bounded increasing subsequences through Toeplitz determinants.

The d x d Toeplitz determinant with symbol exp(v/z + sum_j t_j z^j) is expanded
as a series in v truncated at degree rN.  Its v^{rn} coefficient F_{rn}(t) paired
against Cyc_r(t)^n gives A_{d+1,r}(n) = (rn)! <F_{rn}, Cyc_r^n>.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .polyring import (
    TPoly,
    VSeries,
    determinant,
    factorial,
    gaussian_pairing,
    vseries_coefficient,
)
from .symfunc import complete_homogeneous, cycle_index, cycle_index_power

__all__ = [
    "Method",
    "CountResult",
    "ToeplitzTruncation",
    "toeplitz_entry",
    "toeplitz_det_truncated",
    "gessel_row",
    "count_via_gessel",
    "count_via_gessel_tr_eliminated",
    "gessel_r1_series",
    "count_via_gessel_r2",
    "total_words",
    "prob_lis_le",
    "poissonized_partial_sum",
]


class Method(str, enum.Enum):
    GESSEL = "gessel"
    GESSEL_TR = "gessel-tr"
    GESSEL_R2 = "gessel-r2"
    RSK = "rsk"
    BRUTE = "brute"


@dataclass(frozen=True)
class CountResult:
    """A_{d+1,r}(n) together with how it was obtained."""

    d_plus_one: int
    r: int
    n: int
    value: int
    method: Method

    @property
    def d(self) -> int:
        return self.d_plus_one - 1

    def __post_init__(self):
        if self.value < 1:
            raise ArithmeticError(
                f"count A_{{{self.d_plus_one},{self.r}}}({self.n}) = {self.value} is not positive"
            )


def _check_params(d: int, r: int, n: int) -> None:
    if d < 1:
        raise ValueError("d must be at least 1")
    if r < 1:
        raise ValueError("r must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")


def toeplitz_entry(m: int, r: int, N: int, max_weight: int | None = None) -> VSeries:
    """phi_m truncated at v^{rN}: coefficient of v^k is h_{k+m}(t_1..t_r) / k!."""
    if r < 1 or N < 0:
        raise ValueError("need r >= 1 and N >= 0")
    order = r * N
    coeffs = {}
    for k in range(max(0, -m), order + 1):
        if max_weight is not None and k + m > max_weight:
            break
        coeffs[k] = complete_homogeneous(k + m, r).scale(Fraction(1, factorial(k)))
    return VSeries(coeffs, order, r, max_weight)


@dataclass
class ToeplitzTruncation:
    d: int
    r: int
    N: int
    entries: dict[int, VSeries] = field(default_factory=dict)

    @classmethod
    def build(cls, d: int, r: int, N: int, prune: bool = True) -> "ToeplitzTruncation":
        cap = r * N if prune else None
        entries = {m: toeplitz_entry(m, r, N, cap) for m in range(-(d - 1), d)}
        return cls(d, r, N, entries)

    def matrix(self) -> list[list[VSeries]]:
        return [[self.entries[i - j] for j in range(self.d)] for i in range(self.d)]


def toeplitz_det_truncated(
    d: int, r: int, N: int, algorithm: str = "auto", prune: bool = True
) -> VSeries:
    """det(phi_{i-j}) in the series ring truncated at v^{rN}.

    With ``prune`` (the default) t-monomials of weighted degree above rN are
    dropped as they appear; they pair to zero against Cyc_r^n for n <= N.
    """
    if d < 1 or r < 1 or N < 0:
        raise ValueError("need d >= 1, r >= 1, N >= 0")
    trunc = ToeplitzTruncation.build(d, r, N, prune)
    one = VSeries.one(r * N, r, r * N if prune else None)
    return determinant(trunc.matrix(), one, algorithm)


def _pair_with_cycle_index(F: TPoly, r: int, n: int) -> int:
    value = factorial(r * n) * gaussian_pairing(F, cycle_index_power(r, n))
    if value.denominator != 1:
        raise ArithmeticError(f"pairing produced non-integer {value}")
    if value < 0:
        raise ArithmeticError(f"pairing produced negative count {value}")
    return int(value)


@lru_cache(maxsize=64)
def gessel_row(d: int, r: int, N: int, algorithm: str = "auto") -> tuple[int, ...]:
    """A_{d+1,r}(n) for n = 0..N from a single determinant expansion."""
    _check_params(d, r, N)
    det = toeplitz_det_truncated(d, r, N, algorithm)
    return tuple(
        _pair_with_cycle_index(vseries_coefficient(det, r * n), r, n) for n in range(N + 1)
    )


def count_via_gessel(d: int, r: int, n: int, algorithm: str = "auto") -> CountResult:
    _check_params(d, r, n)
    det = toeplitz_det_truncated(d, r, n, algorithm)
    value = _pair_with_cycle_index(vseries_coefficient(det, r * n), r, n)
    return CountResult(d + 1, r, n, value, Method.GESSEL)


@lru_cache(maxsize=None)
def _reduced_cycle_power(r: int, k: int) -> TPoly:
    # (Cyc_r - t_r / r)^k as a polynomial in t_1..t_{r-1}
    base = TPoly(
        {e[:-1]: c for e, c in cycle_index(r).terms.items() if e[-1] == 0}, r - 1
    )
    return base.power(k)


def count_via_gessel_tr_eliminated(d: int, r: int, n: int) -> CountResult:
    """Same count with the t_r pairing replaced by the substitution t_r -> vbar^r / r.

    Writing F_{rn} = sum_a F_a(t_1..t_{r-1}) t_r^a, the pairing against
    exp(vbar^r Cyc_r) picks up (1/r)^a vbar^{ra} from t_r^a, leaving
    <F_a, C^{n-a}> / (n-a)! where C = Cyc_r - t_r / r.
    """
    _check_params(d, r, n)
    det = toeplitz_det_truncated(d, r, n)
    F = vseries_coefficient(det, r * n)
    by_tr: dict[int, dict] = {}
    for exps, c in F.terms.items():
        by_tr.setdefault(exps[-1], {})[exps[:-1]] = c
    total = Fraction(0)
    for a, terms in by_tr.items():
        if a > n:
            continue
        Fa = TPoly(terms, r - 1)
        total += (
            gaussian_pairing(Fa, _reduced_cycle_power(r, n - a))
            / (r**a * factorial(n - a))
        )
    value = total * factorial(r * n) * factorial(n)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"t_r elimination produced invalid count {value}")
    return CountResult(d + 1, r, n, int(value), Method.GESSEL_TR)


def gessel_r1_series(d: int, N: int) -> list[Fraction]:
    """Coefficients of x^{2n}, n = 0..N, in det(I_{|i-j|}(2x)); equal A_{d+1,1}(n) / (n!)^2."""
    if d < 1 or N < 0:
        raise ValueError("need d >= 1 and N >= 0")
    order = 2 * N

    def bessel(m: int) -> VSeries:
        # I_m(2x) = sum_k x^{2k+m} / (k! (k+m)!)
        coeffs = {}
        k = 0
        while 2 * k + m <= order:
            coeffs[2 * k + m] = TPoly.constant(
                Fraction(1, factorial(k) * factorial(k + m)), 0
            )
            k += 1
        return VSeries(coeffs, order, 0)

    entries = {m: bessel(m) for m in range(d)}
    matrix = [[entries[abs(i - j)] for j in range(d)] for i in range(d)]
    det = determinant(matrix, VSeries.one(order, 0))
    return [vseries_coefficient(det, 2 * n).coefficient(()) for n in range(N + 1)]


def _shifted_hermite(j: int) -> TPoly:
    # [z^j] exp(x z + z^2 / 2) as a polynomial in x
    if j < 0:
        return TPoly.zero(1)
    return TPoly(
        {
            (j - 2 * b,): Fraction(1, factorial(j - 2 * b) * 2**b * factorial(b))
            for b in range(j // 2 + 1)
        },
        1,
    )


def _gaussian_moment(m: int) -> int:
    # E[X^m] for a standard normal X
    if m % 2:
        return 0
    result = 1
    for k in range(m - 1, 0, -2):
        result *= k
    return result


def count_via_gessel_r2(d: int, n: int) -> CountResult:
    """r = 2 through the one-variable symbol exp(v/z + x z + z^2 / 2) and Gaussian moments in x."""
    _check_params(d, 2, n)
    order = 2 * n

    def entry(m: int) -> VSeries:
        coeffs = {
            k: _shifted_hermite(k + m).scale(Fraction(1, factorial(k)))
            for k in range(max(0, -m), order + 1)
        }
        return VSeries(coeffs, order, 1, order)

    entries = {m: entry(m) for m in range(-(d - 1), d)}
    matrix = [[entries[i - j] for j in range(d)] for i in range(d)]
    det = determinant(matrix, VSeries.one(order, 1, order))
    P = vseries_coefficient(det, order)
    expectation = sum(
        (c * _gaussian_moment(e[0]) for e, c in P.terms.items()), Fraction(0)
    )
    value = expectation * factorial(order) * factorial(n)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"r=2 quadrature produced invalid count {value}")
    return CountResult(d + 1, 2, n, int(value), Method.GESSEL_R2)


def total_words(r: int, n: int) -> int:
    """(rn)! / (r!)^n, the number of words with each of n letters used r times."""
    return factorial(r * n) // factorial(r) ** n


def prob_lis_le(d: int, r: int, n: int) -> Fraction:
    """Probability that a uniform random word has longest increasing subsequence <= d."""
    _check_params(d, r, n)
    return Fraction(gessel_row(d, r, n)[n], total_words(r, n))


def poissonized_partial_sum(d: int, r: int, theta, N: int) -> Fraction:
    """sum_{n<=N} Prob(L <= d) theta^n / n!, without the exp(-theta) factor."""
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be nonnegative")
    _check_params(d, r, N)
    row = gessel_row(d, r, N)
    return sum(
        (
            Fraction(row[n], total_words(r, n)) * theta**n / factorial(n)
            for n in range(N + 1)
        ),
        Fraction(0),
    )

"""Exact sparse polynomials in t_1..t_r and truncated series in a book-keeping variable v.

Coefficients are ``fractions.Fraction``.  The variable t_j carries weight j, so a
monomial t^k has weighted degree sum(j * k_j).  Monomials are orthogonal under the
Gaussian pairing with <t^k, t^k> = prod(k_j!).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, TypeVar

Rational = Fraction
Exponent = tuple[int, ...]

__all__ = [
    "Rational",
    "TPoly",
    "VSeries",
    "tpoly_add",
    "tpoly_mul",
    "gaussian_pairing",
    "vseries_mul",
    "vseries_coefficient",
    "weighted_degree",
    "det_laplace",
    "det_berkowitz",
    "determinant",
]


class VariableMismatch(ValueError):
    """Raised when polynomials over different variable counts are combined."""


@lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    return 1 if k < 2 else k * _factorial(k - 1)


def factorial(k: int) -> int:
    # warm the cache bottom-up so deep exponents never hit the recursion limit
    if k > 256 and _factorial.cache_info().currsize < k:
        for i in range(0, k, 256):
            _factorial(i)
    return _factorial(k)


def weighted_degree(exps: Exponent) -> int:
    return sum(j * e for j, e in enumerate(exps, start=1))


def _check_nvars(a: "TPoly", b: "TPoly") -> None:
    if a.nvars != b.nvars:
        raise VariableMismatch(f"variable count mismatch: {a.nvars} vs {b.nvars}")


def _grlex_key(exps: Exponent) -> tuple:
    return (weighted_degree(exps), exps)


class TPoly:
    """Sparse polynomial in t_1..t_nvars with rational coefficients.

    Treat instances as immutable; the term map is never modified after
    construction.  Zero coefficients are dropped, so equality of term maps is
    equality of polynomials.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, nvars: int = 1):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise VariableMismatch(
                        f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if c:
                    clean[exps] = clean.get(exps, 0) + Fraction(c)
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], nvars: int) -> "TPoly":
        # trusted constructor: caller guarantees canonical form
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "TPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "TPoly":
        c = Fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "TPoly":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, j: int, nvars: int) -> "TPoly":
        """The variable t_j (1-based)."""
        if not 1 <= j <= nvars:
            raise ValueError(f"t_{j} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[j - 1] = 1
        return cls._raw({tuple(exps): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "TPoly":
        return cls({tuple(exps): coeff}, len(exps))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order (weighted degree, then exponents)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def weights(self) -> set[int]:
        return {weighted_degree(e) for e in self.terms}

    def max_weight(self) -> int:
        return max((weighted_degree(e) for e in self.terms), default=-1)

    def is_homogeneous(self, weight: int | None = None) -> bool:
        w = self.weights()
        if not w:
            return True
        if weight is None:
            return len(w) == 1
        return w == {weight}

    def truncate_weight(self, max_weight: int) -> "TPoly":
        return TPoly._raw(
            {e: c for e, c in self.terms.items() if weighted_degree(e) <= max_weight},
            self.nvars,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, TPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == TPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            other = TPoly.constant(other, self.nvars)
        if not isinstance(other, TPoly):
            return NotImplemented
        return tpoly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            other = TPoly.constant(other, self.nvars)
        if not isinstance(other, TPoly):
            return NotImplemented
        return tpoly_add(self, -other)

    def __rsub__(self, other) -> "TPoly":
        return (-self) + other

    def scale(self, c) -> "TPoly":
        c = Fraction(c)
        if not c:
            return TPoly.zero(self.nvars)
        return TPoly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        return tpoly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TPoly":
        return self.power(k)

    def power(self, k: int, max_weight: int | None = None) -> "TPoly":
        if k < 0:
            raise ValueError("negative power")
        result = TPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = tpoly_mul(result, base, max_weight)
            k >>= 1
            if k:
                base = tpoly_mul(base, base, max_weight)
        return result

    def substitute_scaled(self, factors: Sequence) -> "TPoly":
        """Replace t_j by factors[j-1] * t_j."""
        if len(factors) != self.nvars:
            raise VariableMismatch("one scale factor per variable is required")
        fs = [Fraction(f) for f in factors]
        out: dict[Exponent, Fraction] = {}
        for exps, c in self.terms.items():
            for f, e in zip(fs, exps):
                if e:
                    c *= f**e
            if c:
                out[exps] = c
        return TPoly._raw(out, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatch("point dimension differs from variable count")
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def embed(self, nvars: int) -> "TPoly":
        """View this polynomial in more variables (the extra ones are absent)."""
        if nvars < self.nvars:
            raise VariableMismatch("cannot embed into fewer variables")
        pad = (0,) * (nvars - self.nvars)
        return TPoly._raw({e + pad: c for e, c in self.terms.items()}, nvars)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                f"t{j}" if e == 1 else f"t{j}^{e}" for j, e in enumerate(exps, 1) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def tpoly_add(a: TPoly, b: TPoly) -> TPoly:
    _check_nvars(a, b)
    if len(a.terms) < len(b.terms):
        a, b = b, a
    out = dict(a.terms)
    for exps, c in b.terms.items():
        s = out.get(exps)
        if s is None:
            out[exps] = c
        else:
            s += c
            if s:
                out[exps] = s
            else:
                del out[exps]
    return TPoly._raw(out, a.nvars)


def tpoly_mul(a: TPoly, b: TPoly, max_weight: int | None = None) -> TPoly:
    """Product of two polynomials; terms of weighted degree > max_weight are dropped."""
    _check_nvars(a, b)
    if not a.terms or not b.terms:
        return TPoly.zero(a.nvars)
    n = a.nvars
    bt = [(e, c, weighted_degree(e)) for e, c in b.terms.items()]
    if max_weight is not None:
        bt.sort(key=lambda x: x[2])
    out: dict[Exponent, Fraction] = {}
    get = out.get
    for ea, ca in a.terms.items():
        if max_weight is not None:
            room = max_weight - weighted_degree(ea)
            if room < 0:
                continue
        for eb, cb, wb in bt:
            if max_weight is not None and wb > room:
                break
            e = tuple(ea[i] + eb[i] for i in range(n)) if n != 1 else (ea[0] + eb[0],)
            s = get(e)
            out[e] = ca * cb if s is None else s + ca * cb
    return TPoly._raw({e: c for e, c in out.items() if c}, n)


def gaussian_pairing(p: TPoly, q: TPoly) -> Fraction:
    """Sum over shared monomials t^k of p_k * q_k * prod(k_j!)."""
    _check_nvars(p, q)
    if len(p.terms) > len(q.terms):
        p, q = q, p
    total = Fraction(0)
    for exps, c in p.terms.items():
        other = q.terms.get(exps)
        if other is None:
            continue
        norm = 1
        for e in exps:
            if e > 1:
                norm *= factorial(e)
        total += c * other * norm
    return total


class VSeries:
    """Truncated power series in v with TPoly coefficients.

    Degrees above ``order`` are discarded.  When ``max_weight`` is set, any
    t-monomial of weighted degree above it is discarded as well; products keep
    both bounds.
    """

    __slots__ = ("coeffs", "order", "nvars", "max_weight")

    def __init__(
        self,
        coeffs: Mapping[int, TPoly] | None,
        order: int,
        nvars: int,
        max_weight: int | None = None,
    ):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.order = order
        self.nvars = nvars
        self.max_weight = max_weight
        clean: dict[int, TPoly] = {}
        for k, p in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative v-degree")
            if p.nvars != nvars:
                raise VariableMismatch("coefficient variable count differs from series")
            if k > order:
                continue
            if max_weight is not None:
                p = p.truncate_weight(max_weight)
            if p:
                clean[k] = p
        self.coeffs = clean

    @classmethod
    def _raw(cls, coeffs, order, nvars, max_weight) -> "VSeries":
        s = object.__new__(cls)
        s.coeffs = coeffs
        s.order = order
        s.nvars = nvars
        s.max_weight = max_weight
        return s

    @classmethod
    def zero(cls, order: int, nvars: int, max_weight: int | None = None) -> "VSeries":
        return cls._raw({}, order, nvars, max_weight)

    @classmethod
    def one(cls, order: int, nvars: int, max_weight: int | None = None) -> "VSeries":
        return cls._raw({0: TPoly.one(nvars)}, order, nvars, max_weight)

    def coefficient(self, m: int) -> TPoly:
        return vseries_coefficient(self, m)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def _combine_bounds(self, other: "VSeries") -> tuple[int, int | None]:
        if self.nvars != other.nvars:
            raise VariableMismatch("series over different variable counts")
        order = min(self.order, other.order)
        if self.max_weight is None:
            mw = other.max_weight
        elif other.max_weight is None:
            mw = self.max_weight
        else:
            mw = min(self.max_weight, other.max_weight)
        return order, mw

    def __add__(self, other: "VSeries") -> "VSeries":
        order, mw = self._combine_bounds(other)
        out = {k: p for k, p in self.coeffs.items() if k <= order}
        for k, p in other.coeffs.items():
            if k > order:
                continue
            s = out.get(k)
            s = p if s is None else tpoly_add(s, p)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return VSeries._raw(out, order, self.nvars, mw)

    def __neg__(self) -> "VSeries":
        return VSeries._raw(
            {k: -p for k, p in self.coeffs.items()}, self.order, self.nvars, self.max_weight
        )

    def __sub__(self, other: "VSeries") -> "VSeries":
        return self + (-other)

    def __mul__(self, other) -> "VSeries":
        if isinstance(other, (int, Fraction)):
            return VSeries._raw(
                {k: p.scale(other) for k, p in self.coeffs.items()} if other else {},
                self.order,
                self.nvars,
                self.max_weight,
            )
        if not isinstance(other, VSeries):
            return NotImplemented
        order, mw = self._combine_bounds(other)
        return vseries_mul(self, other, order, mw)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = " + ".join(f"v^{k}*({p!r})" for k, p in sorted(self.coeffs.items()))
        return f"VSeries({body or '0'}; O(v^{self.order + 1}))"


def vseries_mul(
    a: VSeries, b: VSeries, order: int, max_weight: int | None = None
) -> VSeries:
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    if a.nvars != b.nvars:
        raise VariableMismatch("series over different variable counts")
    out: dict[int, TPoly] = {}
    for i, p in a.coeffs.items():
        if i > order:
            continue
        for j, q in b.coeffs.items():
            k = i + j
            if k > order:
                continue
            prod = tpoly_mul(p, q, max_weight)
            if not prod:
                continue
            s = out.get(k)
            s = prod if s is None else tpoly_add(s, prod)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return VSeries._raw(out, order, a.nvars, max_weight)


def vseries_coefficient(a: VSeries, m: int) -> TPoly:
    if m < 0 or m > a.order:
        raise IndexError(f"v-degree {m} outside retained range 0..{a.order}")
    return a.coeffs.get(m, TPoly.zero(a.nvars))


# -- determinants over a commutative ring ---------------------------------

R = TypeVar("R")


def det_laplace(matrix: Sequence[Sequence[R]], one: R) -> R:
    """Cofactor expansion along rows with minors memoized by column set."""
    n = len(matrix)
    if n == 0:
        return one
    memo: dict[tuple[int, int], R] = {}

    def minor(row: int, cols: int) -> R:
        if row == n:
            return one
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = None
        sign_pos = 0
        for j in range(n):
            if not cols >> j & 1:
                continue
            entry = matrix[row][j]
            if entry:
                term = entry * minor(row + 1, cols & ~(1 << j))
                if sign_pos & 1:
                    term = -term
                total = term if total is None else total + term
            sign_pos += 1
        if total is None:
            total = one - one
        memo[key] = total
        return total

    return minor(0, (1 << n) - 1)


def det_berkowitz(matrix: Sequence[Sequence[R]], one: R) -> R:
    """Division-free determinant via Berkowitz's characteristic-polynomial recursion."""
    n = len(matrix)
    if n == 0:
        return one
    zero = one - one
    # coefficients of det(x I - A_k), highest power first
    poly = [one, -matrix[0][0]]
    for k in range(1, n):
        col = [matrix[i][k] for i in range(k)]
        row = matrix[k][:k]
        toeplitz = [one, -matrix[k][k]]
        vec = col
        for _ in range(k):
            s = zero
            for a, b in zip(row, vec):
                if a and b:
                    s = s + a * b
            toeplitz.append(-s)
            vec = [
                _dot(matrix[i][:k], vec, zero) for i in range(k)
            ]
        poly = [
            _sum(
                (toeplitz[i - j] * poly[j] for j in range(max(0, i - k - 1), min(i, k) + 1)),
                zero,
            )
            for i in range(k + 2)
        ]
    det = poly[n]
    return det if n % 2 == 0 else -det


def _dot(a: Iterable[R], b: Iterable[R], zero: R) -> R:
    s = zero
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _sum(items: Iterable[R], zero: R) -> R:
    s = zero
    for x in items:
        if x:
            s = s + x
    return s


LAPLACE_MAX_DIM = 4


def determinant(
    matrix: Sequence[Sequence[R]], one: R, algorithm: str = "auto"
) -> R:
    """Determinant over a commutative ring.

    ``algorithm`` is ``"laplace"``, ``"berkowitz"`` or ``"auto"`` (Laplace up to
    dimension 4, Berkowitz beyond).
    """
    if algorithm == "auto":
        algorithm = "laplace" if len(matrix) <= LAPLACE_MAX_DIM else "berkowitz"
    if algorithm == "laplace":
        return det_laplace(matrix, one)
    if algorithm == "berkowitz":
        return det_berkowitz(matrix, one)
    raise ValueError(f"unknown determinant algorithm {algorithm!r}")

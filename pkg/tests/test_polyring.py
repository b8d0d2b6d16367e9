import random
from fractions import Fraction
from math import factorial, prod

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lisgen.polyring import (
    TPoly,
    VariableMismatch,
    VSeries,
    det_berkowitz,
    det_laplace,
    determinant,
    gaussian_pairing,
    tpoly_add,
    tpoly_mul,
    vseries_coefficient,
    vseries_mul,
    weighted_degree,
)

T1 = TPoly.var(1, 2)
T2 = TPoly.var(2, 2)
HALF = Fraction(1, 2)


def to_sympy(p: TPoly):
    ts = sympy.symbols(f"t1:{p.nvars + 1}")
    return sympy.Add(
        *(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(t**e for t, e in zip(ts, exps)))
          for exps, c in p.terms.items())
    )


exponents = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda d: TPoly(d, 3))


class TestAddMul:
    def test_additive_inverse(self):
        p = tpoly_add(TPoly.var(1, 1), -TPoly.var(1, 1))
        assert p.terms == {}
        assert p.nvars == 1

    def test_cyc2_from_sum(self):
        p = tpoly_add(T1 * T1 * HALF, T2 * HALF)
        assert p == TPoly({(2, 0): HALF, (0, 1): HALF}, 2)

    def test_like_terms(self):
        assert tpoly_add(T1 + T2, T1) == TPoly({(1, 0): 2, (0, 1): 1}, 2)

    def test_square(self):
        assert tpoly_mul(TPoly.var(1, 1), TPoly.var(1, 1)) == TPoly({(2,): 1}, 1)

    def test_cyc2_squared_against_sympy(self):
        cyc2 = T1 * T1 * HALF + T2 * HALF
        got = tpoly_mul(cyc2, cyc2)
        assert got == TPoly({(4, 0): Fraction(1, 4), (2, 1): HALF, (0, 2): Fraction(1, 4)}, 2)
        assert sympy.expand(to_sympy(got) - sympy.expand(to_sympy(cyc2) ** 2)) == 0

    def test_identity(self):
        p = T1 * 3 + T2 * T2 - 1
        assert TPoly.one(2) * p == p

    def test_mismatch(self):
        with pytest.raises(VariableMismatch):
            tpoly_add(TPoly.var(1, 1), T1)
        with pytest.raises(VariableMismatch):
            tpoly_mul(TPoly.var(1, 1), T1)
        with pytest.raises(VariableMismatch):
            gaussian_pairing(TPoly.var(1, 1), T1)

    def test_weight_cap_drops_heavy_terms(self):
        p = (T1 + T2) * (T1 + T2)
        capped = tpoly_mul(T1 + T2, T1 + T2, max_weight=3)
        assert capped == p.truncate_weight(3)
        assert capped.max_weight() == 3

    def test_zero_coefficients_never_stored(self):
        p = TPoly({(1, 0): 0, (0, 1): 2}, 2)
        assert p.terms == {(0, 1): 2}

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_canonical_form_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == c + (b + a)
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=40, deadline=None)
    @given(polys, polys)
    def test_mul_matches_sympy(self, a, b):
        assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


class TestPairing:
    def test_t1_squared(self):
        p = TPoly({(2,): 1}, 1)
        assert gaussian_pairing(p, p) == 2

    def test_distinct_monomials(self):
        assert gaussian_pairing(T1, T2) == 0

    def test_cyc2_norm(self):
        cyc2 = T1 * T1 * HALF + T2 * HALF
        assert gaussian_pairing(cyc2, cyc2) == Fraction(3, 4)

    def test_random_monomial_orthogonality(self):
        rng = random.Random(7)
        for _ in range(1000):
            k = tuple(rng.randint(0, 3) for _ in range(3))
            l = tuple(rng.randint(0, 3) for _ in range(3))
            expected = prod(factorial(e) for e in k) if k == l else 0
            assert gaussian_pairing(TPoly.monomial(k), TPoly.monomial(l)) == expected

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys, coeffs, coeffs)
    def test_bilinear(self, p, q, r, a, b):
        lhs = gaussian_pairing(p.scale(a) + q.scale(b), r)
        assert lhs == a * gaussian_pairing(p, r) + b * gaussian_pairing(q, r)
        assert gaussian_pairing(p, q) == gaussian_pairing(q, p)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys)
    def test_graded_orthogonality(self, p, q):
        for wp in p.weights():
            for wq in q.weights():
                if wp != wq:
                    pp = TPoly({e: c for e, c in p.terms.items() if weighted_degree(e) == wp}, 3)
                    qq = TPoly({e: c for e, c in q.terms.items() if weighted_degree(e) == wq}, 3)
                    assert gaussian_pairing(pp, qq) == 0


def series(coeffs, order, nvars=1):
    return VSeries(coeffs, order, nvars)


class TestVSeries:
    t = TPoly.var(1, 1)
    one = TPoly.one(1)

    def test_truncated_square(self):
        a = series({0: self.one, 1: self.t}, 2)
        sq1 = vseries_mul(a, a, 1)
        assert sq1.coeffs == {0: self.one, 1: self.t * 2}
        assert sq1.order == 1
        sq2 = vseries_mul(a, a, 2)
        assert sq2.coeffs == {0: self.one, 1: self.t * 2, 2: self.t * self.t}

    def test_identity(self):
        a = series({0: self.one * 3, 2: self.t}, 4)
        assert vseries_mul(a, VSeries.one(4, 1), 4) == a

    def test_coefficient(self):
        a = series({0: self.one, 1: self.t}, 3)
        assert vseries_coefficient(a, 1) == self.t
        assert vseries_coefficient(a, 3) == TPoly.zero(1)
        with pytest.raises(IndexError):
            vseries_coefficient(a, 5)

    @settings(max_examples=40, deadline=None)
    @given(
        st.dictionaries(st.integers(0, 5), polys, max_size=4),
        st.dictionaries(st.integers(0, 5), polys, max_size=4),
        st.integers(0, 4),
        st.integers(1, 4),
    )
    def test_truncation_consistency(self, ca, cb, n, extra):
        a, b = VSeries(ca, 10, 3), VSeries(cb, 10, 3)
        low = vseries_mul(a, b, n)
        high = vseries_mul(a, b, n + extra)
        for k in range(n + 1):
            assert vseries_coefficient(low, k) == vseries_coefficient(high, k)


class TestDeterminant:
    @pytest.mark.parametrize("n", range(0, 7))
    def test_algorithms_agree_with_sympy(self, n):
        rng = random.Random(n)
        for _ in range(10):
            m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
            ref = sympy.Matrix(m).det() if n else 1
            assert det_laplace(m, Fraction(1)) == ref
            assert det_berkowitz(m, Fraction(1)) == ref

    def test_polynomial_matrix(self):
        x, y = TPoly.var(1, 2), TPoly.var(2, 2)
        m = [[x, y, x + 1], [y * y, x - y, TPoly.one(2)], [x * y, TPoly.zero(2), x + y]]
        one = TPoly.one(2)
        assert determinant(m, one, "laplace") == determinant(m, one, "berkowitz")
        X, Y = sympy.symbols("t1 t2")
        ref = sympy.Matrix([[X, Y, X + 1], [Y**2, X - Y, 1], [X * Y, 0, X + Y]]).det()
        assert sympy.expand(to_sympy(determinant(m, one)) - ref) == 0

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            determinant([[Fraction(1)]], Fraction(1), "gauss")

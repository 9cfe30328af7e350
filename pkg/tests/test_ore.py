import math

import numpy as np
import pytest

from helpers import ALGEBRAS, DOMAINS, algebra, check_op_mul, check_rising, rand_op, rand_poly
from orecl.domains import Integers
from orecl.ore import (AlgebraError, OreAlgebra, apply_to_base, c_iter, difference, differential, op_mul,
                       rising_factorial, shift)
from orecl.poly import UniPoly

Z = Integers()
D, S, DE = differential(Z), shift(Z), difference(Z)


def xpoly(*c):
    return UniPoly.from_ints(Z, c)


class TestOpMul:
    def test_diff_commutation(self):
        assert op_mul(D.gen(), D.op([[0, 1]])) == D.op([[1], [0, 1]])

    def test_shift_commutation(self):
        assert op_mul(S.gen(), S.op([[0, 1]])) == S.op([[0], [1, 1]])

    def test_diff_x_times_d(self):
        assert op_mul(D.gen(), D.op([[0], [0, 1]])) == D.op([[0], [1], [0, 1]])

    def test_difference_commutation(self):
        # Delta x = (x+1) Delta + 1
        assert op_mul(DE.gen(), DE.op([[0, 1]])) == DE.op([[1], [1, 1]])

    @pytest.mark.parametrize("name", ALGEBRAS)
    def test_associative(self, name):
        alg = algebra(name)
        rng = np.random.default_rng(1)
        for _ in range(30):
            A, B, C = (rand_op(alg, rng, int(rng.integers(0, 3)), int(rng.integers(0, 3))) for _ in range(3))
            assert op_mul(op_mul(A, B), C) == op_mul(A, op_mul(B, C))


class TestCIter:
    @pytest.mark.parametrize("alg", [D, S, DE])
    def test_zero_iterate(self, alg):
        assert c_iter(alg, 0, 5, 2.5) == 2.5

    def test_shift_closed_form(self):
        d, h = 3, 1.7
        assert math.isclose(S.c_iter(4, d, h), d * math.log(6) + h)

    def test_diff_two_steps(self):
        d, h = 3, 1.7
        assert math.isclose(D.c_iter(2, d, h), 2 * (math.log(2) + math.log(4)) + h)

    def test_negative(self):
        with pytest.raises(AlgebraError):
            D.c_iter(-1, 1, 1.0)

    def test_shift_closed_form_below_recursive_and_valid(self):
        rng = np.random.default_rng(2)
        for n in range(0, 12):
            for d in range(0, 6):
                h = float(rng.uniform(0, 5))
                assert S.c_iter(n, d, h) <= S.c_iter_recursive(n, d, h) + 1e-9
                assert S.c_iter(n + 1, d, h) >= S.c_iter(n, d, h)
        for _ in range(200):
            p = rand_poly(Z, rng, int(rng.integers(0, 6)), size=9)
            n = int(rng.integers(0, 10))
            assert S.apply_sigma(p, n).height() <= S.c_iter(n, max(p.degree, 0), p.height()) + 1e-9

    @pytest.mark.parametrize("alg", [D, S, DE])
    def test_c_monotone(self, alg):
        for n in range(5):
            for d in range(5):
                assert alg.c_iter(n, d + 1, 1.0) >= alg.c_iter(n, d, 1.0)
                assert alg.c_iter(n, d, 2.0) >= alg.c_iter(n, d, 1.0)
                assert alg.c_iter(n + 1, d, 1.0) >= alg.c_iter(n, d, 1.0)

    @pytest.mark.parametrize("alg", [D, S, DE])
    def test_c_dominates_sigma_delta(self, alg):
        rng = np.random.default_rng(4)
        for _ in range(300):
            d = int(rng.integers(0, 6))
            p, q = rand_poly(Z, rng, d, size=9), rand_poly(Z, rng, d, size=9)
            h = max(p.height(), q.height())
            for sgn in (1, -1):
                sp = alg.apply_sigma(p)
                v = (sp if sgn > 0 else -sp) + alg.apply_delta(q)
                assert v.height() <= alg.c(d, h) + 1e-9


class TestRising:
    def test_empty(self):
        assert rising_factorial(xpoly(0, 1), 0, S) == xpoly(1)

    def test_shift_x3(self):
        assert rising_factorial(xpoly(0, 1), 3, S) == xpoly(0, 2, 3, 1)

    def test_diff_is_power(self):
        p = xpoly(1, 1)
        assert rising_factorial(p, 3, D) == p ** 3


class TestApplyToBase:
    def test_diff(self):
        assert apply_to_base(D.gen(), xpoly(0, 0, 1)) == xpoly(0, 2)

    def test_shift(self):
        assert apply_to_base(S.gen(), xpoly(0, 0, 1)) == xpoly(1, 2, 1)

    def test_diff_x_d_plus_1(self):
        assert apply_to_base(D.op([[1], [0, 1]]), xpoly(0, 1)) == xpoly(0, 2)

    def test_sigma_mode_needs_zero_delta(self):
        with pytest.raises(AlgebraError, match="only available when delta=0"):
            OreAlgebra(name="bad", domain=Z, sigma=(1, 1), delta="diff", c=lambda d, h: h,
                       action=(1, 0, 0), mode="sigma")

    @pytest.mark.parametrize("alg", [D, S, DE])
    def test_homomorphism(self, alg):
        rng = np.random.default_rng(6)
        for _ in range(50):
            M, L = rand_op(alg, rng, 2, 2), rand_op(alg, rng, 2, 2)
            q = rand_poly(Z, rng, 4)
            assert apply_to_base(op_mul(M, L), q) == apply_to_base(M, apply_to_base(L, q))


class TestOperator:
    def test_accessors(self):
        L = S.op([[6], [-5], [1]])
        assert (L.order, L.degree) == (2, 0)
        assert math.isclose(L.height(), math.log(7))
        assert S.op([]).is_zero()

    def test_strips_zero_leading(self):
        L = S.op([[1], [0]])
        assert L.order == 0


def _op_mul_violations(name: str, key: str, count: int, seed: int) -> list[str]:
    alg = algebra(name, key)
    rng = np.random.default_rng(seed)
    size = 20 if alg.domain.kind == "int" else 3
    bad = []
    for _ in range(count):
        M = rand_op(alg, rng, int(rng.integers(0, 4)), int(rng.integers(0, 5)), size)
        L = rand_op(alg, rng, int(rng.integers(0, 4)), int(rng.integers(0, 5)), size)
        bad += check_op_mul(M, L)
    return bad


def _rising_violations(name: str, key: str, count: int, seed: int) -> list[str]:
    alg = algebra(name, key)
    rng = np.random.default_rng(seed)
    size = 20 if alg.domain.kind == "int" else 3
    bad = []
    for _ in range(count):
        p = rand_poly(alg.domain, rng, int(rng.integers(0, 5)), size, monic_deg=True)
        bad += check_rising(p, int(rng.integers(0, 7)), alg)
    return bad


@pytest.mark.parametrize("key", ["int", "gfpt-deg"])
@pytest.mark.parametrize("name", ALGEBRAS)
def test_op_mul_height_bound(name, key):
    assert _op_mul_violations(name, key, 500, 100) == []


@pytest.mark.parametrize("key", ["int", "gfpt-deg"])
@pytest.mark.parametrize("name", ALGEBRAS)
def test_rising_height_bound(name, key):
    assert _rising_violations(name, key, 500, 200) == []


def test_domains_table_covers_integer_and_polynomial():
    assert {"int", "gfpt-deg"} <= set(DOMAINS)

import math

import pytest

from orecl.bounds import (BoundError, bound_curves, bound_lclm, bound_main, bound_special, curve_lclm_params,
                          curve_poly_params, h_fact, sym_power_orders)
from orecl.domains import Integers, make_domain
from orecl.ore import make_algebra

GF = make_domain("gfp:t:1091", "deg-only")
SGF = make_algebra("shift", GF)
SZ = make_algebra("shift", Integers())

FIVES = ([5, 5, 5], [5, 5, 5])


class TestLclmBound:
    def test_single(self):
        bd = bound_lclm(1, [3], 4, 1.0, SZ)
        assert (bd.order, bd.degree) == (3, 4)

    @pytest.mark.parametrize("s,height", [(2, 12), (4, 40), (8, 144), (16, 544)])
    def test_gf_table(self, s, height):
        bd = bound_lclm(2, [s, s], s, s, SGF)
        assert (bd.order, bd.degree, bd.height) == (2 * s, (2 * s + 2) * s, height)

    def test_integer_formula_near_printed_values(self):
        for s, ref in ((2, 46.8), (4, 163.2), (8, 635.7)):
            bd = bound_lclm(2, [s, s], s, s, SZ)
            assert abs(bd.height - ref) / ref < 0.10


class TestMainBound:
    def test_single_group(self):
        bd = bound_main((1,), (2,), (2,), (1.0,), 0, 0.0, SZ)
        assert (bd.order, bd.degree) == (2, 8)

    def test_sym_product_shape(self):
        bd = bound_main((1, 1), (2, 2), (2, 2), (2.0, 2.0), 0, 0.0, SZ)
        assert (bd.order, bd.degree) == (4, 64)

    def test_constant_in_y(self):
        bd = bound_main((0, 0), (2, 3), (2, 2), (1.0, 1.0), 3, 1.0, SZ)
        assert (bd.order, bd.degree) == (1, 3)

    def test_length_mismatch(self):
        with pytest.raises(BoundError):
            bound_main((1,), (2, 2), (2,), (1.0,), 0, 0.0, SZ)

    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    def test_matches_sym_product_special(self, s):
        a = bound_main((1, 1), (s, s), (s, s), (s, s), 0, 0.0, SZ)
        b = bound_special("sym_product", SZ, r1=s, r2=s, d=s, h=s)
        assert (a.order, a.degree) == (b.order, b.degree)


class TestSpecial:
    def test_sym_product(self):
        assert bound_special("sym_product", SZ, r1=2, r2=2, d=2, h=2).degree == 64
        assert bound_special("sym_product", SZ, r1=3, r2=3, d=3, h=3).degree == 486

    def test_wronskian_one(self):
        assert bound_special("wronskian", SZ, r=1, d=2, h=1.0).order == 1

    def test_sym_power_orders_disagree(self):
        assert sym_power_orders(2, 3) == {"specialized": 10, "general": 6}
        assert bound_special("sym_power", SZ, k=2, r=3, d=1, h=1.0).order == 10

    def test_associate(self):
        bd = bound_special("associate", SZ, r=2, deg_A=1, h_A=0.0, deg_L=2, h_L=1.0)
        assert (bd.order, bd.degree) == (2, 2 + 8)

    def test_missing_parameter(self):
        with pytest.raises(BoundError):
            bound_special("wronskian", SZ, r=2)

    def test_unknown(self):
        with pytest.raises(BoundError):
            bound_special("sum", SZ)


class TestCurves:
    def test_lclm_values(self):
        assert curve_lclm_params(*FIVES, 15) == 165
        assert curve_lclm_params(*FIVES, 16) == 90
        assert bound_curves("lclm", {"r_list": FIVES[0], "d_list": FIVES[1]}, 20) == 40

    def test_lclm_limit(self):
        # the hyperbola stays strictly above sum(d_k) = 15, so the ceiling settles at 16
        assert curve_lclm_params(*FIVES, 10**6) == 16
        assert curve_lclm_params(*FIVES, 164) == 16
        assert curve_lclm_params(*FIVES, 163) == 17

    def test_poly_values(self):
        assert curve_poly_params(27, 9, 0, 27) == 6561
        assert bound_curves("poly", {"m": 27, "sdd": 9}, 54) == 469

    def test_pole(self):
        with pytest.raises(BoundError, match="order too small"):
            curve_lclm_params(*FIVES, 14)
        with pytest.raises(BoundError, match="order too small"):
            curve_poly_params(27, 9, 0, 26)

    def test_monotone(self):
        lc = [curve_lclm_params(*FIVES, r) for r in range(15, 400)]
        pc = [curve_poly_params(27, 9, 0, r) for r in range(27, 400)]
        assert all(a >= b for a, b in zip(lc, lc[1:]))
        assert all(a >= b for a, b in zip(pc, pc[1:]))


def test_factorial_height():
    Z = Integers()
    assert math.isclose(h_fact(Z, 5), math.log(121))
    assert h_fact(GF, 30) == 0
    assert h_fact(Z, 400) > h_fact(Z, 399)

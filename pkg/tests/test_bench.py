import flint
import pytest

from orecl.bench.experiments import experiment2, experiment3, experiment4, run_experiment
from orecl.bench.oracle import OracleError, solution_stream, verify_annihilator
from orecl.bench.sampling import int_radius, random_operator, stream
from orecl.closure import MultiPoly
from orecl.closure.multipoly import sym_product_P
from orecl.domains import Integers, make_domain
from orecl.ore import differential, make_algebra, shift

Z = Integers()
S, D = shift(Z), differential(Z)
GFT = make_domain("gfp:t:1091", "deg-only")


class TestSampling:
    def test_deterministic(self):
        a = random_operator(3, 3, 3, Z, "shift", 17)
        b = random_operator(3, 3, 3, Z, "shift", 17)
        assert a == b
        assert a != random_operator(3, 3, 3, Z, "shift", 18)

    def test_integer_radius(self):
        assert int_radius(2) == 6
        for seed in range(20):
            L = random_operator(2, 2, 2, Z, "shift", seed)
            assert all(abs(c) <= 6 for p in L.coeffs for c in p.c)
            assert (L.order, L.degree) == (2, 2)

    def test_gf_height(self):
        for seed in range(20):
            L = random_operator(2, 2, 2, GFT, make_algebra("shift", GFT), seed)
            assert L.height() <= 2 and (L.order, L.degree) == (2, 2)

    def test_streams_independent(self):
        assert stream(0, 1, 2).integers(1 << 30) != stream(0, 1, 3).integers(1 << 30)
        assert stream(0, 1, 2).integers(1 << 30) == stream(0, 1, 2).integers(1 << 30)


class TestSolutionStream:
    def test_powers_of_two(self):
        assert solution_stream(S.op([[-2], [1]]), 5, [1]) == [1, 2, 4, 8, 16]

    def test_factorial(self):
        assert solution_stream(S.op([[-1, -1], [1]]), 5, [1]) == [1, 1, 2, 6, 24]

    def test_exp_series(self):
        c = solution_stream(D.op([[-1], [1]]), 4, [1])
        assert c == [flint.fmpq(1), flint.fmpq(1), flint.fmpq(1, 2), flint.fmpq(1, 6)]

    def test_singular_start(self):
        with pytest.raises(OracleError, match="no regular solution window"):
            solution_stream(S.op([[-1], [-3, 1]]), 10, [1])

    def test_singular_every_offset(self):
        # lc = x - 550 vanishes inside every admissible window of length 600
        L = S.op([[-1], [-550, 1]])
        with pytest.raises(OracleError, match="no regular solution window"):
            verify_annihilator(L, MultiPoly.var(Z, 1, 1, 0), [L], N=600)


def _sum2():
    return MultiPoly.var(Z, 2, 1, 0) + MultiPoly.var(Z, 2, 2, 0)


class TestVerify:
    def test_sum_of_exponentials(self):
        ins = [S.op([[-2], [1]]), S.op([[-3], [1]])]
        assert verify_annihilator(S.op([[6], [-5], [1]]), _sum2(), ins)

    def test_wrong_operator(self):
        ins = [S.op([[-2], [1]]), S.op([[-3], [1]])]
        assert not verify_annihilator(S.op([[-2], [1]]), _sum2(), ins)

    def test_exp_product(self):
        ins = [D.op([[-1], [1]]), D.op([[-2], [1]])]
        assert verify_annihilator(D.op([[-3], [1]]), sym_product_P(Z), ins)
        assert not verify_annihilator(D.op([[-2], [1]]), sym_product_P(Z), ins)

    def test_window_too_small(self):
        ins = [S.op([[-2], [1]]), S.op([[-3], [1]])]
        with pytest.raises(OracleError, match="window too small"):
            verify_annihilator(S.op([[6], [-5], [1]]), _sum2(), ins, N=6)

    def test_gf_domain(self):
        alg = make_algebra("shift", GFT)
        ins = [alg.op([[-2], [1]]), alg.op([[[0, 1]], [1]])]
        L = alg.op([[[0, 1089]], [[1089, 1]], [1]])  # (Sn - 2)(Sn + t)
        P = MultiPoly.var(GFT, 2, 1, 0) + MultiPoly.var(GFT, 2, 2, 0)
        assert verify_annihilator(L, P, ins)


class TestReports:
    def test_exp1_bytes_identical(self):
        a = run_experiment(1, sizes=[2], trials=2, seed=3)
        b = run_experiment(1, sizes=[2], trials=2, seed=3)
        assert a.to_csv(timing=False) == b.to_csv(timing=False)
        assert a.to_json(timing=False) == b.to_json(timing=False)

    def test_exp1_rows(self):
        rep = run_experiment(1, sizes=[2], trials=2, seed=0)
        assert {r.domain for r in rep.rows} == {"int", "gfp:t:1091"}
        assert all(r.verified and r.order_match and r.degree_match for r in rep.rows)
        assert rep.to_csv().splitlines()[0] == ("experiment,domain,s_or_r,ord_bound,ord_actual,deg_bound,deg_actual,"
                                                "ht_bound,ht_actual_raw,ht_actual_reduced,verified,millis")

    def test_exp2_small(self):
        rep = experiment2(sizes=[20], trials=1, seed=0)
        (row,) = rep.rows
        assert row.deg_actual == row.deg_bound == 40 and row.verified
        assert row.extra["refused_at_d_fail"]

    def test_exp3_small(self):
        rep = experiment3(sizes=[2], trials=1, seed=0)
        (row,) = rep.rows
        assert row.ord_actual == row.ord_bound == 4 and row.deg_bound == 64 and row.verified

    def test_exp4_curve(self):
        rep = experiment4(sizes=range(27, 31))
        assert rep.to_csv().splitlines()[:3] == ["r,d", "27,6561", "28,3402"]

    def test_unsupported_size(self):
        with pytest.raises(ValueError):
            run_experiment(3, sizes=[7])
        with pytest.raises(ValueError):
            run_experiment(5)

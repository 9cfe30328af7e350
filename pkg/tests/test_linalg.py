import numpy as np
import pytest

from helpers import DOMAINS, check_kernel, rand_poly
from orecl.domains import DEG_ONLY, Integers, PolyPrimeField
from orecl.linalg import GridTooSmall, LinalgError, PolyMatrix, bareiss_cramer, modular_cramer, normalize_vector, nullspace_vector
from orecl.poly import UniPoly

Z = Integers()


def P(*c):
    return UniPoly.from_ints(Z, c)


def rand_matrix(dom, rng, n: int, m: int, d: int, size: int) -> PolyMatrix:
    return PolyMatrix.from_rows(dom, [[rand_poly(dom, rng, d, size) for _ in range(m)] for _ in range(n)])


class TestExamples:
    def test_one_by_two(self):
        v = nullspace_vector(PolyMatrix.from_ints(Z, [[1, 1]]))
        assert v in ([P(1), P(-1)], [P(-1), P(1)])

    def test_bidiagonal(self):
        A = PolyMatrix.from_rows(Z, [[P(0, 1), P(1), P()], [P(), P(0, 1), P(1)]])
        v = nullspace_vector(A)
        assert v == [P(1), P(0, -1), P(0, 0, 1)]
        assert max(p.degree for p in v) <= 2

    def test_random_4x5(self):
        rng = np.random.default_rng(0)
        assert check_kernel(rand_matrix(Z, rng, 4, 5, 2, 6)) == []

    def test_trivial_kernel(self):
        with pytest.raises(LinalgError, match="trivial kernel"):
            nullspace_vector(PolyMatrix.from_ints(Z, [[1, 0], [0, 1]]))


class TestEngines:
    @pytest.mark.parametrize("key", ["int", "gfp", "gfpt-deg"])
    def test_bareiss_equals_modular(self, key):
        dom = DOMAINS[key]()
        rng = np.random.default_rng(8)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            A = rand_matrix(dom, rng, n, n + int(rng.integers(1, 3)), 2, 4)
            vb = bareiss_cramer(A)[0]
            vm = modular_cramer(A).v
            assert vb == vm

    def test_rank_deficient_square(self):
        A = PolyMatrix.from_rows(Z, [[P(1), P(0, 1)], [P(2), P(0, 2)]])
        v = nullspace_vector(A)
        assert all(p.is_zero() for p in A.mul_vec(v))

    def test_deterministic(self):
        rng = np.random.default_rng(9)
        A = rand_matrix(Z, rng, 6, 8, 3, 5)
        assert nullspace_vector(A) == nullspace_vector(A)
        assert nullspace_vector(A, method="bareiss") == nullspace_vector(A, method="modular")

    def test_small_field_falls_back(self):
        dom = PolyPrimeField(7, "t", DEG_ONLY)
        A = rand_matrix(dom, np.random.default_rng(10), 8, 9, 1, 1)
        with pytest.raises(GridTooSmall):
            modular_cramer(A)
        assert nullspace_vector(A, reduce=None) == bareiss_cramer(A)[0]

    def test_content_reduction(self):
        v = normalize_vector([P(2, 4), P(-6)])
        assert v == [P(1, 2), P(-3)]


def kernel_bound_violations(key: str, count: int, seed: int) -> list[str]:
    dom = DOMAINS[key]()
    rng = np.random.default_rng(seed)
    bad = []
    for _ in range(count):
        n = int(rng.integers(1, 6))
        m = n + int(rng.integers(1, 3))
        d = int(rng.integers(0, 4))
        bad += check_kernel(rand_matrix(dom, rng, n, m, d, 6 if dom.kind == "int" else 2))
    return bad


@pytest.mark.parametrize("key", ["int", "gfpt-deg"])
def test_kernel_bounds(key):
    assert kernel_bound_violations(key, 500, 31) == []

"""Acceptance checks, one test per criterion.

Thresholds are pinned here: trial fractions, the 10% band on the integer
height formula, the [2, 8] degree-ratio window and the wall-clock limits.
"""

import time

import numpy as np

from helpers import DOMAINS, check_height_axioms, rand_elem
from orecl.bench.experiments import experiment1, experiment2, experiment3, experiment4
from orecl.bench.sampling import random_operator, stream
from orecl.bounds import curve_lclm
from orecl.domains import make_domain
from orecl.ore import make_algebra
from soundness import ALGEBRAS, KINDS, coverage, soundness_run
from test_linalg import kernel_bound_violations
from test_multipoly import mpoly_mul_violations, partial_action_violations
from test_normal_form import normal_form_violations
from test_ore import _op_mul_violations, _rising_violations

GF_HEIGHTS = {2: 12, 4: 40, 8: 144, 16: 544}
INT_REFERENCE = {2: 46.8, 4: 163.2, 8: 635.7}
TOL = 1e-9


def frac(flags) -> float:
    flags = list(flags)
    return sum(flags) / len(flags)


def test_exp1_gf_heights_exact():
    t0 = time.perf_counter()
    rep = experiment1(sizes=list(GF_HEIGHTS), trials=20, domains=("gfp:t:1091",))
    elapsed = time.perf_counter() - t0
    for s, ref in GF_HEIGHTS.items():
        rows = [r for r in rep.rows if r.s_or_r == s]
        assert len(rows) == 20
        assert all(r.ht_bound == ref for r in rows), s
        assert all(r.verified for r in rows), s
        assert frac(r.height_match for r in rows) >= 0.95, s
    assert elapsed < 120, elapsed


def test_exp1_integer_sizes_and_heights():
    t0 = time.perf_counter()
    rep = experiment1(sizes=list(INT_REFERENCE), trials=20, domains=("int",))
    elapsed = time.perf_counter() - t0
    for s, ref in INT_REFERENCE.items():
        rows = [r for r in rep.rows if r.s_or_r == s]
        assert len(rows) == 20
        assert frac(r.ord_actual == 2 * s and r.deg_actual == (2 * s + 2) * s for r in rows) >= 0.95, s
        assert all(r.ht_actual_raw <= r.ht_bound + TOL for r in rows), s
        assert all(r.verified for r in rows), s
        assert abs(rep.notes["int_formula_at_h_eq_s"][s] - ref) / ref < 0.10, s
    assert elapsed < 300, elapsed


def test_exp2_degree_curve():
    t0 = time.perf_counter()
    rep = experiment2(sizes=[15, 16, 18, 20, 24], trials=2)
    elapsed = time.perf_counter() - t0
    assert all(r.verified for r in rep.rows)
    assert all(r.extra["refused_at_d_fail"] for r in rep.rows)
    assert all(r.extra["nvars"] > r.extra["neqs"] for r in rep.rows)
    assert frac(r.degree_match for r in rep.rows) >= 0.90
    assert elapsed < 600, elapsed


def test_exp3_symmetric_product():
    t0 = time.perf_counter()
    rep = experiment3(sizes=[2, 3])
    elapsed = time.perf_counter() - t0
    for r in rep.rows:
        assert r.ord_actual == r.s_or_r ** 2
        assert 2 <= r.deg_bound / r.deg_actual <= 8, (r.deg_bound, r.deg_actual)
        assert r.verified
    assert elapsed < 300, elapsed


def test_randomized_soundness():
    t0 = time.perf_counter()
    cases = soundness_run(100)
    elapsed = time.perf_counter() - t0
    failed = [c for c in cases if not c.verified]
    assert failed == []
    assert coverage(cases) == {(k, a) for k in KINDS for a in ALGEBRAS}
    assert {c.domain for c in cases} == {"int", "gfp:t:1091"}
    assert elapsed < 600, elapsed


def _height_axiom_violations(count: int, seed: int) -> list[str]:
    bad = []
    for key, make in DOMAINS.items():
        dom = make()
        rng = np.random.default_rng(seed)
        size = 10**18 if dom.kind == "int" else 6
        for _ in range(count):
            a, b = rand_elem(dom, rng, size), rand_elem(dom, rng, size)
            items = [rand_elem(dom, rng, size) for _ in range(int(rng.integers(1, 13)))]
            bad += [f"{key}: {v}" for v in check_height_axioms(dom, a, b, items)]
    return bad


def test_property_suites():
    bad = _height_axiom_violations(1000, 61)
    for name in ("diff", "shift", "difference"):
        for key in ("int", "gfpt-deg"):
            bad += _op_mul_violations(name, key, 500, 62)
            bad += _rising_violations(name, key, 500, 63)
        bad += partial_action_violations(name, 500, 64)
    for key in ("int", "gfpt-deg"):
        bad += kernel_bound_violations(key, 500, 65)
    bad += mpoly_mul_violations(500, 66)
    bad += normal_form_violations(100, 67)
    assert bad == []


def test_degree_curves():
    dom = make_domain("int")
    alg = make_algebra("shift", dom)
    fives = [random_operator(5, 5, 3, dom, alg, stream(0, 7, k)) for k in range(3)]
    lc = [curve_lclm(fives, r) for r in range(15, 200)]
    assert lc[0] == 165
    assert all(a >= b for a, b in zip(lc, lc[1:]))
    curve = experiment4(sizes=range(27, 200)).curve
    pc = [d for _, d in curve]
    assert curve[0] == (27, 6561)
    assert all(a >= b for a, b in zip(pc, pc[1:]))

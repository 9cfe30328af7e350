import json

import numpy as np
import pytest

from helpers import ALGEBRAS, DOMAINS, rand_op
from orecl.closure import MultiPoly
from orecl.domains import Integers
from orecl.ore import make_algebra, shift
from orecl.poly import UniPoly
from orecl.textio import (ParseError, multipoly_to_json, operator_from_json, operator_to_json, parse_multipoly,
                          parse_operator, parse_poly)

Z = Integers()
S = shift(Z)


def test_parse_example():
    L = parse_operator("(x+1)*Sn^2 - 3*Sn + x", S)
    assert L == S.op([[0, 1], [-3], [1, 1]])


def test_coefficients_left_of_symbol():
    with pytest.raises(ParseError, match="left of the operator symbol"):
        parse_operator("Sn*x", S)


def test_garbage():
    with pytest.raises(ParseError):
        parse_operator("(x+", S)
    with pytest.raises(ParseError):
        parse_operator("x/2*Sn", S)


def test_gf_coefficients():
    dom = DOMAINS["gfpt-deg"]()
    alg = make_algebra("diff", dom)
    L = parse_operator("(3*t^2+1)*x*Dx^2 - t*Dx + 5", alg)
    assert L.coeffs[2] == UniPoly(dom, [dom.zero(), dom.elem([1, 0, 3])])
    assert parse_operator(L.to_str(), alg) == L


def test_t_outside_polynomial_domain():
    with pytest.raises(ParseError):
        parse_poly("t*x", Z)


def test_multipoly():
    P = parse_multipoly("y[1,0]*y[2,1] - y[1,1]*y[2,0]", Z)
    y = lambda i, j: MultiPoly.var(Z, 2, i, j)
    assert P == y(1, 0) * y(2, 1) - y(1, 1) * y(2, 0)
    assert parse_multipoly(P.to_str(), Z) == P
    assert multipoly_to_json(P)["groups"] == 2


def test_multipoly_coefficients():
    P = parse_multipoly("(x^2+1)*y[1,0]^2 + 3", Z)
    assert P.Deg() == (2,) or not P.is_homogeneous()
    assert len(P) == 2


@pytest.mark.parametrize("key", ["int", "gfpt-deg"])
@pytest.mark.parametrize("name", ALGEBRAS)
def test_round_trip(name, key):
    alg = make_algebra(name, DOMAINS[key]())
    rng = np.random.default_rng(2)
    for _ in range(20):
        L = rand_op(alg, rng, int(rng.integers(0, 4)), int(rng.integers(0, 4)), 9)
        assert parse_operator(L.to_str(), alg) == L
        obj = json.loads(json.dumps(operator_to_json(L)))
        assert obj["algebra"] == name
        assert operator_from_json(obj, alg) == L


def test_json_algebra_mismatch():
    obj = operator_to_json(S.op([[1], [1]]))
    with pytest.raises(ParseError):
        operator_from_json(obj, make_algebra("diff", Z))

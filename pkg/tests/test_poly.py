from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from or_lab import poly as P

from oracles import sphere_average_float

NV = 3


@st.composite
def polys(draw, nvars=NV, max_deg=3, max_terms=4):
    p = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=6))
        P.add_scaled(p, {exps: Fraction(1)}, c)
    return p


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert P.mul(p, q) == P.mul(q, p)
    assert P.mul(p, P.add(q, r)) == P.add(P.mul(p, q), P.mul(p, r))
    assert P.mul(P.mul(p, q), r) == P.mul(p, P.mul(q, r))
    assert P.sub(p, p) == {}


@given(polys(), polys())
def test_laplacian_leibniz(p, q):
    # Lap(pq) = Lap(p) q + 2 grad p . grad q + p Lap(q)
    grad_term = {}
    for i in range(NV):
        P.add_scaled(grad_term, P.mul(_partial(p, i), _partial(q, i)), 2)
    rhs = P.add(P.add(P.mul(P.laplacian(p), q), P.mul(p, P.laplacian(q))), grad_term)
    assert P.laplacian(P.mul(p, q)) == rhs


def _partial(p, i):
    out = {}
    for m, c in p.items():
        if m[i]:
            mm = m[:i] + (m[i] - 1,) + m[i + 1:]
            out[mm] = out.get(mm, 0) + c * m[i]
    return {m: c for m, c in out.items() if c}


@given(polys())
def test_no_zero_coefficients_stored(p):
    for q in (p, P.laplacian(p), P.mul(p, p), P.scale(p, 0)):
        assert all(c != 0 for c in q.values())


@given(polys())
def test_arguments_not_mutated(p):
    before = dict(p)
    P.add(p, p)
    P.mul(p, p)
    P.laplacian(p)
    P.scale(p, 3)
    assert p == before


@given(polys(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=NV, max_size=NV))
def test_evaluate_is_a_ring_map(p, point):
    q = P.add(P.mul(p, p), P.constant(2, NV))
    assert P.evaluate(q, point) == P.evaluate(p, point) ** 2 + 2


@pytest.mark.parametrize("exps", [(0, 0, 0), (2, 0, 0), (2, 2, 0), (4, 0, 0), (2, 2, 2), (6, 0, 0, 0), (4, 2, 0, 0), (2, 0)])
def test_monomial_average_matches_gamma_formula(exps):
    assert float(P.monomial_sphere_average(exps)) == pytest.approx(sphere_average_float(exps), rel=1e-12)


def test_monomial_average_ground_truths():
    # <x^2> = 1/N and <x^4> = 3/(N(N+2)) on S^{N-1}
    assert P.monomial_sphere_average((2, 0, 0)) == Fraction(1, 3)
    assert P.monomial_sphere_average((4, 0, 0)) == Fraction(1, 5)
    assert P.monomial_sphere_average((1, 1, 0)) == 0


@given(st.integers(2, 5), st.integers(0, 3))
def test_norm_squared_average_is_one(nvars, j):
    r = P.mul_norm_squared_power(P.constant(1, nvars), j, nvars)
    assert P.sphere_average(r) == 1


def test_homogeneous_parts_and_degree():
    p = P.add(P.monomial((2, 0, 0)), P.monomial((0, 1, 0), 3))
    parts = P.homogeneous_parts(p)
    assert set(parts) == {1, 2}
    assert P.degree(p) == 2
    assert P.is_homogeneous(parts[1], 1)
    assert not P.is_homogeneous(p, 2)


@given(polys())
def test_json_roundtrip(p):
    assert P.from_json(P.to_json(p), NV) == p


def test_from_json_rejects_wrong_arity():
    with pytest.raises(ValueError):
        P.from_json({"1,0": "1"}, 3)


def test_to_str():
    p = P.add(P.monomial((2, 0), -1), P.constant(Fraction(1, 2), 2))
    assert P.to_str(p) == "-x0^2 + 1/2"
    assert P.to_str({}) == "0"

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from or_lab import poly as P
from or_lab.ambient import apply_linear_ambient
from or_lab.coeffs import WeightConfig, basis_tables, linear_operator_coeffs
from or_lab.sphere import (
    SphereFunction,
    dirichlet_form,
    evaluate_linear_operator,
    evaluate_or_operator,
    harmonic_decompose,
    harmonic_projection,
    integrate,
    laplace_beltrami,
    laplacian_eigenvalue,
    random_sphere_function,
    shifted_eigenvalue,
    shifted_laplacian,
    sphere_function_from_terms,
    sphere_multiply,
    standard_harmonic,
)

from oracles import spherical_laplacian_of_homogeneous


@st.composite
def homogeneous(draw, nvars, d):
    p = {}
    for _ in range(draw(st.integers(1, 3))):
        exps = [0] * nvars
        for _ in range(d):
            exps[draw(st.integers(0, nvars - 1))] += 1
        P.add_scaled(p, {tuple(exps): F(1)}, draw(st.integers(-4, 4)))
    return p


@st.composite
def sphere_functions(draw, n, max_degree=3):
    seed = draw(st.integers(0, 10**6))
    return random_sphere_function(n, draw(st.integers(0, max_degree)), random.Random(seed))


@given(st.integers(1, 4), st.integers(0, 5), st.data())
def test_decomposition_reconstructs(n, d, data):
    nvars = n + 1
    p = data.draw(homogeneous(nvars, d))
    total = {}
    for h in harmonic_decompose(p, n):
        assert P.laplacian(h.p) == {}
        assert P.is_homogeneous(h.p, h.d)
        P.add_scaled(total, P.mul_norm_squared_power(h.p, (d - h.d) // 2, nvars), 1)
    assert total == p


@given(st.integers(1, 4), st.integers(0, 5), st.data())
def test_projection_is_idempotent(n, d, data):
    nvars = n + 1
    h = harmonic_projection(data.draw(homogeneous(nvars, d)), d, nvars)
    assert harmonic_projection(h, d, nvars) == h


@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_laplace_beltrami_matches_flat_formula(n, d, data):
    p = data.draw(homogeneous(n + 1, d))
    expected = SphereFunction.from_polynomial(spherical_laplacian_of_homogeneous(p, d, n), n)
    assert laplace_beltrami(SphereFunction.from_polynomial(p, n)) == expected


@given(st.integers(1, 5), st.integers(0, 3), st.fractions(max_denominator=6), st.data())
def test_shifted_laplacian_is_product_of_factors(n, r, w, data):
    u = data.draw(sphere_functions(n))
    direct = u
    for j in range(r):
        shift = (w - 2 * j) * (n + w - 2 * j - 1)
        direct = laplace_beltrami(direct) + direct.scaled(shift)
    assert shifted_laplacian(r, w, u) == direct


def test_eigenvalue_conventions():
    assert laplacian_eigenvalue(1, 2) == -2
    assert laplacian_eigenvalue(2, 3) == -8
    assert shifted_eigenvalue(1, F(-1, 2), 0, 3) == F(-3, 4)
    assert shifted_eigenvalue(0, 5, 3, 3) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_integrals_of_coordinates(n):
    x0 = SphereFunction.coordinate(0, n)
    assert integrate(x0) == 0
    assert integrate(sphere_multiply(x0, x0)) == F(1, n + 1)
    assert integrate(SphereFunction.constant(3, n)) == 3


@given(st.integers(1, 4), st.data())
def test_multiplication_ring_laws(n, data):
    u, v, w = (data.draw(sphere_functions(n, 2)) for _ in range(3))
    assert sphere_multiply(u, v) == sphere_multiply(v, u)
    assert sphere_multiply(sphere_multiply(u, v), w) == sphere_multiply(u, sphere_multiply(v, w))
    assert sphere_multiply(u, v + w) == sphere_multiply(u, v) + sphere_multiply(u, w)


@given(st.integers(1, 4), st.data())
def test_sum_of_squared_coordinates_is_one(n, data):
    u = data.draw(sphere_functions(n, 2))
    total = SphereFunction(n, {})
    for i in range(n + 1):
        xi = SphereFunction.coordinate(i, n)
        total = total + sphere_multiply(xi, sphere_multiply(xi, u))
    assert total == u


@given(st.integers(1, 4), st.data())
def test_laplacian_is_symmetric(n, data):
    u, v = (data.draw(sphere_functions(n)) for _ in range(2))
    assert integrate(sphere_multiply(u, laplace_beltrami(v))) == integrate(sphere_multiply(laplace_beltrami(u), v))


@pytest.mark.parametrize("config", [
    WeightConfig(5, 1, -1, -1),
    WeightConfig(6, 2, -1, -1),
    WeightConfig(4, 2, 0, 0),
    WeightConfig(7, 3, F(-1, 3), F(-1, 3)),
])
def test_fast_dirichlet_form_matches_literal_integral(config):
    rng = random.Random(11)
    for table in basis_tables(config):
        u, v, w = (random_sphere_function(config.n, 3, rng) for _ in range(3))
        literal = integrate(sphere_multiply(u, evaluate_or_operator(table, v, w)))
        assert dirichlet_form(table, u, v, w) == literal


def test_first_order_operator_on_constants():
    (table,) = basis_tables(WeightConfig(5, 1, -1, -1))
    one = SphereFunction.constant(1, 5)
    assert evaluate_or_operator(table, one, one) == SphereFunction.constant(F(-5, 2), 5)


@pytest.mark.parametrize("n,k,ell", [(4, 2, 1), (5, 2, -1), (6, 3, 1), (5, 1, F(1, 2))])
def test_linear_operator_spectral_matches_ambient(n, k, ell):
    coeffs = linear_operator_coeffs(k, ell)
    rng = random.Random(5)
    f, u = (random_sphere_function(n, 2, rng) for _ in range(2))
    assert evaluate_linear_operator(coeffs, n, f, u) == apply_linear_ambient(coeffs, n, f, u)


def test_linear_operator_formula_on_constant_f():
    # with f = 1: D(u) = sum_s b_s L_{k-s; w-2l-2s} L_{s; w} u
    n, k, ell = 6, 2, 1
    coeffs = linear_operator_coeffs(k, ell)
    w = -F(n - 2 * k - 2 * ell, 2)
    u = random_sphere_function(n, 3, random.Random(2))
    expected = SphereFunction(n, {})
    for s, b in enumerate(coeffs.entries):
        expected = expected + shifted_laplacian(k - s, w - 2 * ell - 2 * s, shifted_laplacian(s, w, u)).scaled(b)
    assert evaluate_linear_operator(coeffs, n, SphereFunction.constant(1, n), u) == expected


def test_random_functions_are_deterministic():
    a = random_sphere_function(4, 3, random.Random(7))
    b = random_sphere_function(4, 3, random.Random(7))
    assert a == b
    for d, p in a.components.items():
        assert P.laplacian(p) == {} and P.is_homogeneous(p, d)
        for c in p.values():
            assert abs(c.numerator) <= 3 * 12 ** 3


@given(st.integers(1, 4), st.data())
def test_json_roundtrip(n, data):
    u = data.draw(sphere_functions(n))
    assert SphereFunction.from_json(u.to_json()) == u


def test_from_dict_rejects_inhomogeneous_component():
    doc = {"n": 2, "components": [{"degree": 1, "poly": {"1,0,0": "1", "2,0,0": "1"}}]}
    with pytest.raises(ValueError):
        SphereFunction.from_dict(doc)


def test_from_polynomial_reduces_modulo_sphere():
    # x0^2 + x1^2 + x2^2 restricts to 1
    u = sphere_function_from_terms(2, [(1, (2, 0, 0)), (1, (0, 2, 0)), (1, (0, 0, 2))])
    assert u == SphereFunction.constant(1, 2)


def test_standard_harmonics_are_harmonic():
    for d in range(5):
        for variant in (0, 1):
            h = standard_harmonic(3, d, variant)
            assert list(h.components) == [d]
            assert laplace_beltrami(h) == h.scaled(laplacian_eigenvalue(d, 3))

import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from or_lab import ambient as A
from or_lab import poly as P
from or_lab.coeffs import WeightConfig, basis_tables, linear_operator_coeffs
from or_lab.sphere import (
    SphereFunction,
    evaluate_linear_operator,
    evaluate_or_operator,
    integrate,
    random_sphere_function,
    sphere_multiply,
)

from oracles import ambient_to_poly, minkowski_laplacian


@st.composite
def polynomial_elements(draw, n):
    """Ambient elements with non-negative integer tau exponents."""
    nvars = n + 1
    pieces = []
    for _ in range(draw(st.integers(1, 3))):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(nvars))
        a = draw(st.integers(0, 4))
        c = draw(st.integers(-3, 3))
        pieces.append((a, P.monomial(exps, c)))
    return A.AmbientElement.from_terms(n, pieces)


@given(st.integers(1, 3), st.data())
def test_laplacian_matches_direct_differentiation(n, data):
    e = data.draw(polynomial_elements(n))
    got = ambient_to_poly(A.ambient_laplacian(e))
    assert got == minkowski_laplacian(ambient_to_poly(e), n + 1)


@given(st.integers(1, 3), st.data())
def test_multiplication_matches_polynomial_product(n, data):
    e1, e2 = data.draw(polynomial_elements(n)), data.draw(polynomial_elements(n))
    assert ambient_to_poly(A.ambient_multiply(e1, e2)) == P.mul(ambient_to_poly(e1), ambient_to_poly(e2))


@given(st.integers(1, 4), st.fractions(max_denominator=6), st.integers(0, 3))
def test_laplacian_of_harmonic_extension(n, w, d):
    from or_lab.sphere import standard_harmonic

    u = standard_harmonic(n, d)
    e = A.harmonic_extend(u, w)
    expected = A.AmbientElement.tau_power(n, w - d - 2, u.components[d]).scaled(-(w - d) * (w - d - 1))
    assert A.ambient_laplacian(e) == expected


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("w", [F(-1, 3), F(2), F(-5, 2)])
def test_q_commutator(n, ell, w):
    # Lap^l(Q f) - Q Lap^l f = 2l Lap^(l-1)((2X + n + 4 - 2l) f) for f of weight w
    f = A.harmonic_extend(random_sphere_function(n, 2, random.Random(ell)), w)
    lhs = A.ambient_laplacian_power(A.q_multiply(f), ell) - A.q_multiply(A.ambient_laplacian_power(f, ell))
    rhs = A.ambient_laplacian_power(f, ell - 1).scaled(2 * ell * (2 * w + n + 4 - 2 * ell))
    assert lhs == rhs


@given(st.integers(1, 4), st.fractions(max_denominator=5), st.integers(0, 10**6))
def test_extension_restricts_back(n, w, seed):
    u = random_sphere_function(n, 3, random.Random(seed))
    e = A.harmonic_extend(u, w)
    if not u.is_zero():
        assert A.euler_weight(e) == w
    assert A.cone_restrict(e) == u
    assert A.cone_restrict(A.einstein_extend(u, w, 3)) == u


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_q_multiples_restrict_to_zero(n, seed):
    u = random_sphere_function(n, 2, random.Random(seed))
    assert A.cone_restrict(A.q_multiply(A.harmonic_extend(u, F(1, 2)))).is_zero()


def test_einstein_extension_is_homogeneous_and_agrees_mod_q():
    u = random_sphere_function(3, 3, random.Random(4))
    w = F(-7, 3)
    e = A.einstein_extend(u, w, 2)
    assert A.euler_weight(e) == w
    assert A.cone_restrict(e - A.harmonic_extend(u, w)).is_zero()


@pytest.mark.parametrize("config", [WeightConfig(5, 1, -1, -1), WeightConfig(5, 2, F(-1, 3), F(-1, 3)), WeightConfig(4, 2, 0, 0)])
def test_operator_insensitive_to_extension_choice(config):
    # tangential operators see only restrictions, so either extension works
    rng = random.Random(9)
    u, v = (random_sphere_function(config.n, 2, rng) for _ in range(2))
    for table in basis_tables(config):
        via_harmonic = A.apply_bidifferential_ambient(table, u, v)
        ue = A.einstein_extend(u, config.w1, config.k)
        ve = A.einstein_extend(v, config.w2, config.k)
        assert A.cone_restrict(A.bidifferential_ambient(table, ue, ve)) == via_harmonic
        assert via_harmonic == evaluate_or_operator(table, u, v)


@pytest.mark.parametrize("n,k,ell", [(4, 1, 1), (5, 2, 1), (6, 3, 1)])
def test_linear_operator_depends_on_extension_of_f(n, k, ell):
    coeffs = linear_operator_coeffs(k, ell)
    rng = random.Random(3)
    f, u, v = (random_sphere_function(n, 2, rng) for _ in range(3))
    einstein = A.apply_linear_ambient(coeffs, n, f, v)
    harmonic = A.apply_linear_ambient(coeffs, n, f, v, f_extension="harmonic")
    assert einstein == evaluate_linear_operator(coeffs, n, f, v)
    assert einstein != harmonic
    # both choices of extension give formally self-adjoint operators
    other = A.apply_linear_ambient(coeffs, n, f, u, f_extension="harmonic")
    assert integrate(sphere_multiply(u, harmonic)) == integrate(sphere_multiply(v, other))


def test_linear_extension_name_checked():
    one = SphereFunction.constant(1, 3)
    with pytest.raises(ValueError):
        A.apply_linear_ambient(linear_operator_coeffs(1, 1), 3, one, one, f_extension="other")


def test_defining_function_and_json():
    q = A.defining_function(2)
    doc = json.loads(q.to_json())
    assert {item["tau_exp"] for item in doc} == {"0", "2"}
    assert A.euler_weight(q) == 2
    assert A.cone_restrict(q).is_zero()


def test_mismatched_dimensions_rejected():
    with pytest.raises(ValueError):
        A.ambient_multiply(A.coordinate(2, 0), A.coordinate(3, 0))

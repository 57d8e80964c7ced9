"""Exact calculus on the unit round sphere S^n.

Functions on the sphere are kept in canonical form: a finite sum of
harmonic homogeneous polynomials in x^0..x^n of pairwise distinct degrees.
Every operator here is diagonal (or nearly so) in that decomposition, so
all evaluation reduces to rational eigenvalue arithmetic plus harmonic
decomposition of products.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from . import poly as P
from .coeffs import CoeffTable, LinearCoeffTable
from .rational import multinomial, parse_rational


@dataclass(frozen=True)
class HarmonicPolynomial:
    n: int
    d: int
    p: P.Poly


def _projection_coefficients(d: int, nvars: int, count: int) -> List[Fraction]:
    """c_0 = 1, c_j = -c_{j-1} / (2j (N + 2d - 2 - 2j)), N = number of variables."""
    cs = [Fraction(1)]
    for j in range(1, count):
        cs.append(-cs[-1] / (2 * j * (nvars + 2 * d - 2 - 2 * j)))
    return cs


def _project_from_powers(laps: List[P.Poly], d: int, nvars: int) -> P.Poly:
    """sum_j c_j |x|^{2j} laps[j], evaluated Horner-style in |x|^2."""
    cs = _projection_coefficients(d, nvars, len(laps))
    r2 = P.norm_squared(nvars)
    acc: P.Poly = {}
    for c, lap in zip(reversed(cs), reversed(laps)):
        acc = P.mul(acc, r2) if acc else {}
        P.add_scaled(acc, lap, c)
    return acc


def _laplacian_powers(p: P.Poly) -> List[P.Poly]:
    """[p, Lap p, Lap^2 p, ...] up to the last nonzero one."""
    out = [p]
    while True:
        nxt = P.laplacian(out[-1])
        if not nxt:
            return out
        out.append(nxt)


def harmonic_projection(p: P.Poly, d: int, nvars: int) -> P.Poly:
    """Harmonic part h_d of a homogeneous degree-d polynomial.

    H(p) = sum_j c_j |x|^{2j} Lap^j p with c_0 = 1 and
    c_j = -c_{j-1} / (2j (N + 2d - 2 - 2j)), N = number of variables.
    """
    if not p:
        return {}
    return _project_from_powers(_laplacian_powers(p), d, nvars)


def harmonic_decompose(p: P.Poly, n: int) -> List[HarmonicPolynomial]:
    """Split homogeneous ``p`` as sum_j |x|^{2j} h_{d-2j} with harmonic h.

    Lap^j p = prod_{i=1}^{j} 2i(2i + N - 2 + 2(d-2j)) h_{d-2j} + (terms with
    |x|^2 factors), so h_{d-2j} is the harmonic projection of Lap^j p
    divided by that product.
    """
    if not p:
        return []
    d = P.degree(p)
    if not P.is_homogeneous(p, d):
        raise ValueError("harmonic_decompose expects a homogeneous polynomial")
    nvars = n + 1
    laps = _laplacian_powers(p)
    out = []
    for j in range(len(laps)):
        e = d - 2 * j
        norm = 1
        for i in range(1, j + 1):
            norm *= 2 * i * (2 * i + nvars - 2 + 2 * e)
        h = P.scale(_project_from_powers(laps[j:], e, nvars), Fraction(1, norm))
        if h:
            out.append(HarmonicPolynomial(n, e, h))
    return out


def laplacian_eigenvalue(d: int, n: int) -> int:
    return -d * (d + n - 1)


def shifted_eigenvalue(r: int, w, d: int, n: int) -> Fraction:
    """Eigenvalue of prod_{j<r} (Lap + (w-2j)(n+w-2j-1)) on degree-d harmonics."""
    w = Fraction(w)
    lam = laplacian_eigenvalue(d, n)
    out = Fraction(1)
    for j in range(r):
        out *= lam + (w - 2 * j) * (n + w - 2 * j - 1)
    return out


@dataclass(frozen=True)
class SphereFunction:
    n: int
    components: Dict[int, P.Poly] = field(default_factory=dict)

    @classmethod
    def from_polynomial(cls, p: P.Poly, n: int) -> "SphereFunction":
        """Restriction of an arbitrary polynomial in x^0..x^n to S^n."""
        comps: Dict[int, P.Poly] = {}
        for part in P.homogeneous_parts(p).values():
            for h in harmonic_decompose(part, n):
                acc = comps.setdefault(h.d, {})
                P.add_scaled(acc, h.p, 1)
        return cls(n, {d: c for d, c in sorted(comps.items()) if c})

    @classmethod
    def constant(cls, value, n: int) -> "SphereFunction":
        return cls.from_polynomial(P.constant(value, n + 1), n)

    @classmethod
    def coordinate(cls, i: int, n: int) -> "SphereFunction":
        return cls(n, {1: P.variable(i, n + 1)})

    def harmonics(self) -> List[HarmonicPolynomial]:
        return [HarmonicPolynomial(self.n, d, p) for d, p in sorted(self.components.items())]

    def polynomial(self) -> P.Poly:
        out: P.Poly = {}
        for p in self.components.values():
            P.add_scaled(out, p, 1)
        return out

    @property
    def max_degree(self) -> int:
        return max(self.components, default=0)

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "SphereFunction") -> "SphereFunction":
        _check_same_n(self, other)
        comps = {d: dict(p) for d, p in self.components.items()}
        for d, p in other.components.items():
            P.add_scaled(comps.setdefault(d, {}), p, 1)
        return SphereFunction(self.n, {d: p for d, p in sorted(comps.items()) if p})

    def __sub__(self, other: "SphereFunction") -> "SphereFunction":
        return self + other.scaled(-1)

    def scaled(self, c) -> "SphereFunction":
        c = Fraction(c)
        if not c:
            return SphereFunction(self.n, {})
        return SphereFunction(self.n, {d: P.scale(p, c) for d, p in self.components.items()})

    def spectral_map(self, multiplier) -> "SphereFunction":
        """Scale each degree-d component by ``multiplier(d)``."""
        comps = {}
        for d, p in self.components.items():
            c = multiplier(d)
            if c:
                comps[d] = P.scale(p, c)
        return SphereFunction(self.n, comps)

    def leading_coefficient(self) -> Optional[Fraction]:
        """First nonzero coefficient in canonical order; ``None`` for zero."""
        for d in sorted(self.components):
            p = self.components[d]
            return p[min(p)]
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "components": [
                {"degree": d, "poly": P.to_json(p)} for d, p in sorted(self.components.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "SphereFunction":
        n = int(doc["n"])
        total: P.Poly = {}
        for comp in doc.get("components", []):
            p = P.from_json(comp["poly"], n + 1)
            if "degree" in comp and not P.is_homogeneous(p, int(comp["degree"])):
                raise ValueError(f"component is not homogeneous of degree {comp['degree']}")
            P.add_scaled(total, p, 1)
        return cls.from_polynomial(total, n)

    @classmethod
    def from_json(cls, text: str) -> "SphereFunction":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        if not self.components:
            return "0"
        return " + ".join(f"[{P.to_str(p)}]_{d}" for d, p in sorted(self.components.items()))


def _check_same_n(u: SphereFunction, v: SphereFunction) -> None:
    if u.n != v.n:
        raise ValueError(f"sphere dimensions differ: {u.n} vs {v.n}")


def sphere_multiply(u: SphereFunction, v: SphereFunction) -> SphereFunction:
    _check_same_n(u, v)
    total: P.Poly = {}
    for p in u.components.values():
        for q in v.components.values():
            P.add_scaled(total, P.mul(p, q), 1)
    return SphereFunction.from_polynomial(total, u.n)


def laplace_beltrami(u: SphereFunction) -> SphereFunction:
    return u.spectral_map(lambda d: laplacian_eigenvalue(d, u.n))


def shifted_laplacian(r: int, w, u: SphereFunction) -> SphereFunction:
    return u.spectral_map(lambda d: shifted_eigenvalue(r, w, d, u.n))


def integrate(u: SphereFunction) -> Fraction:
    """Normalized integral: the constant component of the canonical form."""
    c = u.components.get(0)
    return next(iter(c.values())) if c else Fraction(0)


def pair_average(p: P.Poly, q: P.Poly) -> Fraction:
    """Normalized sphere integral of p*q, without forming the product."""
    total = Fraction(0)
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            a = P.monomial_sphere_average(tuple(x + y for x, y in zip(m1, m2)))
            if a:
                total += c1 * c2 * a
    return total


def _products_by_degree(u: SphereFunction, v: SphereFunction):
    """{(d1, d2): {e: P_e}} with u_{d1} v_{d2} = sum_e P_e on the sphere."""
    out = {}
    for d1, p in u.components.items():
        for d2, q in v.components.items():
            prod = SphereFunction.from_polynomial(P.mul(p, q), u.n)
            out[(d1, d2)] = prod.components
    return out


def or_multiplier(table: CoeffTable, e: int, d1: int, d2: int) -> Fraction:
    """Eigenvalue of the intrinsic operator on (degree-e part of) h_{d1} h_{d2}.

    sum_{s,t} multinom(k;s,t) a_{s,t} L_{k-s-t; w1+w2-2s-2t}(e) L_{s;w1}(d1) L_{t;w2}(d2)
    """
    cfg = table.config
    n, k, w1, w2 = cfg.n, cfg.k, cfg.w1, cfg.w2
    total = Fraction(0)
    for (s, t), a in table.entries.items():
        if not a:
            continue
        total += (
            multinomial(k, s, t)
            * a
            * shifted_eigenvalue(k - s - t, w1 + w2 - 2 * s - 2 * t, e, n)
            * shifted_eigenvalue(s, w1, d1, n)
            * shifted_eigenvalue(t, w2, d2, n)
        )
    return total


def evaluate_or_operator(table: CoeffTable, u: SphereFunction, v: SphereFunction) -> SphereFunction:
    """sum multinom(k;s,t) a_{s,t} L_{k-s-t; w1+w2-2s-2t}(L_{s;w1}u * L_{t;w2}v)."""
    _check_same_n(u, v)
    if table.config.n != u.n:
        raise ValueError("table dimension does not match the inputs")
    comps: Dict[int, P.Poly] = {}
    for (d1, d2), parts in _products_by_degree(u, v).items():
        for e, p in parts.items():
            P.add_scaled(comps.setdefault(e, {}), p, or_multiplier(table, e, d1, d2))
    return SphereFunction(u.n, {d: p for d, p in sorted(comps.items()) if p})


def linear_weight(n: int, k: int, ell) -> Fraction:
    """Input weight -(n - 2k - 2 ell)/2 of the linear operator."""
    return -Fraction(n - 2 * k - 2 * Fraction(ell), 2)


def linear_multiplier(coeffs: LinearCoeffTable, n: int, e: int, df: int, d: int) -> Fraction:
    """sum_s b_s L_{k-s; w-2ell-2s}(e) L_{s;w}(d) for the linear operator."""
    k, ell = coeffs.k, coeffs.ell
    w = linear_weight(n, k, ell)
    total = Fraction(0)
    for s, b in enumerate(coeffs.entries):
        if b:
            total += (
                b
                * shifted_eigenvalue(k - s, w - 2 * ell - 2 * s, e, n)
                * shifted_eigenvalue(s, w, d, n)
            )
    return total


def evaluate_linear_operator(
    coeffs: LinearCoeffTable, n: int, f: SphereFunction, u: SphereFunction
) -> SphereFunction:
    """D_f(u) = sum_s b_s L_{k-s; w-2ell-2s}(f L_{s;w}(u)), w = -(n-2k-2ell)/2."""
    _check_same_n(f, u)
    comps: Dict[int, P.Poly] = {}
    for (df, d), parts in _products_by_degree(f, u).items():
        for e, p in parts.items():
            P.add_scaled(comps.setdefault(e, {}), p, linear_multiplier(coeffs, n, e, df, d))
    return SphereFunction(n, {d: p for d, p in sorted(comps.items()) if p})


def triple_integrals(u: SphereFunction, v: SphereFunction, w: SphereFunction):
    """{(a, b, c): integral of u_a v_b w_c} over nonvanishing degree triples."""
    out = {}
    for a, p in u.components.items():
        for b, q in v.components.items():
            pq = None
            for c, r in w.components.items():
                # parity and triangle inequality kill the rest
                if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
                    continue
                if pq is None:
                    pq = P.mul(p, q)
                val = pair_average(pq, r)
                if val:
                    out[(a, b, c)] = val
    return out


def dirichlet_form(table: CoeffTable, u: SphereFunction, v: SphereFunction, w: SphereFunction) -> Fraction:
    """Normalized integral of u * D(v (x) w).

    Uses orthogonality of harmonics of different degree: only the degree-a
    part of D(v_b w_c) pairs with u_a, and that part is the spectral
    multiplier times the degree-a part of v_b w_c.
    """
    total = Fraction(0)
    for (a, b, c), val in triple_integrals(u, v, w).items():
        total += or_multiplier(table, a, b, c) * val
    return total


def random_sphere_function(n: int, max_degree: int, rng: random.Random, terms: int = 2) -> SphereFunction:
    """Pseudorandom canonical function with one harmonic component per degree.

    Coefficients are drawn uniformly from {-3..3}/{1..4}; each component is
    the harmonic projection of a sparse random homogeneous polynomial.
    """
    nvars = n + 1
    comps = {}
    for d in range(max_degree + 1):
        p: P.Poly = {}
        for _ in range(terms):
            exps = [0] * nvars
            for _ in range(d):
                exps[rng.randrange(nvars)] += 1
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            P.add_scaled(p, {tuple(exps): Fraction(1)}, c)
        h = harmonic_projection(p, d, nvars)
        if h:
            comps[d] = h
    return SphereFunction(n, comps)


def standard_harmonic(n: int, d: int, variant: int = 0) -> SphereFunction:
    """Simple named harmonics used as structured test inputs.

    variant 0: 1, x0, x0 x1, x0 x1 x2 ...; variant 1: 1, x1, x0^2 - x1^2, ...
    Higher degrees fall back to the harmonic projection of x0^d (variant 1)
    or of a product of distinct coordinates.
    """
    nvars = n + 1
    if d == 0:
        return SphereFunction.constant(1, n)
    if variant == 0:
        exps = [0] * nvars
        for i in range(d):
            exps[i % nvars] += 1
        p = {tuple(exps): Fraction(1)}
    elif d == 1:
        p = P.variable(1 % nvars, nvars)
    else:
        p = P.monomial([d] + [0] * (nvars - 1))
    return SphereFunction(n, {d: harmonic_projection(p, d, nvars)})


def sphere_function_from_terms(n: int, terms: Iterable) -> SphereFunction:
    """Build from ``[(coeff, exps), ...]``; a convenience for tests and scripts."""
    p: P.Poly = {}
    for c, exps in terms:
        P.add_scaled(p, {tuple(exps): Fraction(1)}, parse_rational(c))
    return SphereFunction.from_polynomial(p, n)


__all__ = [
    "HarmonicPolynomial",
    "SphereFunction",
    "dirichlet_form",
    "evaluate_linear_operator",
    "evaluate_or_operator",
    "harmonic_decompose",
    "harmonic_projection",
    "integrate",
    "laplace_beltrami",
    "random_sphere_function",
    "shifted_laplacian",
    "sphere_multiply",
]

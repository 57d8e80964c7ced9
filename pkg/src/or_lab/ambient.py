"""Exact calculus on flat Minkowski space R^{n+1,1}, the ambient space of S^n.

Coordinates are x^0..x^n and tau, with metric -dtau^2 + dx^2, so the ambient
Laplacian is sum_i d^2/d(x^i)^2 - d^2/dtau^2.  An element is a finite sum of
terms tau^a p(x) with p homogeneous; exponents a may be any rational since
tau is only ever set to 1.  The null cone is |x|^2 = tau^2 and the sphere is
its section tau = 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import poly as P
from .coeffs import CoeffTable, LinearCoeffTable
from .rational import format_rational, multinomial
from .sphere import SphereFunction, linear_weight

TermKey = Tuple[Fraction, int]  # (tau exponent, x-degree)


@dataclass(frozen=True)
class AmbientElement:
    n: int
    terms: Dict[TermKey, P.Poly] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, n: int, pieces) -> "AmbientElement":
        """Normalize ``[(a, poly), ...]``, splitting polys by degree."""
        terms: Dict[TermKey, P.Poly] = {}
        for a, p in pieces:
            a = Fraction(a)
            for d, part in P.homogeneous_parts(p).items():
                P.add_scaled(terms.setdefault((a, d), {}), part, 1)
        return cls(n, {key: p for key, p in terms.items() if p})

    @classmethod
    def tau_power(cls, n: int, a, p: Optional[P.Poly] = None) -> "AmbientElement":
        if p is None:
            p = P.constant(1, n + 1)
        return cls.from_terms(n, [(a, p)])

    @property
    def nvars(self) -> int:
        return self.n + 1

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AmbientElement") -> "AmbientElement":
        return _combine(self, other, 1)

    def __sub__(self, other: "AmbientElement") -> "AmbientElement":
        return _combine(self, other, -1)

    def scaled(self, c) -> "AmbientElement":
        c = Fraction(c)
        if not c:
            return AmbientElement(self.n, {})
        return AmbientElement(self.n, {key: P.scale(p, c) for key, p in self.terms.items()})

    def to_dict(self) -> list:
        return [
            {"tau_exp": format_rational(a), "poly": P.to_json(p)}
            for (a, d), p in sorted(self.terms.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _combine(e1: AmbientElement, e2: AmbientElement, sign) -> AmbientElement:
    if e1.n != e2.n:
        raise ValueError("ambient dimensions differ")
    terms = {key: dict(p) for key, p in e1.terms.items()}
    for key, p in e2.terms.items():
        P.add_scaled(terms.setdefault(key, {}), p, sign)
    return AmbientElement(e1.n, {key: p for key, p in terms.items() if p})


def ambient_laplacian(e: AmbientElement) -> AmbientElement:
    """Lap(tau^a p) = tau^a Lap_x p - a(a-1) tau^(a-2) p."""
    terms: Dict[TermKey, P.Poly] = {}
    for (a, d), p in e.terms.items():
        if d >= 2:
            lap = P.laplacian(p)
            if lap:
                P.add_scaled(terms.setdefault((a, d - 2), {}), lap, 1)
        c = a * (a - 1)
        if c:
            P.add_scaled(terms.setdefault((a - 2, d), {}), p, -c)
    return AmbientElement(e.n, {key: p for key, p in terms.items() if p})


def ambient_laplacian_power(e: AmbientElement, r: int) -> AmbientElement:
    for _ in range(r):
        if e.is_zero():
            break
        e = ambient_laplacian(e)
    return e


def ambient_multiply(e1: AmbientElement, e2: AmbientElement) -> AmbientElement:
    if e1.n != e2.n:
        raise ValueError("ambient dimensions differ")
    terms: Dict[TermKey, P.Poly] = {}
    for (a1, d1), p1 in e1.terms.items():
        for (a2, d2), p2 in e2.terms.items():
            P.add_scaled(terms.setdefault((a1 + a2, d1 + d2), {}), P.mul(p1, p2), 1)
    return AmbientElement(e1.n, {key: p for key, p in terms.items() if p})


def euler_weight(e: AmbientElement) -> Optional[Fraction]:
    """The common value of a + d over all terms, if there is one."""
    weights = {a + d for a, d in e.terms}
    if len(weights) == 1:
        return weights.pop()
    return None


def defining_function(n: int) -> AmbientElement:
    """Q = |x|^2 - tau^2."""
    nvars = n + 1
    return AmbientElement.from_terms(
        n, [(0, P.norm_squared(nvars)), (2, P.constant(-1, nvars))]
    )


def q_multiply(e: AmbientElement) -> AmbientElement:
    return ambient_multiply(defining_function(e.n), e)


def coordinate(n: int, i: int) -> AmbientElement:
    return AmbientElement.tau_power(n, 0, P.variable(i, n + 1))


def harmonic_extend(u: SphereFunction, w) -> AmbientElement:
    """Send each degree-d harmonic h_d to tau^(w-d) h_d(x)."""
    w = Fraction(w)
    return AmbientElement(u.n, {(w - d, d): dict(p) for d, p in u.components.items()})


def einstein_extend(u: SphereFunction, w, order: int) -> AmbientElement:
    """Extension by |x|^(w-d) h_d, truncated modulo Q^(order+1).

    |x|^a = tau^a (1 + Q/tau^2)^(a/2) = sum_m binom(a/2, m) Q^m tau^(a-2m).
    This is the extension that is constant along the Einstein ambient
    coordinates, so the intrinsic eigenvalue formulas apply to it exactly.
    An operator of order at most 2*order cannot see the dropped terms.
    """
    w = Fraction(w)
    n = u.n
    q = defining_function(n)
    pieces = AmbientElement(n, {})
    q_power = AmbientElement.tau_power(n, 0)
    for m in range(order + 1):
        if m:
            q_power = ambient_multiply(q_power, q)
        for d, h in u.components.items():
            c = _general_binomial((w - d) / 2, m)
            if c:
                term = ambient_multiply(q_power, AmbientElement.tau_power(n, w - d - 2 * m, h))
                pieces = pieces + term.scaled(c)
    return pieces


def _general_binomial(x: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out = out * (x - i) / (i + 1)
    return out


def cone_restrict(e: AmbientElement) -> SphereFunction:
    """Set tau = 1 and reduce on |x| = 1."""
    total: P.Poly = {}
    for p in e.terms.values():
        P.add_scaled(total, p, 1)
    return SphereFunction.from_polynomial(total, e.n)


def _nested_laplacian_sum(layers, n: int) -> AmbientElement:
    """sum_r Lap^r layers[r], evaluated Horner-style."""
    acc = AmbientElement(n, {})
    for layer in reversed(layers):
        acc = ambient_laplacian(acc) + layer if not acc.is_zero() else layer
    return acc


def laplacian_powers(e: AmbientElement, r: int) -> list:
    """[e, Lap e, ..., Lap^r e]."""
    out = [e]
    for _ in range(r):
        out.append(ambient_laplacian(out[-1]))
    return out


def bidifferential_from_powers(table: CoeffTable, u_pows, v_pows) -> AmbientElement:
    """The operator given precomputed Laplacian powers of both arguments."""
    k = table.config.k
    n = u_pows[0].n
    layers = []
    for r in range(k + 1):
        layer = AmbientElement(n, {})
        for s in range(k - r + 1):
            t = k - r - s
            a = table[(s, t)]
            if a:
                prod = ambient_multiply(u_pows[s], v_pows[t])
                layer = layer + prod.scaled(multinomial(k, s, t) * a)
        layers.append(layer)
    return _nested_laplacian_sum(layers, n)


def restricted_term_responses(k: int, u_pows, v_pows) -> dict:
    """{(s,t): restriction of multinom(k;s,t) Lap^{k-s-t}((Lap^s u)(Lap^t v))}.

    The operator is linear in its table, so any table's output is
    sum a[s,t] * responses[(s,t)].
    """
    out = {}
    for s in range(k + 1):
        for t in range(k - s + 1):
            prod = ambient_multiply(u_pows[s], v_pows[t])
            term = ambient_laplacian_power(prod, k - s - t).scaled(multinomial(k, s, t))
            out[(s, t)] = cone_restrict(term)
    return out


def combine_responses(table: CoeffTable, responses: dict) -> SphereFunction:
    n = next(iter(responses.values())).n
    total = SphereFunction(n, {})
    for st, r in responses.items():
        a = table[st]
        if a:
            total = total + r.scaled(a)
    return total


def bidifferential_ambient(table: CoeffTable, ue: AmbientElement, ve: AmbientElement) -> AmbientElement:
    """sum multinom(k;s,t) a_{s,t} Lap^{k-s-t}((Lap^s ue)(Lap^t ve)), before restriction."""
    k = table.config.k
    return bidifferential_from_powers(table, laplacian_powers(ue, k), laplacian_powers(ve, k))


def apply_bidifferential_ambient(table: CoeffTable, u: SphereFunction, v: SphereFunction) -> SphereFunction:
    cfg = table.config
    if u.n != cfg.n or v.n != cfg.n:
        raise ValueError("table dimension does not match the inputs")
    ue = harmonic_extend(u, cfg.w1)
    ve = harmonic_extend(v, cfg.w2)
    return cone_restrict(bidifferential_ambient(table, ue, ve))


def linear_operator_ambient(
    coeffs: LinearCoeffTable, fe: AmbientElement, ue: AmbientElement
) -> AmbientElement:
    """sum_s b_s Lap^{k-s}(fe Lap^s ue), before restriction."""
    k = coeffs.k
    u_pows = laplacian_powers(ue, k)
    layers = []
    for r in range(k + 1):
        b = coeffs.entries[k - r]
        if b:
            layers.append(ambient_multiply(fe, u_pows[k - r]).scaled(b))
        else:
            layers.append(AmbientElement(ue.n, {}))
    return _nested_laplacian_sum(layers, ue.n)


def apply_linear_ambient(
    coeffs: LinearCoeffTable, n: int, f: SphereFunction, u: SphereFunction, f_extension: str = "einstein"
) -> SphereFunction:
    """The linear operator through the flat ambient space.

    The operator is tangential in u but depends on how f is extended off the
    cone.  ``"einstein"`` extends f by |x|^(-2 ell - d) h_d, which is the
    extension the intrinsic formula uses; ``"harmonic"`` uses tau^(-2 ell - d) h_d
    and in general gives a different (equally natural) operator.
    """
    w = linear_weight(n, coeffs.k, coeffs.ell)
    if f_extension == "einstein":
        fe = einstein_extend(f, -2 * coeffs.ell, coeffs.k)
    elif f_extension == "harmonic":
        fe = harmonic_extend(f, -2 * coeffs.ell)
    else:
        raise ValueError(f"unknown extension {f_extension!r}")
    ue = harmonic_extend(u, w)
    return cone_restrict(linear_operator_ambient(coeffs, fe, ue))

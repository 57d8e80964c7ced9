"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``nvars`` variables is a plain ``dict`` mapping exponent
tuples to nonzero :class:`fractions.Fraction` coefficients.  The functions
here never mutate their arguments, so polynomials can be shared freely.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]


def zero() -> Poly:
    return {}


def constant(c, nvars: int) -> Poly:
    c = Fraction(c)
    return {(0,) * nvars: c} if c else {}


def variable(i: int, nvars: int) -> Poly:
    exps = [0] * nvars
    exps[i] = 1
    return {tuple(exps): Fraction(1)}


def monomial(exps: Iterable[int], coeff=1) -> Poly:
    coeff = Fraction(coeff)
    return {tuple(exps): coeff} if coeff else {}


def norm_squared(nvars: int) -> Poly:
    """|x|^2 = sum_i (x^i)^2."""
    out = {}
    for i in range(nvars):
        exps = [0] * nvars
        exps[i] = 2
        out[tuple(exps)] = Fraction(1)
    return out


def degree(p: Poly) -> int:
    return max((sum(m) for m in p), default=0)


def is_homogeneous(p: Poly, d: int) -> bool:
    return all(sum(m) == d for m in p)


def homogeneous_parts(p: Poly) -> Dict[int, Poly]:
    parts: Dict[int, Poly] = {}
    for m, c in p.items():
        parts.setdefault(sum(m), {})[m] = c
    return parts


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def add_scaled(acc: Poly, p: Poly, c) -> None:
    """In-place ``acc += c * p``; only for accumulators owned by the caller."""
    if not c:
        return
    for m, v in p.items():
        s = acc.get(m, 0) + c * v
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


def scale(p: Poly, c) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def laplacian(p: Poly) -> Poly:
    """Flat Laplacian sum_i d^2/d(x^i)^2."""
    out: Poly = {}
    for m, c in p.items():
        for i, e in enumerate(m):
            if e >= 2:
                mm = m[:i] + (e - 2,) + m[i + 1:]
                s = out.get(mm, 0) + c * e * (e - 1)
                if s:
                    out[mm] = s
                else:
                    del out[mm]
    return out


def laplacian_power(p: Poly, j: int) -> Poly:
    for _ in range(j):
        if not p:
            break
        p = laplacian(p)
    return p


def mul_norm_squared_power(p: Poly, j: int, nvars: int) -> Poly:
    """|x|^{2j} * p."""
    r2 = norm_squared(nvars)
    for _ in range(j):
        p = mul(p, r2)
    return p


def evaluate(p: Poly, point) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def _double_factorial_odd(e: int) -> int:
    """(e-1)!! for even e >= 0."""
    out = 1
    for j in range(e - 1, 0, -2):
        out *= j
    return out


@lru_cache(maxsize=None)
def monomial_sphere_average(exps: Monomial) -> Fraction:
    """Normalized integral of x^exps over the unit sphere in R^len(exps).

    Zero unless every exponent is even; otherwise
    prod_i (e_i - 1)!! / prod_{m=0}^{|e|/2 - 1} (N + 2m).
    """
    if any(e % 2 for e in exps):
        return Fraction(0)
    nvars = len(exps)
    num = 1
    for e in exps:
        num *= _double_factorial_odd(e)
    den = 1
    for m in range(sum(exps) // 2):
        den *= nvars + 2 * m
    return Fraction(num, den)


def sphere_average(p: Poly) -> Fraction:
    return sum((c * monomial_sphere_average(m) for m, c in p.items()), Fraction(0))


def to_json(p: Poly) -> Dict[str, str]:
    from .rational import format_rational

    return {",".join(map(str, m)): format_rational(c) for m, c in sorted(p.items())}


def from_json(data: Dict[str, str], nvars: int) -> Poly:
    from .rational import parse_rational

    out: Poly = {}
    for key, value in data.items():
        exps = tuple(int(e) for e in key.split(",")) if key else ()
        if len(exps) != nvars:
            raise ValueError(f"monomial {key!r} does not have {nvars} exponents")
        c = parse_rational(value)
        if c:
            out[exps] = out.get(exps, 0) + c
    return {m: c for m, c in out.items() if c}


def to_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in sorted(p.items(), reverse=True):
        factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        mono = "*".join(factors)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")

"""Executable exact checks of the operator identities, with JSON reports.

Every check compares two exact rational objects.  A case passes only when
their difference is identically zero; otherwise the report carries the
leading coefficient of that difference as a witness.

Cases are independent.  Setting the environment variable ``OR_LAB_THREADS``
to an integer above 1 runs them in a process pool of that size; the report
is identical either way because cases are sorted before serialization.
"""
from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import ambient as A
from . import poly as P
from .coeffs import (
    CoeffTable,
    Normalization,
    WeightConfig,
    basis_tables,
    closed_form_entries,
    linear_operator_coeffs,
    recursion_equations,
    simplex,
    symmetric_operator_table,
)
from .rational import format_rational, multinomial, parse_rational
from .sphere import (
    SphereFunction,
    dirichlet_form,
    evaluate_linear_operator,
    evaluate_or_operator,
    integrate,
    random_sphere_function,
    shifted_eigenvalue,
    sphere_multiply,
    standard_harmonic,
)

SPHERE_RESTRICTED = "sphere-restricted evidence"
CONJECTURE = "conjecture-exploration"


@dataclass(frozen=True)
class CaseResult:
    config: dict
    input: str
    passed: bool
    witness: Optional[Fraction] = None

    def sort_key(self) -> Tuple[str, str]:
        return json.dumps(self.config, sort_keys=True), self.input

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "input": self.input,
            "pass": self.passed,
            "witness": None if self.witness is None else format_rational(self.witness),
        }


@dataclass
class VerificationReport:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.cases = sorted(self.cases, key=CaseResult.sort_key)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        doc = {
            "suite": self.suite,
            "passed": self.all_passed,
            "cases": [c.to_dict() for c in self.cases],
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def _case(config: dict, descriptor: str, difference) -> CaseResult:
    """Build a case from an exact difference (Fraction or SphereFunction)."""
    if isinstance(difference, SphereFunction):
        witness = difference.leading_coefficient()
    else:
        witness = Fraction(difference) if difference else None
    return CaseResult(config, descriptor, witness is None, witness)


def thread_count() -> int:
    raw = os.environ.get("OR_LAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run(worker: Callable, jobs: Sequence) -> List[CaseResult]:
    """Map a module-level worker over jobs, in parallel if requested."""
    threads = thread_count()
    if threads <= 1 or len(jobs) < 2:
        out = []
        for job in jobs:
            out.extend(worker(job))
        return out
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return [c for chunk in pool.map(worker, jobs) for c in chunk]


# ---------------------------------------------------------------- inputs

def harmonic_inputs(n: int, max_degree: int) -> List[Tuple[str, SphereFunction]]:
    """Named harmonic test inputs: two shapes per positive degree."""
    out = [("1", standard_harmonic(n, 0))]
    for d in range(1, max_degree + 1):
        for variant in (0, 1):
            u = standard_harmonic(n, d, variant)
            if all(u.components != prev.components for _, prev in out):
                out.append((f"h{d}.{variant}", u))
    return out


def _table_descriptor(table: CoeffTable) -> dict:
    doc = dict(table.config.to_dict())
    doc["basis"] = table.basis_index
    doc["normalization"] = table.normalization.value
    return doc


# ---------------------------------------------------------- tangentiality

def recursion_residuals(table: CoeffTable) -> List[Tuple[Tuple[int, int], Fraction]]:
    """Nonzero residuals cp*a[p] + cq*a[q] of the tangency recursion."""
    out = []
    for p, cp, q, cq in recursion_equations(table.config):
        r = cp * table[p] + cq * table[q]
        if r:
            out.append((p, r))
    return out


def perturbation_sources(n: int, w) -> List[Tuple[str, A.AmbientElement]]:
    """Homogeneous ambient functions of weight w - 2, multiplied by Q."""
    nvars = n + 1
    w = Fraction(w)
    x0 = P.variable(0, nvars)
    polys = [("1", P.constant(1, nvars)), ("x0", x0)]
    if nvars > 1:
        polys.append(("x0*x1", P.mul(x0, P.variable(1, nvars))))
    polys.append(("x0^2", P.mul(x0, x0)))
    out = []
    for name, p in polys:
        d = P.degree(p)
        source = A.AmbientElement.tau_power(n, w - 2 - d, p)
        out.append((f"Q*tau^({format_rational(w - 2 - d)})*{name}", A.q_multiply(source)))
    return out


@lru_cache(maxsize=16)
def _tangentiality_responses(config: WeightConfig, max_degree: int):
    """Restricted (s,t)-term responses for every perturbation/input pair.

    These depend only on the weights, so every table at ``config`` (basis or
    perturbed) is checked by combining them with its entries.
    """
    k = config.k
    inputs = harmonic_inputs(config.n, max_degree)
    out = []
    for slot, w_pert, w_other in ((1, config.w1, config.w2), (2, config.w2, config.w1)):
        others = [(name, A.laplacian_powers(A.harmonic_extend(v, w_other), k)) for name, v in inputs]
        for pname, pert in perturbation_sources(config.n, w_pert):
            pp = A.laplacian_powers(pert, k)
            for vname, vp in others:
                pair = (pp, vp) if slot == 1 else (vp, pp)
                out.append((f"slot{slot}:{pname};other={vname}", A.restricted_term_responses(k, *pair)))
    return out


def _tangentiality_job(job) -> List[CaseResult]:
    tables, max_degree = job
    responses = _tangentiality_responses(tables[0].config, max_degree)
    cases = []
    for table in tables:
        desc = _table_descriptor(table)
        residuals = recursion_residuals(table)
        if residuals:
            (s, t), r = residuals[0]
            cases.append(CaseResult(desc, f"recursion at ({s},{t})", False, r))
        else:
            cases.append(CaseResult(desc, "recursion", True))
        for name, resp in responses:
            cases.append(_case(desc, name, A.combine_responses(table, resp)))
    return cases


def verify_tangentiality(config: WeightConfig, max_degree: int, tables=None) -> VerificationReport:
    """Recursion check plus Q-perturbation invariance in both slots.

    Adding Q*s to an extension changes the cone restriction of the operator
    by the restriction of D(Q*s, v); tangency means that is always zero.
    ``tables`` overrides the basis, which is how perturbed tables are tested.
    """
    if tables is None:
        tables = basis_tables(config) if config.k > 0 else [_k0_table(config)]
    if not tables:
        return VerificationReport("tangentiality", [], {"tables": 0})
    threads = thread_count()
    chunks = [tables[i::threads] for i in range(threads)] if threads > 1 else [tables]
    cases = _run(_tangentiality_job, [(c, max_degree) for c in chunks if c])
    return VerificationReport("tangentiality", cases, {"tables": len(tables)})


def _k0_table(config: WeightConfig) -> CoeffTable:
    return CoeffTable(config, 1, {(0, 0): Fraction(1)}, Normalization.CORNER_ONE)


def perturbed_tables(table: CoeffTable, delta=1) -> List[Tuple[Tuple[int, int], CoeffTable]]:
    """Each single-entry perturbation a[s,t] -> a[s,t] + delta."""
    return [(st, table.with_entry(st, table[st] + delta)) for st in simplex(table.config.k)]


def perturbation_witnesses(table: CoeffTable, max_degree: int, delta=1) -> Dict[Tuple[int, int], Optional[Fraction]]:
    """For each perturbed entry, the first failure witness (None if still tangential)."""
    perturbed = perturbed_tables(table, delta)
    relabeled = [
        CoeffTable(t.config, i, t.entries, t.normalization) for i, (_, t) in enumerate(perturbed)
    ]
    report = verify_tangentiality(table.config, max_degree, tables=relabeled)
    first: Dict[int, Optional[Fraction]] = {i: None for i in range(len(relabeled))}
    for case in report.cases:
        i = case.config["basis"]
        if not case.passed and first[i] is None:
            first[i] = case.witness
    return {st: first[i] for i, (st, _) in enumerate(perturbed)}


# ------------------------------------------------------- cross agreement

def _cross_job(job) -> List[CaseResult]:
    table, max_degree = job
    desc = _table_descriptor(table)
    inputs = harmonic_inputs(table.config.n, max_degree)
    cases = []
    for uname, u in inputs:
        for vname, v in inputs:
            spectral = evaluate_or_operator(table, u, v)
            flat = A.apply_bidifferential_ambient(table, u, v)
            cases.append(_case(desc, f"u={uname};v={vname}", spectral - flat))
    return cases


def verify_cross_agreement(config: WeightConfig, max_degree: int, tables=None) -> VerificationReport:
    """Spectral formula on the sphere against the flat ambient computation."""
    n, k = config.n, config.k
    notes: Dict[str, object] = {}
    if tables is None:
        if 2 * k <= n:
            tables = basis_tables(config) if k > 0 else [_k0_table(config)]
            notes["regime"] = "k <= n/2"
        else:
            entries = closed_form_entries(config)
            tables = [CoeffTable(config, 1, entries, Normalization.PAPER_GAMMA)]
            notes["regime"] = "k > n/2 (closed-form table, flat model)"
    if k > 1:
        notes["prerequisite"] = "k=1 agreement underlies the higher-k spectral shortcut"
    cases = _run(_cross_job, [(t, max_degree) for t in tables])
    return VerificationReport("cross", cases, notes)


# ------------------------------------------------------------ commutator

def commutator_constant(n: int, k: int) -> Fraction:
    """The asserted constant -2k(n+2k-2)(n+k-3)/(n-2k)."""
    return Fraction(-2 * k * (n + 2 * k - 2) * (n + k - 3), n - 2 * k)


def rederived_commutator_constant(n: int, k: int) -> Fraction:
    """-2k(n+2k-2)(n+k-3)(n-2k)/36, the constant the exact computation finds.

    It differs from :func:`commutator_constant` by the factor (n-2k)^2/36,
    the square of the ratio Gamma(m/6+1)/Gamma(m/6) with m = n-2k.
    """
    return Fraction(-2 * k * (n + 2 * k - 2) * (n + k - 3) * (n - 2 * k), 36)


def lowered_operator_table(n: int, k: int) -> CoeffTable:
    """The order 2k-2 operator at weights (-(n-2k+3)/3, -(n-2k)/3)."""
    config = WeightConfig(n, k - 1, Fraction(-(n - 2 * k + 3), 3), Fraction(-(n - 2 * k), 3))
    if k == 1:
        return _k0_table(config)
    (table,) = basis_tables(config)
    return table


def commutator_sum(table: CoeffTable, u: SphereFunction, v: SphereFunction, path: str = "sphere") -> SphereFunction:
    """sum_i x^i [D, x^i](u (x) v) = sum_i x^i D(x^i u (x) v) - D(u (x) v)."""
    apply = _applier(path)
    n = u.n
    total = apply(table, u, v).scaled(-1)
    for i in range(n + 1):
        xi = SphereFunction.coordinate(i, n)
        total = total + sphere_multiply(xi, apply(table, sphere_multiply(xi, u), v))
    return total


def _applier(path: str):
    if path == "sphere":
        return evaluate_or_operator
    if path == "ambient":
        return A.apply_bidifferential_ambient
    raise ValueError(f"unknown evaluation path {path!r}")


def _commutator_job(job) -> List[CaseResult]:
    n, k, constant, uname, u, inputs, path = job
    table = symmetric_operator_table(n, k)
    lowered = lowered_operator_table(n, k)
    apply = _applier(path)
    desc = {"n": n, "k": k, "constant": format_rational(constant)}
    cases = []
    for vname, v in inputs:
        lhs = commutator_sum(table, u, v, path)
        rhs = apply(lowered, u, v).scaled(constant)
        cases.append(_case(desc, f"u={uname};v={vname}", lhs - rhs))
    return cases


def verify_commutator_identity(
    n: int, k: int, max_degree: int, constant=None, path: str = "sphere"
) -> VerificationReport:
    """sum_i x^i [D_{2k}, x^i] = c * D_{2k-2} on harmonic inputs.

    ``constant`` defaults to :func:`commutator_constant`.  The report notes
    both that value and the ratio actually observed, when the left side is
    an exact multiple of the right.
    """
    if n <= 2 * k:
        raise ValueError("the commutator identity needs n > 2k")
    c = commutator_constant(n, k) if constant is None else parse_rational(constant)
    inputs = harmonic_inputs(n, max_degree)
    jobs = [(n, k, c, uname, u, inputs, path) for uname, u in inputs]
    cases = _run(_commutator_job, jobs)
    notes = {
        "constant": format_rational(c),
        "observed_ratio": _observed_ratio(n, k, inputs, path),
        "path": path,
    }
    return VerificationReport("commutator", cases, notes)


def _observed_ratio(n, k, inputs, path) -> Optional[str]:
    """The common ratio lhs/rhs over all inputs, or None if there is none."""
    table = symmetric_operator_table(n, k)
    lowered = lowered_operator_table(n, k)
    apply = _applier(path)
    ratio = None
    for _, u in inputs:
        for _, v in inputs:
            lhs = commutator_sum(table, u, v, path)
            rhs = apply(lowered, u, v)
            if rhs.is_zero():
                if not lhs.is_zero():
                    return None
                continue
            r = lhs.leading_coefficient() / rhs.leading_coefficient()
            if ratio is None:
                ratio = r
            if r != ratio or not (lhs - rhs.scaled(r)).is_zero():
                return None
    return None if ratio is None else format_rational(ratio)


# ------------------------------------------------- formal self-adjointness

def _fsa_job(job) -> List[CaseResult]:
    table, trial, seed, max_degree = job
    n = table.config.n
    rng = random.Random(f"{seed}:{trial}")
    u, v, w = (random_sphere_function(n, max_degree, rng) for _ in range(3))
    desc = _table_descriptor(table)
    base = dirichlet_form(table, u, v, w)
    named = {"u": u, "v": v, "w": w}
    cases = []
    for perm in permutations("uvw"):
        if perm == ("u", "v", "w"):
            continue
        val = dirichlet_form(table, *(named[x] for x in perm))
        cases.append(_case(desc, f"seed={seed};trial={trial};perm={''.join(perm)}", val - base))
    return cases


def _transpose(table: CoeffTable) -> CoeffTable:
    entries = {(t, s): a for (s, t), a in table.entries.items()}
    return CoeffTable(table.config.swapped(), table.basis_index, entries, table.normalization)


def _swap_job(job) -> List[CaseResult]:
    table, trial, seed, max_degree = job
    n = table.config.n
    rng = random.Random(f"{seed}:{trial}")
    u, v, w = (random_sphere_function(n, max_degree, rng) for _ in range(3))
    diff = dirichlet_form(table, u, v, w) - dirichlet_form(_transpose(table), u, w, v)
    return [_case(_table_descriptor(table), f"seed={seed};trial={trial};swap", diff)]


def verify_formal_self_adjointness(
    config: WeightConfig, trials: int, max_degree: int, seed: int, explore: bool = False
) -> VerificationReport:
    """Permutation symmetry of T(u, v, w) = integral of u * D(v (x) w).

    For w1 = w2 = -(n-2k)/3 the operator is the symmetric one and all six
    permutations are compared.  For other equal weights each basis table
    is tested the same way.  For unequal weights only the slot swap
    T_D(u, v, w) = T_{D'}(u, w, v), with D' the transposed table, is tested.
    Orders k >= 4 run only with ``explore=True``.
    """
    n, k = config.n, config.k
    notes: Dict[str, object] = {"scope": SPHERE_RESTRICTED}
    if k >= 4:
        if not explore:
            raise ValueError("k >= 4 is exploratory; pass explore=True to run it")
        notes["tag"] = CONJECTURE
    if k == 0:
        tables = [_k0_table(config)]
    elif config.w1 == config.w2 == Fraction(-(n - 2 * k), 3):
        tables = [symmetric_operator_table(n, k)]
    else:
        tables = basis_tables(config)
    worker = _fsa_job if config.w1 == config.w2 else _swap_job
    jobs = [(t, trial, seed, max_degree) for t in tables for trial in range(trials)]
    return VerificationReport("fsa", _run(worker, jobs), notes)


def in_proven_range(k: int, ell) -> bool:
    return k <= Fraction(ell) + 3


def _linear_job(job) -> List[CaseResult]:
    n, k, ell, trial, seed, max_degree = job
    coeffs = linear_operator_coeffs(k, ell)
    rng = random.Random(f"{seed}:{trial}")
    f, u, v = (random_sphere_function(n, max_degree, rng) for _ in range(3))
    lhs = integrate(sphere_multiply(u, evaluate_linear_operator(coeffs, n, f, v)))
    rhs = integrate(sphere_multiply(v, evaluate_linear_operator(coeffs, n, f, u)))
    desc = {"n": n, "k": k, "ell": format_rational(ell)}
    return [_case(desc, f"seed={seed};trial={trial}", lhs - rhs)]


def verify_linear_fsa(n: int, k: int, ell, trials: int, max_degree: int, seed: int) -> VerificationReport:
    """integral u D_f(v) = integral v D_f(u) for pseudorandom f, u, v."""
    ell = parse_rational(ell)
    jobs = [(n, k, ell, trial, seed, max_degree) for trial in range(trials)]
    notes = {
        "scope": SPHERE_RESTRICTED,
        "range": "proven-range" if in_proven_range(k, ell) else "exploratory",
    }
    return VerificationReport("linear-fsa", _run(_linear_job, jobs), notes)


# ---------------------------------------------------------- GJMS reduction

def gjms_eigenvalue(n: int, k: int, d: int) -> Fraction:
    """prod_{m<k} -(a-2m)(a-2m-1) with a = -(n-2k)/2 - d."""
    a = Fraction(-(n - 2 * k), 2) - d
    out = Fraction(1)
    for m in range(k):
        out *= -(a - 2 * m) * (a - 2 * m - 1)
    return out


def gjms_config(n: int, k: int) -> WeightConfig:
    return WeightConfig(n, k, Fraction(-(n - 2 * k), 2), Fraction(0))


def gjms_scale(table: CoeffTable) -> Fraction:
    """With v = 1 only t = 0 terms survive and D(u (x) 1) = scale * Lap^k u."""
    k = table.config.k
    return sum((multinomial(k, s, 0) * table[(s, 0)] for s in range(k + 1)), Fraction(0))


def verify_gjms_reduction(n: int, k: int, max_degree: int) -> VerificationReport:
    """Both basis operators at (-(n-2k)/2, 0) act on u (x) 1 as scale * eigenvalue."""
    if n <= 2 * k:
        raise ValueError("the reduction check needs n > 2k")
    config = gjms_config(n, k)
    tables = basis_tables(config)
    one = SphereFunction.constant(1, n)
    cases = []
    scales = {}
    for table in tables:
        scale = gjms_scale(table)
        scales[str(table.basis_index)] = format_rational(scale)
        desc = _table_descriptor(table)
        for uname, u in harmonic_inputs(n, max_degree):
            (d,) = u.components
            expected = u.scaled(scale * gjms_eigenvalue(n, k, d))
            got = evaluate_or_operator(table, u, one)
            cases.append(_case(desc, f"u={uname};path=sphere", got - expected))
            got = A.apply_bidifferential_ambient(table, u, one)
            cases.append(_case(desc, f"u={uname};path=ambient", got - expected))
    return VerificationReport("gjms", cases, {"scales": scales})


def shifted_power_eigenvalue(n: int, k: int, d: int) -> Fraction:
    """Eigenvalue of L_{k;-(n-2k)/2} on degree d, an independent route to the same number."""
    return shifted_eigenvalue(k, Fraction(-(n - 2 * k), 2), d, n)


SUITES = ("tangentiality", "cross", "commutator", "fsa", "linear-fsa", "gjms")

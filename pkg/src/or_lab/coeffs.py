"""Weight-space classification and exact coefficient tables.

An operator of the family is stored as its coefficients ``a[s, t]`` over the
simplex ``s, t >= 0, s + t <= k``; the multinomial weight ``k!/((k-s-t)! s! t!)``
is applied at evaluation time.  A table is tangential exactly when it solves
the two first-order recursions checked by :func:`check_recursion`.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .rational import (
    binomial,
    format_rational,
    is_nonneg_integer,
    parse_rational,
    pochhammer,
)

Index = Tuple[int, int]


class ClassificationError(ValueError):
    """Raised when a configuration matches none of the classified cases."""


class PropagationError(ArithmeticError):
    """Raised when the recursions cannot determine a table from its seeds."""


class Case(enum.Enum):
    # one-dimensional spaces
    AT_MOST_ONE_EXCEPTIONAL = "1d-a"
    BOTH_INPUTS_LOW_SUM = "1d-b"
    FIRST_INPUT_AND_OUTPUT_HIGH = "1d-c"
    SECOND_INPUT_AND_OUTPUT_HIGH = "1d-d"
    # two-dimensional spaces
    BOTH_INPUTS = "2d-1"
    FIRST_INPUT_AND_OUTPUT = "2d-2"
    SECOND_INPUT_AND_OUTPUT = "2d-3"
    # the critical case n = 2k, w1 = w2 = 0
    CRITICAL = "3d"


class Normalization(enum.Enum):
    PAPER_GAMMA = "paper-gamma"
    CORNER_ONE = "corner-one"


@dataclass(frozen=True)
class WeightConfig:
    """Dimension ``n``, half-order ``k`` and the two input density weights."""

    n: int
    k: int
    w1: Fraction
    w2: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        object.__setattr__(self, "w1", parse_rational(self.w1))
        object.__setattr__(self, "w2", parse_rational(self.w2))

    @property
    def shift(self) -> Fraction:
        """(n - 2k)/2, the offset shared by the exceptional weight sets."""
        return Fraction(self.n - 2 * self.k, 2)

    @property
    def output_weight(self) -> Fraction:
        return self.w1 + self.w2 - 2 * self.k

    def swapped(self) -> "WeightConfig":
        return WeightConfig(self.n, self.k, self.w2, self.w1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "w1": format_rational(self.w1),
            "w2": format_rational(self.w2),
        }


def input_exception_index(config: WeightConfig, w) -> Optional[int]:
    """The ``i`` with ``w = -(n-2k)/2 - i``, 0 <= i <= k-1, if there is one."""
    i = -config.shift - Fraction(w)
    if is_nonneg_integer(i) and i < config.k:
        return int(i)
    return None


def output_exception_index(config: WeightConfig, w) -> Optional[int]:
    """The ``j`` with ``w = -(n-2k)/2 + j``, 0 <= j <= k-1, if there is one."""
    j = Fraction(w) + config.shift
    if is_nonneg_integer(j) and j < config.k:
        return int(j)
    return None


@dataclass(frozen=True)
class SpaceClassification:
    dimension: int
    case: Case
    i: Optional[int] = None
    j: Optional[int] = None
    w1_exceptional: bool = False
    w2_exceptional: bool = False
    sum_exceptional: bool = False

    @property
    def generic(self) -> bool:
        return not (self.w1_exceptional or self.w2_exceptional or self.sum_exceptional)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "case": self.case.value,
            "i": self.i,
            "j": self.j,
            "w1_exceptional": self.w1_exceptional,
            "w2_exceptional": self.w2_exceptional,
            "sum_exceptional": self.sum_exceptional,
        }


def classify(config: WeightConfig) -> SpaceClassification:
    n, k = config.n, config.k
    if 2 * k > n:
        raise ClassificationError(f"k={k} exceeds n/2 for n={n}; no classified case applies")
    i1 = input_exception_index(config, config.w1)
    i2 = input_exception_index(config, config.w2)
    j = output_exception_index(config, config.w1 + config.w2)
    flags = dict(
        w1_exceptional=i1 is not None,
        w2_exceptional=i2 is not None,
        sum_exceptional=j is not None,
    )
    count = sum(flags.values())

    if count <= 1:
        if i1 is not None:
            return SpaceClassification(1, Case.AT_MOST_ONE_EXCEPTIONAL, i=i1, **flags)
        if i2 is not None:
            return SpaceClassification(1, Case.AT_MOST_ONE_EXCEPTIONAL, i=i2, **flags)
        return SpaceClassification(1, Case.AT_MOST_ONE_EXCEPTIONAL, j=j, **flags)

    if count == 3:
        if not (2 * k == n and config.w1 == 0 and config.w2 == 0):
            raise ClassificationError(f"all three weights exceptional at {config}")
        return SpaceClassification(3, Case.CRITICAL, i=0, j=0, **flags)

    if j is None:
        # both inputs exceptional
        if config.w1 + config.w2 + n <= k:
            return SpaceClassification(1, Case.BOTH_INPUTS_LOW_SUM, i=i1, j=i2, **flags)
        return SpaceClassification(2, Case.BOTH_INPUTS, i=i1, j=i2, **flags)
    if i1 is not None:
        if config.w2 >= k:
            return SpaceClassification(1, Case.FIRST_INPUT_AND_OUTPUT_HIGH, i=i1, j=j, **flags)
        return SpaceClassification(2, Case.FIRST_INPUT_AND_OUTPUT, i=i1, j=j, **flags)
    if i2 is not None:
        if config.w1 >= k:
            return SpaceClassification(1, Case.SECOND_INPUT_AND_OUTPUT_HIGH, i=i2, j=j, **flags)
        return SpaceClassification(2, Case.SECOND_INPUT_AND_OUTPUT, i=i2, j=j, **flags)
    raise ClassificationError(f"no case matches {config}")  # pragma: no cover


@dataclass(frozen=True)
class CoeffTable:
    config: WeightConfig
    basis_index: int
    entries: Dict[Index, Fraction]
    normalization: Normalization = Normalization.CORNER_ONE

    def __getitem__(self, st: Index) -> Fraction:
        return self.entries.get(st, Fraction(0))

    def support(self) -> List[Index]:
        return sorted(st for st, v in self.entries.items() if v)

    def with_entry(self, st: Index, value) -> "CoeffTable":
        entries = dict(self.entries)
        entries[st] = Fraction(value)
        return CoeffTable(self.config, self.basis_index, entries, self.normalization)

    def to_dict(self) -> dict:
        return {
            "index": self.basis_index,
            "normalization": self.normalization.value,
            "entries": [[s, t, format_rational(v)] for (s, t), v in sorted(self.entries.items())],
        }


def simplex(k: int) -> List[Index]:
    return [(s, t) for s in range(k + 1) for t in range(k + 1 - s)]


def recursion_equations(config: WeightConfig):
    """Yield ``(p, cp, q, cq)`` meaning ``cp*a[p] + cq*a[q] == 0``.

    One pair per (s, t) with s + t <= k - 1:
      (2w1 + n - 2s - 2) a[s+1,t] + (2w1 + 2w2 + n - 2k - 2s - 2t) a[s,t] = 0
      (2w2 + n - 2t - 2) a[s,t+1] + (2w1 + 2w2 + n - 2k - 2s - 2t) a[s,t] = 0
    """
    n, k, w1, w2 = config.n, config.k, config.w1, config.w2
    for s, t in simplex(k - 1) if k >= 1 else []:
        right = 2 * w1 + 2 * w2 + n - 2 * k - 2 * s - 2 * t
        yield (s + 1, t), 2 * w1 + n - 2 * s - 2, (s, t), right
        yield (s, t + 1), 2 * w2 + n - 2 * t - 2, (s, t), right


def check_recursion(table: CoeffTable) -> bool:
    for p, cp, q, cq in recursion_equations(table.config):
        if cp * table[p] + cq * table[q] != 0:
            return False
    return True


def closed_form_entries(config: WeightConfig) -> Dict[Index, Fraction]:
    """a[s,t] = (z)_{s+t} (alpha)_{k-s} (beta)_{k-t}.

    z = -w1 - w2 - (n-2k)/2, alpha = w1 + (n-2k)/2, beta = w2 + (n-2k)/2; the
    Gamma-ratio coefficients of the one-dimensional generic case written as
    rising factorials.  Satisfies the recursions identically in the weights.
    """
    k, c = config.k, config.shift
    z = -config.w1 - config.w2 - c
    alpha = config.w1 + c
    beta = config.w2 + c
    zp = _rising_table(z, k)
    ap = _rising_table(alpha, k)
    bp = _rising_table(beta, k)
    return {(s, t): zp[s + t] * ap[k - s] * bp[k - t] for s, t in simplex(k)}


def _rising_table(x: Fraction, k: int) -> List[Fraction]:
    """[(x)_0, (x)_1, ..., (x)_k]."""
    out = [Fraction(1)]
    for m in range(k):
        out.append(out[-1] * (x + m))
    return out


def propagate(config: WeightConfig, seeds: Dict[Index, Fraction]) -> Dict[Index, Fraction]:
    """Fill the simplex from ``seeds`` using the recursions.

    Divides only by nonzero multipliers.  An equation whose multiplier on one
    side vanishes forces the other entry to zero.  Raises
    :class:`PropagationError` on an inconsistent or underdetermined system.
    """
    equations = list(recursion_equations(config))
    values: Dict[Index, Fraction] = {st: Fraction(v) for st, v in seeds.items()}
    changed = True
    while changed:
        changed = False
        for p, cp, q, cq in equations:
            kp, kq = p in values, q in values
            if kp and kq:
                continue
            if kq:
                if cp:
                    values[p] = -cq * values[q] / cp
                    changed = True
                elif cq * values[q]:
                    raise PropagationError(f"zero multiplier at {p} with nonzero right side")
            elif kp:
                if cq:
                    values[q] = -cp * values[p] / cq
                    changed = True
                elif cp * values[p]:
                    raise PropagationError(f"zero multiplier at {q} with nonzero right side")
            elif cp and not cq:
                values[p] = Fraction(0)
                changed = True
            elif cq and not cp:
                values[q] = Fraction(0)
                changed = True

    missing = [st for st in simplex(config.k) if st not in values]
    if missing:
        raise PropagationError(f"entries {missing} left undetermined at {config}")
    for p, cp, q, cq in equations:
        if cp * values[p] + cq * values[q]:
            raise PropagationError(f"seeds {seeds} inconsistent with recursion at {p}, {q}")
    return values


def _corners(config: WeightConfig, cls: SpaceClassification) -> List[Index]:
    k, i, j = config.k, cls.i, cls.j
    case = cls.case
    if case is Case.AT_MOST_ONE_EXCEPTIONAL:
        if cls.w1_exceptional:
            return [(k - i, 0)]
        if cls.w2_exceptional:
            return [(0, k - i)]
        return [(0, 0)]
    if case is Case.BOTH_INPUTS_LOW_SUM:
        return [(k - i, k - j)]
    if case is Case.FIRST_INPUT_AND_OUTPUT_HIGH:
        return [(k - i, 0)]
    if case is Case.SECOND_INPUT_AND_OUTPUT_HIGH:
        return [(0, k - i)]
    if case is Case.BOTH_INPUTS:
        return [(k - i, 0), (0, k - j)]
    if case is Case.FIRST_INPUT_AND_OUTPUT:
        return [(k - i, 0), (0, 0)]
    if case is Case.SECOND_INPUT_AND_OUTPUT:
        return [(0, k - i), (0, 0)]
    return [(0, 0), (0, k), (k, 0)]


def basis_tables(config: WeightConfig) -> List[CoeffTable]:
    """A basis of the tangential tables for ``config``.

    Each basis element is fixed by one free corner entry, the other corners
    being zero.  In the generic case the corner a[0,0] carries its closed-form
    value; otherwise the corner is 1.
    """
    cls = classify(config)
    corners = _corners(config, cls)
    if cls.generic:
        # the closed form already solves the recursions; no propagation needed
        return [CoeffTable(config, 1, closed_form_entries(config), Normalization.PAPER_GAMMA)]
    tables = []
    for index, corner in enumerate(corners, start=1):
        seeds = {c: Fraction(0) for c in corners}
        seeds[corner] = Fraction(1)
        entries = propagate(config, seeds)
        tables.append(CoeffTable(config, index, entries, Normalization.CORNER_ONE))
    assert len(tables) == cls.dimension
    return tables


def symmetric_operator_table(n: int, k: int) -> CoeffTable:
    """The operator at w1 = w2 = -(n-2k)/3.

    For n > 2k this is the single generic basis table.  At n = 2k the weights
    collapse to 0 and the generic family degenerates; its continuation (after
    dividing out the vanishing scale) is the sum of the three critical basis
    tables, which is what is returned.
    """
    w = Fraction(-(n - 2 * k), 3)
    config = WeightConfig(n, k, w, w)
    tables = basis_tables(config)
    if len(tables) == 1:
        return tables[0]
    entries = {st: sum((t[st] for t in tables), Fraction(0)) for st in simplex(k)}
    return CoeffTable(config, 1, entries, Normalization.CORNER_ONE)


@dataclass(frozen=True)
class LinearCoeffTable:
    k: int
    ell: Fraction
    entries: Tuple[Fraction, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": format_rational(self.ell),
            "entries": [format_rational(b) for b in self.entries],
        }


def linear_operator_coeffs(k: int, ell) -> LinearCoeffTable:
    """b_s = binom(k, s) (ell)_s (ell)_{k-s}, s = 0..k."""
    ell = parse_rational(ell)
    entries = tuple(
        binomial(k, s) * pochhammer(ell, s) * pochhammer(ell, k - s) for s in range(k + 1)
    )
    return LinearCoeffTable(k, ell, entries)


def tables_to_json(config: WeightConfig, tables: List[CoeffTable]) -> str:
    doc = dict(config.to_dict())
    doc["dimension"] = len(tables)
    doc["basis"] = [t.to_dict() for t in tables]
    return json.dumps(doc, indent=2)


def tables_to_csv(tables: List[CoeffTable]) -> str:
    lines = []
    for table in tables:
        lines.append(f"# basis {table.basis_index} ({table.normalization.value})")
        lines.append("s,t,value")
        for (s, t), v in sorted(table.entries.items()):
            lines.append(f"{s},{t},{format_rational(v)}")
    return "\n".join(lines) + "\n"


def tables_from_json(text: str) -> List[CoeffTable]:
    doc = json.loads(text)
    config = WeightConfig(doc["n"], doc["k"], parse_rational(doc["w1"]), parse_rational(doc["w2"]))
    tables = []
    for item in doc["basis"]:
        entries = {(s, t): parse_rational(v) for s, t, v in item["entries"]}
        tables.append(
            CoeffTable(config, item["index"], entries, Normalization(item["normalization"]))
        )
    return tables

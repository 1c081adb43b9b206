"""The modular function j and the identities of the Monster Lie algebra.

j = E4^3 / Delta with Delta = q prod (1 - q^n)^24, all in exact integer
power series.  The root multiplicities of the algebra built on the block
matrix M are dim g^(i,j) = c(ij), which shows up as

    u (J(u) - J(v)) = prod_{i >= 1, j in {-1, 1, 2, ...}} (1 - u^i v^j)^c(ij),

where J = j - 744, and, through the Witt formula applied to the free part,
as the recursive relations among the c(n) checked by :func:`kang_check`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .series import (Box, ExactSeries, Mismatch, Multidegree, divisors, moebius,
                     multinomial_weight, one_minus_pow, partitions, series_mul)
from .witt import DimTable, GeneratorTable, witt_dimensions

log = logging.getLogger(__name__)


class MoonshineError(ArithmeticError):
    pass


# --- one-variable power series, as coefficient lists from q^0 -------------

def ps_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[:n - i]):
                out[i + j] += x * y
    return out


def ps_pow(a: list[int], e: int, n: int) -> list[int]:
    result = [1] + [0] * (n - 1)
    base = a[:n]
    while e:
        if e & 1:
            result = ps_mul(result, base, n)
        e >>= 1
        if e:
            base = ps_mul(base, base, n)
    return result


def ps_div(a: list[int], b: list[int], n: int) -> list[int]:
    """a / b for b with constant term 1; integrality is asserted."""
    if b[0] != 1:
        raise MoonshineError("divisor must have constant term 1")
    out = [0] * n
    for k in range(n):
        s = a[k] if k < len(a) else 0
        for i in range(1, min(k, len(b) - 1) + 1):
            s -= b[i] * out[k - i]
        out[k] = s
    return out


def euler_product(n: int) -> list[int]:
    """prod_{m >= 1} (1 - q^m) to n terms via pentagonal numbers."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for g in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if g < n:
                out[g] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


def eisenstein_e4(n: int) -> list[int]:
    return [1] + [240 * sigma(3, m) for m in range(1, n)]


def delta_coefficients(n: int) -> list[int]:
    """tau(1..n): Delta = sum tau(m) q^m."""
    return ps_pow(euler_product(n), 24, n)


@dataclass(frozen=True)
class JExpansion:
    """Coefficients c(-1..order) of j(q) = sum c(n) q^n (c(0) = 744 included)."""

    order: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __getitem__(self, n: int) -> int:
        if n < -1:
            return 0
        if n > self.order:
            raise KeyError(f"c({n}) is beyond the computed order {self.order}")
        return self.coeffs[n]

    def J(self, n: int) -> int:
        """Coefficient of v^n in J(v) = j - 744."""
        return 0 if n == 0 else self[n]

    def problems(self) -> list[str]:
        out = []
        for n, want in ((-1, 1), (0, 744), (1, 196884)):
            if n <= self.order and self.coeffs.get(n) != want:
                out.append(f"c({n}) = {self.coeffs.get(n)}, expected {want}")
        out += [f"c({n}) = {c} < 0" for n, c in sorted(self.coeffs.items()) if c < 0]
        return out

    def tampered(self, n: int, delta: int) -> "JExpansion":
        """Copy with c(n) shifted by ``delta``; for fault-injection runs only."""
        coeffs = dict(self.coeffs)
        coeffs[n] = coeffs[n] + delta
        return JExpansion(self.order, coeffs)

    def lines(self) -> list[str]:
        return [f"{n}\t{c}" for n, c in sorted(self.coeffs.items())]


def j_coefficients(order: int) -> JExpansion:
    if order < 1:
        raise ValueError("order must be at least 1")
    n = order + 2
    e4 = eisenstein_e4(n)
    # Delta / q = prod (1 - q^m)^24, so j = q^-1 * E4^3 / (Delta / q)
    quotient = ps_div(ps_pow(e4, 3, n), ps_pow(euler_product(n), 24, n), n)
    coeffs = {k - 1: quotient[k] for k in range(order + 2)}
    jexp = JExpansion(order, coeffs)
    problems = jexp.problems()
    if problems:
        raise MoonshineError("; ".join(problems))
    return jexp


def _expansion(order: int, jexp: JExpansion | None) -> JExpansion:
    if jexp is None:
        return j_coefficients(order)
    if jexp.order < order:
        raise ValueError(f"need c(n) up to n = {order}, have {jexp.order}")
    return jexp


# --- the product identity -------------------------------------------------

def uv_box(order: int, slack: int = 0) -> Box:
    """u in [0, order], v in [-1, order + slack]."""
    return Box((0, -1), (order, order + slack))


def lhs_series(order: int, jexp: JExpansion | None = None) -> ExactSeries:
    """u (J(u) - J(v)) with u-degree <= order and v-degree in [-1, order]."""
    jexp = _expansion(order, jexp)
    box = uv_box(order)
    terms = []
    for i in range(-1, order):
        terms.append(((i + 1, 0), jexp.J(i)))
    for i in range(-1, order + 1):
        terms.append(((1, i), -jexp.J(i)))
    return ExactSeries.from_terms(box, terms)


def product_index(order: int) -> list[tuple[int, int]]:
    """Factors (i, j) of the product that can reach the comparison box.

    The v-degree can drop by at most one (the single factor 1 - u/v), so the
    factors up to v-degree order + 1 suffice for coefficients with v-degree
    <= order.
    """
    out = []
    for i in range(1, order + 1):
        for j in [-1] + list(range(1, order + 2)):
            if i + (1 if j > order else 0) <= order:
                out.append((i, j))
    return out


def rhs_product(order: int, jexp: JExpansion | None = None) -> ExactSeries:
    """prod (1 - u^i v^j)^c(ij), compared on the same box as :func:`lhs_series`."""
    need = max(i * j for i, j in product_index(order))
    jexp = _expansion(need, jexp)
    work = uv_box(order, slack=1)
    result = ExactSeries.one(work)
    for i, j in product_index(order):
        c = jexp[i * j]
        if c:
            result = series_mul(result, one_minus_pow((i, j), c, work))
    return result.restrict(uv_box(order))


@dataclass
class ProductReport:
    order: int
    compared: int
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def matched(self) -> int:
        return self.compared - len(self.mismatches)


def verify_monster_product(order: int, jexp: JExpansion | None = None) -> ProductReport:
    if order < 1:
        raise ValueError("order must be at least 1")
    need = max(i * j for i, j in product_index(order))
    jexp = _expansion(need, jexp)
    lhs = lhs_series(order, jexp)
    rhs = rhs_product(order, jexp)
    box = uv_box(order)
    compared = sum(1 for u in range(order + 1) for v in range(-1, order + 1) if (u, v) in box)
    return ProductReport(order, compared, lhs.mismatches(rhs))


# --- root multiplicities ----------------------------------------------------

def monster_generator_table(order: int, jexp: JExpansion | None = None) -> GeneratorTable:
    """n(i, j) = c(i + j - 1) for 1 <= i, j <= order."""
    jexp = _expansion(2 * order - 1, jexp)
    return {(i, j): jexp[i + j - 1] for i in range(1, order + 1) for j in range(1, order + 1)}


def block_generator_table(j_max: int, jexp: JExpansion | None = None) -> GeneratorTable:
    """Generators (ad e_-1)^l e_jk in block coordinates (labels -1, 1..j_max),
    counted per degree: l alpha_-1 + alpha_j has c(j) generators, 0 <= l < j."""
    jexp = _expansion(j_max, jexp)
    out = {}
    for j in range(1, j_max + 1):
        for l in range(j):
            deg = [0] * (j_max + 1)
            deg[0] = l
            deg[j] = 1
            out[tuple(deg)] = jexp[j]
    return out


def uv_specialization(j_max: int) -> list[list[int]]:
    """alpha_-1 -> (1, -1), alpha_i -> (1, i) as a 2 x (j_max + 1) matrix."""
    return [[1] * (j_max + 1), [-1] + list(range(1, j_max + 1))]


@dataclass
class DimsReport:
    order: int
    dims: DimTable
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_monster_dims(order: int, jexp: JExpansion | None = None) -> DimsReport:
    """Witt dimensions of the free part plus the (1, -1) root, against c(ij).

    Mismatch ``left`` is the computed dimension, ``right`` is c(ij).
    """
    jexp = _expansion(order * order, jexp)
    box = Box.orthant(2, upper=(order, order))
    dims = dict(witt_dimensions(monster_generator_table(order, jexp), box))
    dims[(1, -1)] = 1
    mismatches = []
    for i in range(1, order + 1):
        for j in [-1] + list(range(1, order + 1)):
            got = dims.get((i, j), 0)
            want = jexp[i * j]
            if got != want:
                mismatches.append(Mismatch((i, j), got, want))
    return DimsReport(order, dict(sorted(dims.items())), mismatches)


class MultiplicityMismatch(MoonshineError):
    def __init__(self, mismatches: list[Mismatch]):
        super().__init__("dim g^(i,j) != c(ij) at " + ", ".join(str(m.exponent) for m in mismatches))
        self.mismatches = mismatches


def monster_root_dims(order: int, jexp: JExpansion | None = None) -> DimTable:
    report = verify_monster_dims(order, jexp)
    if report.mismatches:
        raise MultiplicityMismatch(report.mismatches)
    return report.dims


# --- coefficient relations --------------------------------------------------

@dataclass
class KangTerm:
    k: int
    partition: dict[Multidegree, int]
    value: Fraction


@dataclass
class KangFailure:
    degree: Multidegree
    expected: int
    computed: Fraction
    terms: list[KangTerm]

    def as_dict(self) -> dict:
        return {
            "degree": list(self.degree),
            "expected": str(self.expected),
            "computed": str(self.computed),
            "terms": [{"k": t.k, "partition": {",".join(map(str, p)): a for p, a in t.partition.items()},
                       "value": str(t.value)} for t in self.terms],
        }


def kang_value(i: int, j: int, jexp: JExpansion, keep_terms: bool = False) -> tuple[Fraction, list[KangTerm]]:
    """Right-hand side of the relation for c(ij), with its term breakdown."""
    total = Fraction(0)
    terms: list[KangTerm] = []
    for k in divisors(i) if i else []:
        if j % k:
            continue
        mu = moebius(k)
        if not mu:
            continue
        m, n = i // k, j // k
        parts = [(r, s) for r in range(1, m + 1) for s in range(1, n + 1)]
        for a in partitions((m, n), parts):
            prod = 1
            for (r, s), e in a.items():
                prod *= jexp[r + s - 1] ** e
            value = Fraction(mu, k) * multinomial_weight(a) * prod
            total += value
            if keep_terms:
                terms.append(KangTerm(k, a, value))
    return total, terms


def kang_check(order: int, jexp: JExpansion | None = None) -> list[KangFailure]:
    """c(ij) against the Witt-formula expression in the c(r + s - 1), for i + j <= order."""
    if order < 2:
        raise ValueError("order must be at least 2")
    need = max(i * (order - i) for i in range(1, order))
    jexp = _expansion(max(need, order - 1), jexp)
    failures = []
    for i in range(1, order):
        for j in range(1, order - i + 1):
            value, _ = kang_value(i, j, jexp)
            if value != jexp[i * j]:
                _, terms = kang_value(i, j, jexp, keep_terms=True)
                failures.append(KangFailure((i, j), jexp[i * j], value, terms))
    return failures

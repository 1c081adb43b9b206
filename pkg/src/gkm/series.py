"""Exact truncated multivariate series and the combinatorial kernels behind them.

Every series lives inside a :class:`Box`: per-variable bounds (a lower bound
below zero makes that variable Laurent) plus an optional bound on the total
degree.  Products drop anything that falls outside the box, so a product of
factors is exact on the box as long as every partial product of a monomial
in the box stays inside it -- true for orthant boxes and checked by callers
otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, inf
from typing import Iterable, Iterator, Mapping, Sequence, Union

Multidegree = tuple[int, ...]
Coefficient = Union[int, Fraction]


def add(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Multidegree) -> Multidegree:
    return tuple(k * x for x in a)


def height(a: Multidegree) -> int:
    return sum(a)


def unit(n: int, i: int) -> Multidegree:
    return tuple(1 if k == i else 0 for k in range(n))


def is_nonneg(a: Multidegree) -> bool:
    return all(x >= 0 for x in a)


def leq(a: Multidegree, b: Multidegree) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Box:
    """Truncation region.  ``None`` in a bound means unbounded on that side."""

    lower: tuple[int | None, ...]
    upper: tuple[int | None, ...]
    max_height: int | None = None

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper bounds have different lengths")

    @classmethod
    def orthant(cls, nvars: int, max_height: int | None = None,
                upper: Sequence[int] | None = None) -> "Box":
        if upper is None:
            upper = (max_height,) * nvars
        return cls((0,) * nvars, tuple(upper), max_height)

    @property
    def nvars(self) -> int:
        return len(self.lower)

    def __contains__(self, e: Multidegree) -> bool:
        for x, lo, hi in zip(e, self.lower, self.upper):
            if lo is not None and x < lo:
                return False
            if hi is not None and x > hi:
                return False
        return self.max_height is None or sum(e) <= self.max_height

    def intersect(self, other: "Box") -> "Box":
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

        def pick(a, b, f):
            if a is None:
                return b
            if b is None:
                return a
            return f(a, b)

        lower = tuple(pick(a, b, max) for a, b in zip(self.lower, other.lower))
        upper = tuple(pick(a, b, min) for a, b in zip(self.upper, other.upper))
        return Box(lower, upper, pick(self.max_height, other.max_height, min))

    def multiples(self, alpha: Multidegree) -> tuple[int, float]:
        """Interval ``[kmin, kmax]`` of k >= 0 with ``k*alpha`` in the box.

        ``kmax`` is ``inf`` when no bound stops the ray, and ``kmin > kmax``
        when the ray misses the box.
        """
        lo_k: Fraction | int = 0
        hi_k: Fraction | float = inf
        constraints = list(zip(alpha, self.lower, self.upper))
        if self.max_height is not None:
            constraints.append((sum(alpha), None, self.max_height))
        for a, lo, hi in constraints:
            if a == 0:
                if (lo is not None and lo > 0) or (hi is not None and hi < 0):
                    return 1, 0
                continue
            # lo <= k*a <= hi
            bounds = []
            if lo is not None:
                bounds.append(("ge", Fraction(lo, a)) if a > 0 else ("le", Fraction(lo, a)))
            if hi is not None:
                bounds.append(("le", Fraction(hi, a)) if a > 0 else ("ge", Fraction(hi, a)))
            for kind, v in bounds:
                if kind == "ge":
                    lo_k = max(lo_k, v)
                else:
                    hi_k = min(hi_k, v)
        kmin = -int(-lo_k // 1)
        kmax = hi_k if hi_k == inf else int(hi_k // 1)
        return kmin, kmax


@dataclass(frozen=True)
class Mismatch:
    """A coefficient where two sides of an identity disagree."""

    exponent: Multidegree
    left: Coefficient
    right: Coefficient

    def as_dict(self) -> dict:
        return {"exponent": list(self.exponent), "left": str(self.left), "right": str(self.right)}


@dataclass(frozen=True, eq=False)
class ExactSeries:
    box: Box
    terms: Mapping[Multidegree, Coefficient] = field(default_factory=dict)

    def __post_init__(self):
        for e in self.terms:
            if len(e) != self.box.nvars:
                raise ValueError(f"exponent {e} has wrong length for {self.box.nvars} variables")
            if e not in self.box:
                raise ValueError(f"exponent {e} lies outside the truncation box")

    @classmethod
    def from_terms(cls, box: Box, terms: Iterable[tuple[Multidegree, Coefficient]]) -> "ExactSeries":
        """Accumulate terms, silently dropping zeros and anything outside ``box``."""
        acc: dict[Multidegree, Coefficient] = {}
        for e, c in terms:
            e = tuple(e)
            if e in box:
                acc[e] = acc.get(e, 0) + c
        return cls(box, {e: c for e, c in acc.items() if c != 0})

    @classmethod
    def one(cls, box: Box) -> "ExactSeries":
        return cls.from_terms(box, [((0,) * box.nvars, 1)])

    @property
    def nvars(self) -> int:
        return self.box.nvars

    def coefficient(self, e: Multidegree) -> Coefficient:
        return self.terms.get(tuple(e), 0)

    def __getitem__(self, e: Multidegree) -> Coefficient:
        return self.coefficient(e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactSeries):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __add__(self, other: "ExactSeries") -> "ExactSeries":
        box = self.box.intersect(other.box)
        return ExactSeries.from_terms(box, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "ExactSeries":
        return ExactSeries(self.box, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "ExactSeries") -> "ExactSeries":
        return self + (-other)

    def __mul__(self, other: "ExactSeries") -> "ExactSeries":
        return series_mul(self, other)

    def restrict(self, box: Box) -> "ExactSeries":
        return ExactSeries.from_terms(self.box.intersect(box), self.terms.items())

    def pushforward(self, psi: Sequence[Sequence[int]], box: Box) -> "ExactSeries":
        """Apply the monomial map T^a -> T^(psi a), keeping what lands in ``box``."""
        return ExactSeries.from_terms(box, ((apply_matrix(psi, e), c) for e, c in self.terms.items()))

    def sorted_terms(self) -> list[tuple[Multidegree, Coefficient]]:
        return sorted(self.terms.items())

    def mismatches(self, other: "ExactSeries") -> list[Mismatch]:
        keys = sorted(set(self.terms) | set(other.terms))
        return [Mismatch(e, self.coefficient(e), other.coefficient(e))
                for e in keys if self.coefficient(e) != other.coefficient(e)]

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*T^{e}" for e, c in self.sorted_terms()[:8])
        more = " + ..." if len(self.terms) > 8 else ""
        return f"ExactSeries({body or '0'}{more})"


def apply_matrix(psi: Sequence[Sequence[int]], e: Multidegree) -> Multidegree:
    return tuple(sum(r * x for r, x in zip(row, e)) for row in psi)


def series_mul(a: ExactSeries, b: ExactSeries) -> ExactSeries:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    box = a.box.intersect(b.box)
    acc: dict[Multidegree, Coefficient] = {}
    # iterate the smaller operand in the inner loop; cheaper for sparse factors
    outer, inner = (a, b) if len(a.terms) >= len(b.terms) else (b, a)
    inner_items = sorted(inner.terms.items())
    for ea, ca in sorted(outer.terms.items()):
        for eb, cb in inner_items:
            e = add(ea, eb)
            if e in box:
                acc[e] = acc.get(e, 0) + ca * cb
    return ExactSeries(box, {e: c for e, c in acc.items() if c != 0})


def binomial_row(d: int, kmax: int) -> list[int]:
    """C(d, 0..kmax) by the multiplicative recurrence (exact division)."""
    row = [1]
    c = 1
    for k in range(min(kmax, d)):
        c = c * (d - k) // (k + 1)
        row.append(c)
    return row


def one_minus_pow(alpha: Multidegree, d: int, box: Box) -> ExactSeries:
    """(1 - T^alpha)^d expanded inside ``box``."""
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    if d < 0:
        raise ValueError("exponent d must be nonnegative")
    kmin, kmax = box.multiples(alpha)
    if kmax == inf:
        raise ValueError(f"alpha={alpha} does not escape the box; expansion would not terminate")
    kmax = min(int(kmax), d)
    terms = []
    for k, c in enumerate(binomial_row(d, kmax)):
        if k >= kmin:
            terms.append((scale(k, alpha), -c if k % 2 else c))
    return ExactSeries.from_terms(box, terms)


def product_over_table(table: Mapping[Multidegree, int], box: Box) -> ExactSeries:
    """Product of (1 - T^a)^table[a] over the table, truncated to ``box``."""
    result = ExactSeries.one(box)
    for alpha in sorted(table):
        d = table[alpha]
        if d:
            result = series_mul(result, one_minus_pow(alpha, d, box))
    return result


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def partitions(beta: Multidegree, parts: Iterable[Multidegree]) -> Iterator[dict[Multidegree, int]]:
    """All multisets of ``parts`` summing to ``beta``, each exactly once.

    Parts are taken in lexicographic order and, for each part, multiplicities
    ascend from zero, so the output order is reproducible.
    """
    beta = tuple(beta)
    if not any(beta):
        raise ValueError("beta must be nonzero")
    if not is_nonneg(beta):
        raise ValueError("beta must lie in the nonnegative orthant")
    usable = []
    for p in sorted(set(map(tuple, parts))):
        if not any(p):
            raise ValueError("zero part vector")
        if not is_nonneg(p):
            raise ValueError(f"part {p} is not in the nonnegative orthant")
        if leq(p, beta):
            usable.append(p)

    chosen: dict[Multidegree, int] = {}

    def rec(i: int, rest: Multidegree) -> Iterator[dict[Multidegree, int]]:
        if not any(rest):
            yield dict(chosen)
            return
        if i == len(usable):
            return
        p = usable[i]
        m = 0
        r = rest
        while True:
            if m:
                chosen[p] = m
            yield from rec(i + 1, r)
            r = sub(r, p)
            if not is_nonneg(r):
                break
            m += 1
        chosen.pop(p, None)

    yield from rec(0, beta)


def multinomial_weight(a: Mapping[Multidegree, int]) -> Fraction:
    """(|a| - 1)! / prod(a_alpha!) for a nonempty multiset ``a``."""
    size = sum(a.values())
    if size < 1:
        raise ValueError("empty multiset")
    denom = 1
    for m in a.values():
        denom *= factorial(m)
    return Fraction(factorial(size - 1), denom)

"""Graded dimensions of free Lie algebras from generator counts.

For a free Lie algebra whose generators carry degrees in the nonnegative
orthant of Z^m, with ``n[alpha]`` generators of degree alpha, the dimension
of the degree-beta piece is

    d(beta) = sum over k | beta of  mu(k)/k * S(beta/k),
    S(gamma) = sum over multisets a of generator degrees with sum gamma of
               (|a| - 1)! / prod(a_alpha!) * prod(n[alpha]^a_alpha),

and the generating-function identity 1 - sum n[a] T^a = prod (1 - T^a)^d(a)
holds.  Both are implemented here; the brute-force cross-check lives in
:mod:`gkm.lie`.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .series import (Box, ExactSeries, Mismatch, Multidegree, add, apply_matrix,
                     divisors, is_nonneg, moebius, multinomial_weight, partitions,
                     product_over_table)

log = logging.getLogger(__name__)

GeneratorTable = dict[Multidegree, int]
DimTable = dict[Multidegree, int]


class WittIntegralityError(ArithmeticError):
    def __init__(self, beta: Multidegree, value: Fraction):
        super().__init__(f"d{beta} = {value} is not an integer")
        self.beta = beta
        self.value = value


class CoverageError(ValueError):
    def __init__(self, degree: Multidegree):
        super().__init__(f"dimension table has no entry for degree {degree}")
        self.degree = degree


def nonzero(table: Mapping[Multidegree, int]) -> dict[Multidegree, int]:
    return {k: v for k, v in sorted(table.items()) if v}


def check_generators(g: Mapping[Multidegree, int]) -> GeneratorTable:
    out = {}
    nvars = None
    for alpha, n in g.items():
        alpha = tuple(alpha)
        if nvars is None:
            nvars = len(alpha)
        elif len(alpha) != nvars:
            raise ValueError("generator degrees have inconsistent lengths")
        if n < 0:
            raise ValueError(f"negative generator count at {alpha}")
        if not any(alpha):
            raise ValueError("a generator of degree 0 makes every graded piece infinite")
        if not is_nonneg(alpha):
            raise ValueError(f"generator degree {alpha} is not in the nonnegative orthant")
        if n:
            out[alpha] = n
    return out


def reachable_degrees(support: Iterable[Multidegree], box: Box) -> list[Multidegree]:
    """Nonzero sums of support degrees lying in ``box`` (the box must be an
    orthant box, so every partial sum of a reachable degree is in it)."""
    support = sorted(set(support))
    seen = set()
    frontier = [s for s in support if s in box]
    seen.update(frontier)
    while frontier:
        nxt = []
        for b in frontier:
            for s in support:
                e = add(b, s)
                if e not in seen and e in box:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return sorted(seen)


def inner_sum(gamma: Multidegree, g: Mapping[Multidegree, int]) -> Fraction:
    """Sum over partitions a of gamma of (|a|-1)!/a! * n^a."""
    total = Fraction(0)
    for a in partitions(gamma, g):
        term = 1
        for alpha, k in a.items():
            term *= g[alpha] ** k
        total += multinomial_weight(a) * term
    return total


_worker_table: Mapping[Multidegree, int] = {}


def _init_worker(g):
    global _worker_table
    _worker_table = g


def _inner_sum_worker(gamma):
    return inner_sum(gamma, _worker_table)


def _primitive_divisors(beta: Multidegree) -> list[int]:
    return divisors(math.gcd(*beta))


def witt_dimensions(g: Mapping[Multidegree, int], box: Box, workers: int = 1) -> DimTable:
    """d(beta) for every degree in ``box`` reachable from the generators.

    Unreachable degrees have dimension zero and are omitted; reachable ones
    are present even when their dimension is zero.
    """
    g = check_generators(g)
    if not g:
        return {}
    degrees = reachable_degrees(g, box)
    needed = sorted({tuple(x // k for x in beta) for beta in degrees for k in _primitive_divisors(beta)})
    if workers > 1 and len(needed) >= 64:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(g,)) as pool:
            sums = dict(zip(needed, pool.map(_inner_sum_worker, needed, chunksize=8)))
    else:
        sums = {gamma: inner_sum(gamma, g) for gamma in needed}
    out: DimTable = {}
    for beta in degrees:
        value = Fraction(0)
        for k in _primitive_divisors(beta):
            mu = moebius(k)
            if mu:
                value += Fraction(mu, k) * sums[tuple(x // k for x in beta)]
        if value.denominator != 1:
            raise WittIntegralityError(beta, value)
        out[beta] = int(value)
    log.debug("witt: %d degrees, %d inner sums", len(out), len(needed))
    return out


def generator_series(g: Mapping[Multidegree, int], box: Box) -> ExactSeries:
    """1 - sum n[alpha] T^alpha."""
    terms = [((0,) * box.nvars, 1)] + [(alpha, -n) for alpha, n in g.items()]
    return ExactSeries.from_terms(box, terms)


def verify_witt_identity(g: Mapping[Multidegree, int], d: Mapping[Multidegree, int], box: Box) -> list[Mismatch]:
    """Compare 1 - sum n T^a with prod (1 - T^a)^d(a) on ``box``.

    ``d`` must have an entry for every reachable degree in the box; the
    left member of each mismatch is the generator side.
    """
    g = check_generators(g)
    for beta in reachable_degrees(g, box):
        if beta not in d:
            raise CoverageError(beta)
    lhs = generator_series(g, box)
    rhs = product_over_table({a: n for a, n in d.items() if a in box}, box)
    return lhs.mismatches(rhs)


def pushforward_grading(g: Mapping[Multidegree, int], psi: Sequence[Sequence[int]]) -> GeneratorTable:
    """Transport a generator table along the homomorphism ``psi`` (n x m matrix)."""
    out: GeneratorTable = {}
    images = []
    for beta, n in sorted(g.items()):
        if not n:
            continue
        alpha = apply_matrix(psi, beta)
        if not any(alpha):
            raise ValueError(f"generator degree {beta} maps to 0")
        images.append(alpha)
        out[alpha] = out.get(alpha, 0) + n
    if images and not (all(is_nonneg(a) for a in images) or all(is_nonneg(tuple(-x for x in a)) for a in images)):
        raise ValueError("images of the generator degrees do not lie in a single orthant")
    return out


def pushforward_table(d: Mapping[Multidegree, int], psi: Sequence[Sequence[int]]) -> DimTable:
    """Transport a dimension table: d'(alpha) = sum of d(beta) over psi(beta) = alpha."""
    out: DimTable = {}
    for beta, n in sorted(d.items()):
        alpha = apply_matrix(psi, beta)
        out[alpha] = out.get(alpha, 0) + n
    return out

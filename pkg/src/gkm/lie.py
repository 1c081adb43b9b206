"""Brute-force ground truth for graded Lie algebra dimensions.

Lie polynomials are stored inside the free associative algebra (dicts from
words to coefficients, a word being a tuple of letter indices), with
``[a, b] = ab - ba``.  The Lyndon words index a basis of the free Lie
algebra; the standard bracketing of a Lyndon word w expands as w plus
lexicographically larger words of the same content, which makes the change
to Lyndon coordinates a triangular solve.

Nothing here uses the Witt formula or any generating function: dimensions
come from counting words and from ranks of exact rational matrices.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping, Sequence

from .linalg import EchelonBasis
from .matrix import GKMMatrix, MatrixError, classify, imaginary_indices, real_indices, require_valid
from .series import Box, Multidegree, add, sub, unit
from .witt import DimTable, GeneratorTable, check_generators

Word = tuple[int, ...]
Tensor = dict[Word, int]

MAX_SYMBOLS = 12
MAX_INDICES = 6
MAX_HEIGHT = 10


class OracleLimitError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


# --- words --------------------------------------------------------------

def is_lyndon(w: Word) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(k: int, n: int) -> Iterator[Word]:
    """Lyndon words over letters 0..k-1 of length 1..n, in lexicographic order (Duval)."""
    if k < 1 or n < 1:
        return
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = uv with v the longest proper suffix of w that is Lyndon."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def content(w: Word, k: int) -> Multidegree:
    c = [0] * k
    for x in w:
        c[x] += 1
    return tuple(c)


def words_with_content(c: Multidegree) -> list[Word]:
    """All words with the given letter counts, in lexicographic order."""
    out: list[Word] = []
    counts = list(c)
    total = sum(counts)
    cur: list[int] = []

    def rec():
        if len(cur) == total:
            out.append(tuple(cur))
            return
        for x, k in enumerate(counts):
            if k:
                counts[x] -= 1
                cur.append(x)
                rec()
                cur.pop()
                counts[x] += 1

    rec()
    return out


# --- tensor algebra -----------------------------------------------------

def t_add(*vs: Mapping[Word, int], coeffs: Sequence | None = None) -> Tensor:
    out: Tensor = {}
    for idx, v in enumerate(vs):
        s = 1 if coeffs is None else coeffs[idx]
        for w, c in v.items():
            x = out.get(w, 0) + s * c
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return out


def t_mul(a: Mapping[Word, int], b: Mapping[Word, int]) -> Tensor:
    out: Tensor = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            x = out.get(w, 0) + ca * cb
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return out


def t_bracket(a: Mapping[Word, int], b: Mapping[Word, int]) -> Tensor:
    return t_add(t_mul(a, b), t_mul(b, a), coeffs=(1, -1))


def letter(i: int) -> Tensor:
    return {(i,): 1}


def ad_power(i: int, n: int, x: Mapping[Word, int]) -> Tensor:
    """(ad x_i)^n x."""
    v = dict(x)
    for _ in range(n):
        v = t_bracket(letter(i), v)
    return v


@lru_cache(maxsize=None)
def _lyndon_bracket(w: Word) -> tuple[tuple[Word, int], ...]:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(t_bracket(dict(_lyndon_bracket(u)), dict(_lyndon_bracket(v))).items()))


def lyndon_bracket(w: Word) -> Tensor:
    """Standard bracketing of the Lyndon word ``w``, expanded in the tensor algebra."""
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    return dict(_lyndon_bracket(tuple(w)))


def lie_coordinates(v: Mapping[Word, int]) -> dict[Word, Fraction]:
    """Coordinates of a Lie polynomial in the Lyndon-bracket basis.

    Raises ValueError when ``v`` is not a Lie polynomial.
    """
    rest = {w: Fraction(c) for w, c in v.items() if c}
    coords: dict[Word, Fraction] = {}
    while rest:
        w = min(rest)
        if not is_lyndon(w):
            raise ValueError(f"not a Lie polynomial: leading word {w} is not Lyndon")
        c = rest[w]
        coords[w] = c
        for u, x in _lyndon_bracket(w):
            y = rest.get(u, 0) - c * x
            if y:
                rest[u] = y
            else:
                rest.pop(u, None)
    return coords


def from_lie_coordinates(coords: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for w, c in coords.items():
        for u, x in _lyndon_bracket(w):
            out[u] = out.get(u, 0) + c * x
    return {u: x for u, x in out.items() if x}


# --- free Lie algebra dimensions ----------------------------------------

def expand_symbols(gens: Mapping[Multidegree, int], max_symbols: int = MAX_SYMBOLS) -> list[Multidegree]:
    """One degree per generator symbol, in sorted degree order."""
    gens = check_generators(gens)
    total = sum(gens.values())
    if total > max_symbols:
        raise OracleLimitError(f"{total} generator symbols exceeds the limit of {max_symbols}")
    return [alpha for alpha in sorted(gens) for _ in range(gens[alpha])]


def enumerate_lyndon_dims(gens: Mapping[Multidegree, int], box: Box,
                          max_symbols: int = MAX_SYMBOLS) -> DimTable:
    """Count Lyndon words on the expanded symbols, one word at a time."""
    degs = expand_symbols(gens, max_symbols)
    if not degs:
        return {}
    longest = _max_length(degs, box)
    out: DimTable = {}
    for w in lyndon_words(len(degs), longest):
        e = (0,) * box.nvars
        for x in w:
            e = add(e, degs[x])
        if e in box:
            out[e] = out.get(e, 0) + 1
    return out


def _max_length(degs: Sequence[Multidegree], box: Box) -> int:
    n = 1
    smallest = min(degs, key=sum)
    e = smallest
    while add(e, smallest) in box:
        e = add(e, smallest)
        n += 1
    return n


@lru_cache(maxsize=None)
def lyndon_count(shape: tuple[int, ...]) -> int:
    """Number of Lyndon words using distinct letters 0..len(shape)-1 with
    letter i occurring shape[i] times, by enumeration."""
    if not shape or any(k <= 0 for k in shape):
        return 0
    # a Lyndon word of length > 1 starts with its smallest letter
    words = words_with_content(shape)
    return sum(1 for w in words if w[0] == 0 and is_lyndon(w))


def _integer_partitions(m: int, max_parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _integer_partitions(m - first, max_parts - 1, first):
            yield (first,) + rest


def _placements(n_symbols: int, mu: tuple[int, ...]) -> int:
    """Ways to give the parts of ``mu`` to distinct symbols out of ``n_symbols``."""
    if len(mu) > n_symbols:
        return 0
    ways = factorial(n_symbols) // factorial(n_symbols - len(mu))
    for k in Counter(mu).values():
        ways //= factorial(k)
    return ways


def lyndon_dims(gens: Mapping[Multidegree, int], box: Box, max_symbols: int = MAX_SYMBOLS) -> DimTable:
    """Graded dimensions of the free Lie algebra by counting Lyndon words.

    Symbols of equal degree are interchangeable, so words are counted by
    content shape: the number of Lyndon words with a given letter-count
    vector only depends on the sorted counts.  ``enumerate_lyndon_dims``
    is the literal word-by-word count.
    """
    expand_symbols(gens, max_symbols)
    gens = check_generators(gens)
    classes = sorted(gens)
    if not classes:
        return {}
    out: DimTable = {}

    def rec(t: int, e: Multidegree, counts: list[int]):
        if t == len(classes):
            if any(e):
                out[e] = out.get(e, 0) + _count_for(counts)
            return
        m = 0
        cur = e
        while cur in box:
            counts.append(m)
            rec(t + 1, cur, counts)
            counts.pop()
            m += 1
            cur = add(cur, classes[t])

    def _count_for(counts: list[int]) -> int:
        total = 0
        per_class = [list(_integer_partitions(m, gens[a])) for m, a in zip(counts, classes)]
        for choice in itertools.product(*per_class):
            ways = 1
            for mu, a in zip(choice, classes):
                ways *= _placements(gens[a], mu)
            if ways:
                shape = tuple(sorted((x for mu in choice for x in mu), reverse=True))
                total += ways * lyndon_count(shape)
        return total

    rec(0, (0,) * box.nvars, [])
    return out


# --- quotient by the defining relations ---------------------------------

@dataclass
class QuotientPiece:
    degree: Multidegree
    basis: list[Word]
    relations: list[dict[Word, Fraction]]
    survivors: list[Word] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.relations)

    @property
    def dim(self) -> int:
        return len(self.basis) - self.rank


@dataclass
class GradedQuotient:
    matrix: GKMMatrix
    max_height: int
    pieces: dict[Multidegree, QuotientPiece]

    def dims(self) -> DimTable:
        return {phi: p.dim for phi, p in sorted(self.pieces.items())}


def orthant_degrees(nvars: int, max_height: int, min_height: int = 1) -> list[Multidegree]:
    """Nonnegative degrees ordered by height, then lexicographically."""
    out = []
    for h in range(min_height, max_height + 1):
        level = [c for c in itertools.product(range(h + 1), repeat=nvars) if sum(c) == h]
        out.extend(sorted(level))
    return out


def serre_exponent(m: GKMMatrix, i: int, j: int) -> int:
    """1 - 2 a_ij / a_ii for a real index i."""
    q = 1 - 2 * m.a(i, j) / m.a(i, i)
    assert q.denominator == 1 and q >= 1, "validated matrices give a positive integer"
    return int(q)


def defining_relations(m: GKMMatrix) -> list[Tensor]:
    """Generators of the ideal k0+ inside the free Lie algebra on the e_i."""
    n = len(m)
    rels = []
    for i in real_indices(m):
        for j in range(n):
            if j != i:
                rels.append(ad_power(i, serre_exponent(m, i, j), letter(j)))
    real = set(real_indices(m))
    for i, j in itertools.combinations(range(n), 2):
        if m.a(i, j) == 0 and i not in real and j not in real:
            rels.append(t_bracket(letter(i), letter(j)))
    return rels


def _check_oracle_input(m: GKMMatrix, max_height: int) -> None:
    if m.is_block:
        raise MatrixError("the oracle needs a dense matrix; expand block matrices first")
    require_valid(m)
    if len(m) > MAX_INDICES:
        raise OracleLimitError(f"{len(m)} indices exceeds the oracle limit of {MAX_INDICES}")
    if max_height > MAX_HEIGHT:
        raise OracleLimitError(f"height {max_height} exceeds the oracle limit of {MAX_HEIGHT}")


def quotient(m: GKMMatrix, max_height: int, show_basis: bool = False) -> GradedQuotient:
    """Root spaces of n+ = L(e_i) / k0+ in every degree of height <= max_height."""
    _check_oracle_input(m, max_height)
    n = len(m)
    by_degree: dict[Multidegree, list[Word]] = {}
    for w in lyndon_words(n, max_height):
        by_degree.setdefault(content(w, n), []).append(w)
    relations: dict[Multidegree, list[Tensor]] = {}
    for r in defining_relations(m):
        phi = content(next(iter(r)), n)
        if sum(phi) <= max_height:
            relations.setdefault(phi, []).append(r)

    ideal: dict[Multidegree, list[Tensor]] = {}
    pieces: dict[Multidegree, QuotientPiece] = {}
    for phi in orthant_degrees(n, max_height):
        spanning = list(relations.get(phi, []))
        for i in range(n):
            if phi[i]:
                for v in ideal.get(sub(phi, unit(n, i)), []):
                    spanning.append(t_bracket(letter(i), v))
        echelon = EchelonBasis()
        kept: list[Tensor] = []
        rows: list[dict[Word, Fraction]] = []
        for v in spanning:
            coords = lie_coordinates(v)
            if echelon.add(coords):
                kept.append(v)
                rows.append(coords)
        ideal[phi] = kept
        piece = QuotientPiece(phi, by_degree.get(phi, []), rows)
        if show_basis:
            for w in piece.basis:
                if echelon.add({w: Fraction(1)}):
                    piece.survivors.append(w)
        pieces[phi] = piece
    return GradedQuotient(m, max_height, pieces)


def quotient_dims(m: GKMMatrix, max_height: int) -> DimTable:
    return quotient(m, max_height).dims()


# --- free subalgebra decomposition --------------------------------------

@dataclass
class FreeSplit:
    gJ_dims: DimTable
    free_gens: GeneratorTable


def lowest_weight_module_dims(m: GKMMatrix, J: Sequence[int], j: int, max_height: int) -> dict[Multidegree, int]:
    """Graded dimensions of U(n_J+) e_j modulo the submodule generated by
    (ad e_i)^(1 - 2 a_ij / a_ii) e_j, i in J.

    U(n_J+) is the free associative algebra on J modulo the two-sided ideal
    of the Serre elements of J, and ad e_i on e_j becomes left
    multiplication by x_i.  Keys are degrees in J-coordinates (height <= max_height).
    """
    k = len(J)
    serre: dict[Multidegree, list[Tensor]] = {}
    for a, i in enumerate(J):
        for b, i2 in enumerate(J):
            if a != b:
                s = ad_power(a, serre_exponent(m, i, i2), letter(b))
                serre.setdefault(content(next(iter(s)), k), []).append(s)
    killers: dict[Multidegree, list[Tensor]] = {}
    for a, i in enumerate(J):
        e = serre_exponent(m, i, j)
        killers.setdefault(tuple(e if t == a else 0 for t in range(k)), []).append({(a,) * e: 1})

    two_sided: dict[Multidegree, list[Tensor]] = {}
    left: dict[Multidegree, list[Tensor]] = {}
    out: dict[Multidegree, int] = {}
    for psi in [(0,) * k] + orthant_degrees(k, max_height):
        span_k = list(serre.get(psi, []))
        for a in range(k):
            if psi[a]:
                for v in two_sided.get(sub(psi, unit(k, a)), []):
                    span_k.append(t_mul(letter(a), v))
                    span_k.append(t_mul(v, letter(a)))
        ek = EchelonBasis()
        two_sided[psi] = [v for v in span_k if ek.add(v)]
        span_l = list(two_sided[psi]) + list(killers.get(psi, []))
        for a in range(k):
            if psi[a]:
                for v in left.get(sub(psi, unit(k, a)), []):
                    span_l.append(t_mul(letter(a), v))
        el = EchelonBasis()
        left[psi] = [v for v in span_l if el.add(v)]
        total = factorial(sum(psi))
        for x in psi:
            total //= factorial(x)
        out[psi] = total - el.rank
    return out


def free_split(m: GKMMatrix, max_height: int) -> FreeSplit:
    """Degrees of the Kac-Moody part g_J and of the free generators of u+.

    Works in label coordinates, so block matrices are accepted as long as
    the real part is small; each imaginary label contributes its module
    once per root in the block.
    """
    cls = classify(m)
    if not cls.free_split_applicable:
        raise HypothesisError("matrix has mutually orthogonal imaginary simple roots")
    n = len(m)
    J = real_indices(m)
    gJ: DimTable = {}
    if J:
        sub_m = m.submatrix(J)
        sub_m = GKMMatrix.dense([list(r) for r in sub_m.entries], sub_m.labels)
        for psi, d in quotient_dims(sub_m, max_height).items():
            full = [0] * n
            for a, i in enumerate(J):
                full[i] = psi[a]
            gJ[tuple(full)] = d
    free: GeneratorTable = {}
    mult = m.multiplicities
    for j in imaginary_indices(m):
        for psi, d in lowest_weight_module_dims(m, J, j, max_height - 1).items():
            if d:
                full = [0] * n
                for a, i in enumerate(J):
                    full[i] = psi[a]
                full[j] += 1
                full_t = tuple(full)
                free[full_t] = free.get(full_t, 0) + d * mult[j]
    return FreeSplit(gJ, free)

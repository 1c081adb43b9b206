"""Both sides of the generalized Kac-Moody denominator identity, truncated by height.

Conventions.  Coordinates are simple-root coordinates, one per matrix label
(block labels stand for ``size`` identical simple roots).  The form is
(alpha_i, alpha_j) = a_ij and the Weyl vector is fixed by
(rho, alpha_i) = -a_ii / 2, which makes every exponent w(rho + gamma) - rho
a nonnegative combination of simple roots, e.g. 1 - T^alpha for sl2.  With
this choice each simple reflection raises the height of w rho - rho by at
least one, so Weyl words longer than the height bound never contribute.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Mapping

from .lie import quotient_dims, free_split
from .matrix import GKMMatrix, classify, imaginary_indices, real_indices, require_valid
from .series import Box, ExactSeries, Mismatch, Multidegree, add, product_over_table
from .lie import HypothesisError, orthant_degrees
from .witt import CoverageError, DimTable, generator_series, witt_dimensions


class ConventionError(AssertionError):
    pass


Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]       # w = r_word[0] r_word[1] ... r_word[-1]
    sign: int
    rho_shift: Vec              # w rho - rho
    action: tuple[Vec, ...]     # w(alpha_k) for each simple root k

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, v) -> Vec:
        out = [Fraction(0)] * len(self.rho_shift)
        for k, x in enumerate(v):
            if x:
                for t, y in enumerate(self.action[k]):
                    out[t] += x * y
        return tuple(out)

    def key(self):
        return self.rho_shift, self.action


@dataclass(frozen=True)
class OmegaElement:
    """A sum of pairwise orthogonal, distinct imaginary simple roots.

    ``counts[i]`` simple roots are taken from label i; ``ways`` is how many
    choices of distinct roots inside the blocks give the same sum (1 for a
    dense matrix).
    """

    counts: tuple[int, ...]
    ways: int

    @property
    def gamma(self) -> Multidegree:
        return self.counts

    @property
    def length(self) -> int:
        return sum(self.counts)


def pairing(m: GKMMatrix, v, i: int) -> Fraction:
    """(v, alpha_i) for v in simple-root coordinates."""
    return sum((x * m.a(k, i) for k, x in enumerate(v) if x), Fraction(0))


def reflect(m: GKMMatrix, i: int, v) -> Vec:
    c = 2 * pairing(m, v, i) / m.a(i, i)
    return tuple(Fraction(x) - (c if k == i else 0) for k, x in enumerate(v))


def reflect_shift(m: GKMMatrix, i: int, v) -> Vec:
    """r_i(rho + v) - rho = v + alpha_i - 2 (v, alpha_i) / a_ii * alpha_i."""
    c = 1 - 2 * pairing(m, v, i) / m.a(i, i)
    return tuple(Fraction(x) + (c if k == i else 0) for k, x in enumerate(v))


def weyl_enumerate(m: GKMMatrix, max_height: int) -> list[WeylElement]:
    """Weyl group elements whose exponent w rho - rho has height <= max_height."""
    require_valid(m)
    n = len(m)
    zero = (Fraction(0),) * n
    ident = tuple(tuple(Fraction(1 if t == k else 0) for t in range(n)) for k in range(n))
    start = WeylElement((), 1, zero, ident)
    seen = {start.key()}
    out = [start]
    frontier = [start]
    real = real_indices(m)
    for _ in range(max_height):
        nxt = []
        for w in frontier:
            for i in real:
                shift = reflect_shift(m, i, w.rho_shift)
                if sum(shift) > max_height:
                    continue
                action = tuple(reflect(m, i, col) for col in w.action)
                el = WeylElement((i,) + w.word, -w.sign, shift, action)
                if el.key() in seen:
                    continue
                seen.add(el.key())
                nxt.append(el)
        out.extend(nxt)
        frontier = nxt
    return out


def omega0_enumerate(m: GKMMatrix, max_height: int) -> list[OmegaElement]:
    """Sums of mutually orthogonal imaginary simple roots of height <= max_height,
    including the empty sum."""
    require_valid(m)
    n = len(m)
    imag = imaginary_indices(m)
    mult = m.multiplicities
    choices = []
    for i in imag:
        # more than one root from a block needs the block to be self-orthogonal
        top = mult[i] if m.a(i, i) == 0 else min(mult[i], 1)
        choices.append(range(min(top, max_height) + 1))
    out = []
    for ks in product(*choices):
        if sum(ks) > max_height:
            continue
        used = [i for i, k in zip(imag, ks) if k]
        if any(m.a(i, j) != 0 for i, j in combinations(used, 2)):
            continue
        counts = [0] * n
        ways = 1
        for i, k in zip(imag, ks):
            counts[i] = k
            ways *= comb(mult[i], k)
        out.append(OmegaElement(tuple(counts), ways))
    out.sort(key=lambda o: (o.length, o.counts))
    return out


def _as_exponent(v: Vec) -> Multidegree:
    if any(x.denominator != 1 for x in v):
        raise ConventionError(f"non-integral exponent {v}")
    e = tuple(int(x) for x in v)
    if any(x < 0 for x in e):
        raise ConventionError(f"negative exponent {e}: rho convention violated")
    return e


def height_box(m: GKMMatrix, max_height: int) -> Box:
    return Box.orthant(len(m), max_height)


def gkm_rhs(m: GKMMatrix, max_height: int) -> ExactSeries:
    """sum_w det(w) sum_gamma (-1)^l(gamma) T^(w(rho + gamma) - rho)."""
    box = height_box(m, max_height)
    weyl = weyl_enumerate(m, max_height)
    terms = []
    for om in omega0_enumerate(m, max_height):
        s = -1 if om.length % 2 else 1
        for w in weyl:
            if w.length + om.length > max_height:
                continue
            e = _as_exponent(tuple(a + b for a, b in zip(w.rho_shift, w.apply(om.gamma))))
            terms.append((e, w.sign * s * om.ways))
    return ExactSeries.from_terms(box, terms)


def weyl_numerator(m: GKMMatrix, max_height: int) -> ExactSeries:
    """sum_w (-1)^l(w) T^(w rho - rho)."""
    box = height_box(m, max_height)
    return ExactSeries.from_terms(box, ((_as_exponent(w.rho_shift), w.sign)
                                        for w in weyl_enumerate(m, max_height)))


def product_side(d: Mapping[Multidegree, int], nvars: int, max_height: int) -> ExactSeries:
    """prod over positive degrees (1 - T^phi)^d(phi), height <= max_height.

    ``d`` needs an entry (possibly zero) for every nonzero nonnegative degree
    of height <= max_height.
    """
    for phi in orthant_degrees(nvars, max_height):
        if phi not in d:
            raise CoverageError(phi)
    box = Box.orthant(nvars, max_height)
    return product_over_table({phi: k for phi, k in d.items() if phi in box}, box)


def assemble_split_dims(m: GKMMatrix, max_height: int) -> tuple[DimTable, dict]:
    """Root multiplicities as g_J part plus the free Lie algebra on the u+ generators.

    Returns the full table (every positive degree up to the bound) and the
    free generator table.
    """
    split = free_split(m, max_height)
    n = len(m)
    box = Box.orthant(n, max_height)
    dims: DimTable = {phi: 0 for phi in orthant_degrees(n, max_height)}
    for phi, k in split.gJ_dims.items():
        dims[phi] += k
    for phi, k in witt_dimensions(split.free_gens, box).items():
        dims[phi] += k
    return dims, split.free_gens


def verify_factored(m: GKMMatrix, max_height: int) -> list[Mismatch]:
    """Product over roots against (Weyl numerator of g_J) * (1 - sum n_phi T^phi).

    Mismatch ``left`` is the product side.
    """
    if not classify(m).free_split_applicable:
        raise HypothesisError("matrix has mutually orthogonal imaginary simple roots")
    dims, free_gens = assemble_split_dims(m, max_height)
    box = height_box(m, max_height)
    lhs = product_side(dims, len(m), max_height)
    rhs = weyl_numerator(m, max_height) * generator_series(free_gens, box)
    return lhs.mismatches(rhs)


def verify_full(m: GKMMatrix, max_height: int) -> list[Mismatch]:
    """Product over oracle root multiplicities against the Weyl/Omega(0) sum.

    Mismatch ``left`` is the product side.
    """
    dims = quotient_dims(m, max_height)
    return product_side(dims, len(m), max_height).mismatches(gkm_rhs(m, max_height))

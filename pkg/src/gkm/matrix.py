"""Defining matrices of generalized Kac-Moody algebras.

A :class:`GKMMatrix` is either dense (one row per simple root) or in
block form, where each label stands for ``size`` simple roots whose rows and
columns are identical.  Downstream code works with one coordinate per label
and treats the block size as the multiplicity of that simple root, so the
Monster matrix with ``c(1) = 196884`` roots in one block never gets expanded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    condition: str  # "C1", "C2", "C3" or "size"
    i: str
    j: str
    detail: str

    def as_dict(self) -> dict:
        return {"condition": self.condition, "i": self.i, "j": self.j, "detail": self.detail}


@dataclass(frozen=True)
class GKMMatrix:
    labels: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MatrixError("duplicate labels")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise MatrixError(f"entries must be a {n}x{n} square array")
        if self.sizes is not None and len(self.sizes) != n:
            raise MatrixError("need one block size per label")

    @classmethod
    def dense(cls, rows: Sequence[Sequence], labels: Sequence[str] | None = None) -> "GKMMatrix":
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if labels is None:
            labels = [str(i + 1) for i in range(len(entries))]
        return cls(tuple(labels), entries)

    @classmethod
    def block(cls, rows: Sequence[Sequence], sizes: Sequence[int],
              labels: Sequence[str] | None = None) -> "GKMMatrix":
        m = cls.dense(rows, labels)
        return cls(m.labels, m.entries, tuple(int(s) for s in sizes))

    @property
    def is_block(self) -> bool:
        return self.sizes is not None

    @property
    def kind(self) -> str:
        return "block" if self.is_block else "dense"

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return self.sizes if self.sizes is not None else (1,) * len(self.labels)

    def a(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def dense_dimension(self) -> int:
        return sum(self.multiplicities)

    def expand(self, limit: int = 50) -> "GKMMatrix":
        """Dense matrix with one index per simple root; labels become ``label.k``."""
        if not self.is_block:
            return self
        if self.dense_dimension() > limit:
            raise MatrixError(f"refusing to expand {self.dense_dimension()} indices (limit {limit})")
        owner = [b for b, s in enumerate(self.sizes) for _ in range(s)]
        labels = [f"{self.labels[b]}.{k + 1}" for b, s in enumerate(self.sizes) for k in range(s)]
        rows = [[self.entries[b][c] for c in owner] for b in owner]
        return GKMMatrix.dense(rows, labels)

    def block_of_expanded(self) -> list[int]:
        """Block label index for each index of :meth:`expand`."""
        return [b for b, s in enumerate(self.multiplicities) for _ in range(s)]

    def submatrix(self, indices: Sequence[int]) -> "GKMMatrix":
        rows = [[self.entries[i][j] for j in indices] for i in indices]
        labels = [self.labels[i] for i in indices]
        if self.is_block:
            return GKMMatrix.block(rows, [self.sizes[i] for i in indices], labels)
        return GKMMatrix.dense(rows, labels)

    def relabel(self, order: Sequence[int]) -> "GKMMatrix":
        return self.submatrix(order)

    def transpose(self) -> "GKMMatrix":
        n = len(self)
        rows = [[self.entries[j][i] for j in range(n)] for i in range(n)]
        return GKMMatrix(self.labels, tuple(tuple(r) for r in rows), self.sizes)

    # serialization

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "labels": list(self.labels),
            "entries": [[_fraction_str(x) for x in row] for row in self.entries],
        }
        if self.is_block:
            data["sizes"] = [str(s) for s in self.sizes]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "GKMMatrix":
        kind = data.get("kind")
        try:
            rows = [[Fraction(str(x)) for x in row] for row in data["entries"]]
            labels = [str(x) for x in data["labels"]]
            if kind == "dense":
                return cls.dense(rows, labels)
            if kind == "block":
                return cls.block(rows, [int(str(s)) for s in data["sizes"]], labels)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MatrixError(f"malformed matrix file: {exc}") from exc
        raise MatrixError(f"unknown matrix kind {kind!r}")


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def load_matrix(path: str | Path) -> GKMMatrix:
    with open(path) as fh:
        return GKMMatrix.from_json(json.load(fh))


def save_matrix(m: GKMMatrix, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(m.to_json(), fh, indent=1)
        fh.write("\n")


def validate(m: GKMMatrix) -> list[Violation]:
    """Every violation of C1 (symmetry), C2 (off-diagonal sign), C3 (integrality).

    In block form the diagonal block of a label with size > 1 also holds
    off-diagonal entries of the expanded matrix, so C2 applies to it too.
    """
    out: list[Violation] = []
    n = len(m)
    lab = m.labels
    mult = m.multiplicities
    for b, s in enumerate(mult):
        if s < 1:
            out.append(Violation("size", lab[b], lab[b], f"block size {s} is not positive"))
    for i in range(n):
        for j in range(i + 1, n):
            if m.a(i, j) != m.a(j, i):
                out.append(Violation("C1", lab[i], lab[j], f"a[{lab[i]},{lab[j]}]={m.a(i, j)} != a[{lab[j]},{lab[i]}]={m.a(j, i)}"))
    for i in range(n):
        for j in range(i, n):
            off_diagonal = i != j or mult[i] > 1
            if off_diagonal and m.a(i, j) > 0:
                out.append(Violation("C2", lab[i], lab[j], f"off-diagonal entry {m.a(i, j)} > 0"))
    for i in range(n):
        aii = m.a(i, i)
        if aii > 0:
            for j in range(n):
                q = 2 * m.a(i, j) / aii
                if q.denominator != 1:
                    out.append(Violation("C3", lab[i], lab[j], f"2*a[{lab[i]},{lab[j]}]/a[{lab[i]},{lab[i]}] = {q} is not an integer"))
    return out


def require_valid(m: GKMMatrix) -> None:
    problems = validate(m)
    if problems:
        raise MatrixError("invalid matrix: " + "; ".join(f"{v.condition} at ({v.i},{v.j})" for v in problems))


@dataclass(frozen=True)
class Classification:
    real: frozenset[str]
    imaginary: frozenset[str]
    free_split_applicable: bool

    def as_dict(self) -> dict:
        return {"real": sorted(self.real), "imaginary": sorted(self.imaginary),
                "free_split_applicable": self.free_split_applicable}


def real_indices(m: GKMMatrix) -> list[int]:
    return [i for i in range(len(m)) if m.a(i, i) > 0]


def imaginary_indices(m: GKMMatrix) -> list[int]:
    return [i for i in range(len(m)) if m.a(i, i) <= 0]


def classify(m: GKMMatrix) -> Classification:
    require_valid(m)
    real = real_indices(m)
    imag = imaginary_indices(m)
    # an imaginary block of size > 1 pairs distinct roots through its own diagonal entry
    applicable = all(m.a(i, j) < 0 for i, j in combinations(imag, 2))
    applicable = applicable and all(m.a(i, i) < 0 for i in imag if m.multiplicities[i] > 1)
    return Classification(frozenset(m.labels[i] for i in real),
                          frozenset(m.labels[i] for i in imag), applicable)


@dataclass(frozen=True)
class CenterPairs:
    """Equal-column pairs.  ``blocks`` holds (label, label, count) at block
    granularity; for a dense matrix every count is 1 and ``pairs`` lists them."""

    blocks: tuple[tuple[str, str, int], ...]

    @property
    def pairs(self) -> set[frozenset[str]]:
        return {frozenset((a, b)) for a, b, _ in self.blocks if a != b}

    @property
    def total(self) -> int:
        return sum(k for _, _, k in self.blocks)

    def as_dict(self) -> dict:
        return {"blocks": [{"i": a, "j": b, "count": str(k)} for a, b, k in self.blocks],
                "total": str(self.total)}


def center_pairs(m: GKMMatrix) -> CenterPairs:
    n = len(m)
    mult = m.multiplicities
    column = [tuple(m.a(r, c) for r in range(n)) for c in range(n)]
    found = []
    for b in range(n):
        if mult[b] > 1:
            found.append((m.labels[b], m.labels[b], mult[b] * (mult[b] - 1) // 2))
    for b, c in combinations(range(n), 2):
        if column[b] == column[c]:
            found.append((m.labels[b], m.labels[c], mult[b] * mult[c]))
    return CenterPairs(tuple(found))


def monster_matrix(j_max: int, coeffs) -> GKMMatrix:
    """Block matrix M on labels -1, 1..j_max: entry -(i+j), block sizes c(i).

    ``coeffs`` maps n to c(n) for n = -1..j_max (a dict or a ``JExpansion``).
    """
    if j_max < 1:
        raise MatrixError("j_max must be at least 1")
    idx = [-1] + list(range(1, j_max + 1))
    sizes = []
    for i in idx:
        c = coeffs[i]
        if c <= 0:
            raise MatrixError(f"block size c({i}) = {c} is not positive")
        sizes.append(c)
    rows = [[-(i + j) for j in idx] for i in idx]
    return GKMMatrix.block(rows, sizes, [str(i) for i in idx])

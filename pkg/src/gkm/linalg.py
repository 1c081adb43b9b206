"""Incremental row echelon form over the rationals, on sparse vectors."""
from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict[Hashable, Fraction]


class EchelonBasis:
    """Rows kept in echelon form; each row's pivot is its smallest key and
    the pivot coefficient is normalized to 1."""

    def __init__(self):
        self.rows: dict[Hashable, Vector] = {}
        self._pivots: list = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> Vector:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        if not v:
            return v
        lo = min(v)
        start = bisect.bisect_left(self._pivots, lo)
        for p in self._pivots[start:]:
            c = v.get(p)
            if not c:
                continue
            for k, r in self.rows[p].items():
                x = v.get(k, 0) - c * r
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
            if not v:
                break
        return v

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        """Insert ``vec``; return True when it was independent of the rows."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        c = v[p]
        self.rows[p] = {k: x / c for k, x in v.items()}
        bisect.insort(self._pivots, p)
        return True

    def contains(self, vec: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[Mapping[Hashable, Fraction]]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank

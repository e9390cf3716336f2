"""Sparse echelon forms over the rationals and over a prime field.

Vectors are dicts mapping column index to a nonzero coefficient.  The
rational backend is exact; the prime backend is used for large complexes,
where a full mod-p rank certifies the rational rank from below (and equals
it whenever the target rank is also an upper bound, e.g. rank 2g in a
2g-dimensional quotient).
"""

from __future__ import annotations

from fractions import Fraction

PRIME = (1 << 31) - 1


class Echelon:
    """Incremental row echelon basis; exact over Q when p is None."""

    def __init__(self, p: int | None = None):
        self.p = p
        self.pivots: dict[int, dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _norm(self, x):
        return x % self.p if self.p else x

    def reduce(self, vec: dict) -> dict:
        """Residual of vec against the current basis (vec is not modified)."""
        v = {c: self._norm(x) for c, x in vec.items() if self._norm(x) != 0}
        done = -1
        while True:
            todo = [c for c in v if c > done and c in self.pivots]
            if not todo:
                break
            c = min(todo)
            done = c
            row = self.pivots[c]
            coeff = v[c]
            for col, x in row.items():
                if self.p:
                    nv = (v.get(col, 0) - coeff * x) % self.p
                else:
                    nv = v.get(col, Fraction(0)) - coeff * x
                if nv:
                    v[col] = nv
                else:
                    v.pop(col, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; returns True if it enlarged the span."""
        res = self.reduce(vec)
        if not res:
            return False
        c = min(res)
        lead = res[c]
        if self.p:
            inv = pow(lead, self.p - 2, self.p)
            row = {col: (x * inv) % self.p for col, x in res.items()}
        else:
            row = {col: x / lead for col, x in res.items()}
        self.pivots[c] = row
        return True


def span_rank(vectors, p: int | None = None) -> int:
    ech = Echelon(p)
    for v in vectors:
        ech.add(v)
    return ech.rank

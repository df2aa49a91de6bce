"""Sparse fully reduced row echelon form over an arbitrary field.

Rows are dicts ``{column_key: coefficient}``.  Column keys only need to be
totally ordered; the pivot of a row is its largest key, so that reducing a
vector removes its largest words first (graded lexicographic order when the
keys are words of one degree).
"""

from __future__ import annotations

from typing import Hashable, Iterable

__all__ = ["EchelonBasis", "span_equal", "rank"]


class EchelonBasis:
    """Incrementally built, fully reduced echelon basis of a subspace.

    Invariant: every stored row has coefficient 1 at its pivot and no
    other row's pivot among its support.
    """

    __slots__ = ("rows", "occurs", "one")

    def __init__(self, one, vectors: Iterable[dict] = ()):
        self.rows: dict[Hashable, dict] = {}
        # column -> set of pivots whose row touches that column (off-pivot)
        self.occurs: dict[Hashable, set] = {}
        self.one = one
        for v in vectors:
            self.insert(v)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the span; no key is a pivot."""
        rows = self.rows
        hits = [k for k in vec if k in rows]
        if not hits:
            return {k: c for k, c in vec.items() if c}
        out = dict(vec)
        for piv in hits:
            c = out.pop(piv, None)
            if not c:
                continue
            for k, r in rows[piv].items():
                if k == piv:
                    continue
                v = out.get(k)
                v = -(c * r) if v is None else v - c * r
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return {k: c for k, c in out.items() if c}

    def insert(self, vec: dict) -> bool:
        """Add a vector; return True if the rank grew."""
        r = self.reduce(vec)
        if not r:
            return False
        piv = max(r)
        inv = self.one / r[piv]
        r = {k: c * inv for k, c in r.items()}
        r[piv] = self.one
        # eliminate the new pivot from the existing rows
        for other in list(self.occurs.get(piv, ())):
            row = self.rows[other]
            c = row.pop(piv)
            for k, v in r.items():
                if k == piv:
                    continue
                w = row.get(k)
                w = -(c * v) if w is None else w - c * v
                if w:
                    row[k] = w
                    if k != other:
                        self.occurs.setdefault(k, set()).add(other)
                else:
                    row.pop(k, None)
                    s = self.occurs.get(k)
                    if s is not None:
                        s.discard(other)
        self.occurs.pop(piv, None)
        self.rows[piv] = r
        for k in r:
            if k != piv:
                self.occurs.setdefault(k, set()).add(piv)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[dict], one) -> int:
    return len(EchelonBasis(one, vectors))


def span_equal(a: Iterable[dict], b: Iterable[dict], one) -> tuple[bool, list[dict]]:
    """Compare two spans; return (equal, discrepancy vectors).

    The discrepancy list holds the reduced remainders of vectors of either
    family that fall outside the other family's span.
    """
    a, b = list(a), list(b)
    ea, eb = EchelonBasis(one, a), EchelonBasis(one, b)
    diff = [r for r in (eb.reduce(v) for v in a) if r]
    diff += [r for r in (ea.reduce(v) for v in b) if r]
    return not diff, diff

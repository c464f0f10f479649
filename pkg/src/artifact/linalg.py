"""Exact sparse linear algebra over Q and F_p.

Vectors are dicts ``column -> nonzero coefficient``.  An :class:`Echelon`
keeps rows keyed by pivot (the smallest column of the row, normalized to 1),
so a single ascending sweep reduces any vector to a canonical remainder.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[int, object]


def axpy(F, target: Vector, a, src: Vector) -> None:
    """target -= a * src, in place."""
    if F.char:
        p = F.char
        for c, b in src.items():
            v = (target.get(c, 0) - a * b) % p
            if v:
                target[c] = v
            else:
                target.pop(c, None)
    else:
        for c, b in src.items():
            v = target.get(c)
            if v is None:
                target[c] = -(a * b)
            else:
                v = v - a * b
                if v:
                    target[c] = v
                else:
                    del target[c]


def scale(F, v: Vector, a) -> Vector:
    if F.char:
        p = F.char
        return {c: x * a % p for c, x in v.items()}
    return {c: x * a for c, x in v.items()}


def add(F, u: Vector, v: Vector, a=None) -> Vector:
    """u + a*v as a new vector (a defaults to 1)."""
    out = dict(u)
    axpy(F, out, F.neg(F.one) if a is None else F.neg(a), v)
    return out


class Echelon:
    """Incremental semi-echelon basis of a subspace.

    With ``track=True`` each row remembers which combination of inserted
    vectors produced it, so vectors that reduce to zero yield kernel elements
    and :meth:`solve` can express members in terms of the inserted vectors.
    """

    def __init__(self, field, track: bool = False):
        self.F = field
        self.track = track
        self.rows: Dict[int, Vector] = {}
        self.tags: Dict[int, Vector] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, v: Vector, tag: Optional[Vector] = None) -> Tuple[Vector, Optional[Vector]]:
        F = self.F
        rows = self.rows
        v = dict(v)
        if tag is not None:
            tag = dict(tag)
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        p = F.char
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if a is None:
                continue
            row = rows[c]
            if p:
                for col, b in row.items():
                    old = v.get(col)
                    nv = ((old or 0) - a * b) % p
                    if nv:
                        v[col] = nv
                        if old is None and col in rows:
                            heapq.heappush(heap, col)
                    elif old is not None:
                        del v[col]
            else:
                for col, b in row.items():
                    old = v.get(col)
                    if old is None:
                        v[col] = -(a * b)
                        if col in rows:
                            heapq.heappush(heap, col)
                    else:
                        nv = old - a * b
                        if nv:
                            v[col] = nv
                        else:
                            del v[col]
            if tag is not None:
                axpy(F, tag, a, self.tags[c])
        return v, tag

    def remainder(self, v: Vector) -> Vector:
        return self.reduce(v)[0]

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]

    def add(self, v: Vector, tag: Optional[Vector] = None):
        """Insert v.  Returns None if v was independent, else the reduced tag
        (a kernel relation when tracking, ``{}`` otherwise)."""
        r, t = self.reduce(v, tag if self.track else None)
        if not r:
            return t if self.track else {}
        piv = min(r)
        inv = self.F.inv(r[piv])
        self.rows[piv] = scale(self.F, r, inv)
        if self.track:
            self.tags[piv] = scale(self.F, t or {}, inv)
        return None

    def extend(self, vectors: Iterable[Vector]) -> None:
        for v in vectors:
            self.add(v)

    def basis(self) -> List[Vector]:
        return [self.rows[c] for c in sorted(self.rows)]

    def reduced_basis(self) -> List[Vector]:
        """Fully reduced row echelon form (each pivot column cleared in other rows)."""
        F = self.F
        out: Dict[int, Vector] = {}
        for c in sorted(self.rows, reverse=True):
            row = dict(self.rows[c])
            for d in [k for k in row if k != c and k in out]:
                a = row.get(d)
                if a:
                    axpy(F, row, a, out[d])
            out[c] = row
        return [out[c] for c in sorted(out)]

    def solve(self, v: Vector) -> Optional[Vector]:
        """Combination of inserted vectors equal to v, or None if v is not in the span."""
        if not self.track:
            raise ValueError("solve needs a tracking echelon")
        r, t = self.reduce(v, {})
        if r:
            return None
        return scale(self.F, t, self.F.neg(self.F.one))

    def copy(self) -> "Echelon":
        e = Echelon(self.F, self.track)
        e.rows = dict(self.rows)
        e.tags = dict(self.tags)
        return e


def span(field, vectors: Iterable[Vector]) -> Echelon:
    e = Echelon(field)
    e.extend(vectors)
    return e


def rank(field, vectors: Iterable[Vector]) -> int:
    return span(field, vectors).rank


def kernel(field, images: Sequence[Vector]) -> List[Vector]:
    """Basis of {c : sum_j c_j images[j] = 0}, as vectors indexed by j."""
    e = Echelon(field, track=True)
    out = []
    for j, v in enumerate(images):
        rel = e.add(v, {j: field.one})
        if rel is not None:
            out.append(rel)
    return out


def image_and_kernel(field, images: Sequence[Vector]) -> Tuple[Echelon, List[Vector]]:
    e = Echelon(field, track=True)
    out = []
    for j, v in enumerate(images):
        rel = e.add(v, {j: field.one})
        if rel is not None:
            out.append(rel)
    return e, out


def intersect(field, a: Echelon, b_vectors: Sequence[Vector]) -> List[Vector]:
    """Basis of span(a) cap span(b_vectors); b_vectors must be independent."""
    e = Echelon(field, track=True)
    e.rows = dict(a.rows)
    e.tags = {c: {} for c in a.rows}
    out = []
    for w in b_vectors:
        # a row minus its tag always lies in span(a), so a zero remainder
        # leaves a tag in both spaces
        rel = e.add(w, dict(w))
        if rel:
            out.append(rel)
    return out


__all__ = [
    "Vector",
    "axpy",
    "scale",
    "add",
    "Echelon",
    "span",
    "rank",
    "kernel",
    "image_and_kernel",
    "intersect",
]

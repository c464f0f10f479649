"""Ideal arithmetic inside a quotient ring R = S/I, with one interface for
graded rings (Groebner bases modulo I) and artinian rings (linear algebra).

Ideals are lists of polynomials in the presenting ring; results come back as
short generator lists.
"""

from __future__ import annotations

from typing import List, Sequence

from .algebra import DEGREVLEX, Polynomial, PolynomialRing, RingPresentation
from .errors import StructuralError, UnsupportedError
from .finite import FiniteAlgebra, Ideal
from .groebner import (
    ModulePresentation,
    ideal_colon,
    ideal_gb,
    ideal_intersect,
    minimal_generator_indices,
)

Gens = List[Polynomial]


class IdealContext:
    """Common interface; use :func:`ideal_context` to build one."""

    engine = "abstract"

    def __init__(self, R: RingPresentation):
        self.R = R
        self.ring: PolynomialRing = R.ring.with_order(DEGREVLEX)
        self.field = R.field

    # helpers shared by both engines
    def poly(self, f) -> Polynomial:
        if isinstance(f, str):
            return self.ring.parse(f)
        return f.change_ring(self.ring)

    def polys(self, gens: Sequence) -> Gens:
        return [self.poly(g) for g in gens]

    def maximal_ideal(self) -> Gens:
        return list(self.ring.gens)

    def m_power(self, s: int) -> Gens:
        from .algebra import monomials_of_degree
        return [self.ring.monomial(m) for m in monomials_of_degree(self.ring.nvars, s)]

    def product(self, I: Sequence, J: Sequence) -> Gens:
        return self.minimal_generators([f * g for f in self.polys(I) for g in self.polys(J)])

    def add(self, I: Sequence, J: Sequence) -> Gens:
        return self.minimal_generators(self.polys(I) + self.polys(J))

    def equal(self, I: Sequence, J: Sequence) -> bool:
        return self.subset(I, J) and self.subset(J, I)

    def subset(self, I: Sequence, J: Sequence) -> bool:
        return all(self.contains(J, f) for f in self.polys(I))

    def is_zero(self, I: Sequence) -> bool:
        return all(self.contains([], f) for f in self.polys(I))

    def is_proper(self, I: Sequence) -> bool:
        return not self.contains(I, self.ring.one())

    def in_m2(self, f) -> bool:
        return self.contains(self.m_power(2), f)

    def colon_ideal(self, I: Sequence, J: Sequence) -> Gens:
        out = None
        for g in self.polys(J):
            c = self.colon(I, g)
            out = c if out is None else self.intersect(out, c)
        return out if out is not None else [self.ring.one()]

    # engine specific
    def contains(self, I: Sequence, f) -> bool:
        raise NotImplementedError

    def colon(self, I: Sequence, f) -> Gens:
        raise NotImplementedError

    def intersect(self, I: Sequence, J: Sequence) -> Gens:
        raise NotImplementedError

    def minimal_generators(self, I: Sequence) -> Gens:
        raise NotImplementedError

    def reduce(self, f) -> Polynomial:
        raise NotImplementedError

    def strong_condition(self, I: Sequence, s: int) -> bool:
        """I cap m^(s+1) == m^s I.  Only the inclusion into m^s I can fail."""
        lhs = self.intersect(I, self.m_power(s + 1))
        return self.subset(lhs, self.product(self.m_power(s), I))

    def fmt(self, I: Sequence) -> List[str]:
        return [str(self.reduce(g)) for g in self.minimal_generators(I)]


class ArtinianContext(IdealContext):
    engine = "artinian"

    def __init__(self, R: RingPresentation, A: FiniteAlgebra):
        super().__init__(R)
        self.A = A

    def ideal(self, I: Sequence) -> Ideal:
        return self.A.ideal([self.poly(g) for g in I])

    def vec(self, f):
        return self.A.element(self.poly(f))

    def contains(self, I, f) -> bool:
        return self.ideal(I).contains(self.vec(f))

    def colon(self, I, f) -> Gens:
        return self.ideal(I).colon_element(self.vec(f)).generators_as_polys()

    def intersect(self, I, J) -> Gens:
        return self.ideal(I).intersect(self.ideal(J)).generators_as_polys()

    def minimal_generators(self, I) -> Gens:
        return self.ideal(I).generators_as_polys()

    def reduce(self, f) -> Polynomial:
        return self.A.to_poly(self.vec(f))

    def equal(self, I, J) -> bool:
        return self.ideal(I) == self.ideal(J)

    def strong_condition(self, I, s: int) -> bool:
        P = self.ideal(I)
        return P.intersect(self.A.m_power(s + 1)) == self.A.m_power(s).product(P)

    def subset(self, I, J) -> bool:
        return self.ideal(I).issubset(self.ideal(J))


class GradedContext(IdealContext):
    engine = "graded"

    def __init__(self, R: RingPresentation):
        super().__init__(R)
        self.modulo = [g.change_ring(self.ring) for g in R.generators]
        self._gb_cache = {}
        self._base = ideal_gb(self.modulo, self.ring) if self.modulo else None

    def _gb(self, I: Sequence):
        gens = self.polys(I) + self.modulo
        key = tuple(sorted(str(g) for g in gens))
        gb = self._gb_cache.get(key)
        if gb is None:
            gb = ideal_gb(gens, self.ring)
            self._gb_cache[key] = gb
        return gb

    def contains(self, I, f) -> bool:
        return self._gb(I).contains(self.poly(f))

    def reduce(self, f) -> Polynomial:
        f = self.poly(f)
        return self._base.reduce(f) if self._base is not None else f

    def colon(self, I, f) -> Gens:
        out = ideal_colon(self.polys(I), self.poly(f), modulo=self.modulo, ring=self.ring)
        return self.minimal_generators(out)

    def intersect(self, I, J) -> Gens:
        out = ideal_intersect(self.polys(I), self.polys(J), modulo=self.modulo, ring=self.ring)
        return self.minimal_generators(out)

    def minimal_generators(self, I) -> Gens:
        gens = [self.reduce(g) for g in self.polys(I)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            return []
        if any(not g.is_homogeneous() for g in gens):
            # no grading to lean on: drop generators lying in the ideal of the others
            kept = list(gens)
            for g in list(gens):
                rest = [h for h in kept if h is not g]
                if self.contains(rest, g):
                    kept = rest
            return [g.monic() for g in kept]
        P = ModulePresentation(self.ring, 1, [[g] for g in gens], self.modulo, [0])
        return [gens[j].monic() for j in minimal_generator_indices(P)]


def quotient_by_element(R: RingPresentation, y: Polynomial):
    """Present R/(y) with one variable fewer.

    y must be c*v + g with v a variable not occurring in g; v is replaced by
    -g/c everywhere.  Returns ``(Rbar, phi)`` with ``phi`` mapping polynomials
    of R's ring to Rbar's ring.
    """
    ring = R.ring
    y = y.change_ring(ring)
    F = R.field
    n = ring.nvars
    v = None
    for i in range(n):
        e = tuple(1 if k == i else 0 for k in range(n))
        c = y.coefficient(e)
        if c != F.zero and all(m[i] == 0 for m, _ in y.items() if m != e):
            v = i
    if v is None:
        raise UnsupportedError(f"cannot eliminate a variable using {y}")
    e = tuple(1 if k == v else 0 for k in range(n))
    c = y.coefficient(e)
    names = [nm for k, nm in enumerate(R.names) if k != v]
    sub_order = "local" if R.is_local else "degrevlex"
    from .algebra import NEGDEGREVLEX
    target = PolynomialRing(F, names, NEGDEGREVLEX if R.is_local else DEGREVLEX)
    images = []
    idx = 0
    for k in range(n):
        if k == v:
            images.append(None)
        else:
            images.append(target.gen(idx))
            idx += 1
    rest = y - ring.monomial(e) * c
    zero_v = [target.zero() if k == v else images[k] for k in range(n)]
    images[v] = rest.compose(zero_v) * F.neg(F.inv(c))

    def phi(f: Polynomial) -> Polynomial:
        return f.change_ring(ring).compose(images)

    gens = [phi(g).monic() for g in R.generators if not phi(g).is_zero()]
    Rbar = RingPresentation(F, tuple(names), sub_order, tuple(g for g in gens if not g.is_zero()),
                            R.ideal_name)
    return Rbar, phi


def ideal_context(R: RingPresentation) -> IdealContext:
    """Artinian context when the quotient is finite, graded context when the
    presentation is homogeneous, otherwise unsupported."""
    from .resolutions import build_algebra
    try:
        return ArtinianContext(R, build_algebra(R))
    except UnsupportedError:
        if R.is_homogeneous:
            return GradedContext(R)
        raise UnsupportedError(
            "unsupported: use artinian engine or graded presentation") from None


__all__ = ["IdealContext", "ArtinianContext", "GradedContext", "ideal_context", "quotient_by_element"]

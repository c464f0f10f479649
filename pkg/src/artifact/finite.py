"""Artinian quotients as finite-dimensional algebras.

A :class:`FiniteAlgebra` stores a monomial k-basis of R = k[x]/I (localized at
the origin when I is not homogeneous) together with the matrices of
multiplication by each variable.  Everything else (ideals, colons, socle,
m-adic filtration, associated graded ring) is exact linear algebra on top.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    DEGREVLEX,
    NEGDEGREVLEX,
    Monomial,
    Polynomial,
    PolynomialRing,
    RingPresentation,
    monomials_of_degree,
)
from .errors import PreconditionError, StructuralError, UnsupportedError
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    groebner_basis,
    is_zero_dimensional,
    standard_monomials,
)
from .linalg import Echelon, Vector, axpy, intersect, kernel, scale

NON_ARTINIAN = "dimension >= 1: use graded engine or tangent cone"


class FiniteAlgebra:
    """Finite-dimensional local k-algebra with a monomial basis.

    ``basis[0]`` is always the monomial 1.  ``weights`` holds the degree of
    each basis monomial when the algebra is graded, else None.
    """

    def __init__(self, field, names: Sequence[str], basis: List[Monomial],
                 mulvar: List[List[Vector]], graded: bool,
                 presentation: Optional[RingPresentation] = None,
                 normal_form=None):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        self.basis = list(basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.mulvar = mulvar
        self.graded = graded
        self.weights = [sum(m) for m in self.basis] if graded else None
        self.presentation = presentation
        self._nf = normal_form
        self._mono_cache: Dict[Monomial, Vector] = {}
        self._table: Dict[Tuple[int, int], Vector] = {}
        self.ring = PolynomialRing(field, self.names, DEGREVLEX)
        self._build_filtration()

    # --- basic data
    @property
    def dim(self) -> int:
        return len(self.basis)

    def one(self) -> Vector:
        return {0: self.field.one}

    def var(self, i: int) -> Vector:
        return self.monomial_vector(tuple(1 if j == i else 0 for j in range(self.n)))

    def basis_vector(self, b: int) -> Vector:
        return {b: self.field.one}

    def mul_var(self, i: int, u: Vector) -> Vector:
        out: Vector = {}
        F = self.field
        rows = self.mulvar[i]
        for a, c in u.items():
            axpy(F, out, F.neg(c), rows[a])
        return out

    def basis_product(self, a: int, b: int) -> Vector:
        """basis[a] * basis[b], memoized by walking the exponents of basis[b]."""
        key = (a, b) if a <= b else (b, a)
        v = self._table.get(key)
        if v is not None:
            return v
        a, b = key
        mb = self.basis[b]
        if sum(mb) == 0:
            v = {a: self.field.one}
        else:
            i = next(k for k, e in enumerate(mb) if e)
            prev = tuple(e - (1 if k == i else 0) for k, e in enumerate(mb))
            pb = self.index[prev]
            v = self.mul_var(i, self.basis_product(a, pb))
        self._table[key] = v
        return v

    def mul(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        F = self.field
        if len(u) > len(v):
            u, v = v, u
        for a, c in u.items():
            for b, d in v.items():
                axpy(F, out, F.neg(F.mul(c, d)), self.basis_product(a, b))
        return out

    def monomial_vector(self, m: Monomial) -> Vector:
        v = self._mono_cache.get(m)
        if v is not None:
            return v
        if m in self.index:
            v = {self.index[m]: self.field.one}
        else:
            i = next(k for k, e in enumerate(m) if e)
            prev = tuple(e - (1 if k == i else 0) for k, e in enumerate(m))
            v = self.mul_var(i, self.monomial_vector(prev))
        self._mono_cache[m] = v
        return v

    def element(self, f: Polynomial) -> Vector:
        """Coordinates of the class of a polynomial in the algebra."""
        if f.ring.nvars != self.n or f.ring.field != self.field:
            raise StructuralError("polynomial does not belong to this algebra's ring")
        out: Vector = {}
        F = self.field
        for m, c in f.items():
            if sum(m) >= len(self.m_powers) and len(self.m_powers) > 0:
                continue
            axpy(F, out, F.neg(c), self.monomial_vector(m))
        return out

    def to_poly(self, v: Vector) -> Polynomial:
        return Polynomial._raw(self.ring, {self.basis[i]: c for i, c in v.items()})

    def is_unit(self, v: Vector) -> bool:
        return bool(v.get(0))

    def in_m(self, v: Vector) -> bool:
        return not v.get(0)

    def in_m_power(self, v: Vector, s: int) -> bool:
        if s >= len(self.m_powers):
            return not v
        return self.m_powers[s].contains(v)

    def linear_class(self, v: Vector) -> Vector:
        """Class of v in m/m^2, as coordinates on the variables."""
        out: Vector = {}
        for i in range(self.n):
            b = self.var_index[i]
            if b is not None and b in v:
                out[i] = v[b]
        return out

    def order(self, v: Vector) -> Optional[int]:
        """m-adic order of v (None for v = 0)."""
        if not v:
            return None
        s = 0
        while s + 1 < len(self.m_powers) and self.m_powers[s + 1].contains(v):
            s += 1
        return s

    # --- m-adic filtration
    def _build_filtration(self):
        F = self.field
        self.var_index = []
        for i in range(self.n):
            m = tuple(1 if j == i else 0 for j in range(self.n))
            self.var_index.append(self.index.get(m))
        powers = [Echelon(F)]
        powers[0].extend(self.basis_vector(b) for b in range(self.dim))
        cur = [self.basis_vector(b) for b in range(1, self.dim)]
        m1 = Echelon(F)
        m1.extend(cur)
        if m1.rank:
            powers.append(m1)
        while True:
            nxt = Echelon(F)
            for u in powers[-1].basis():
                for i in range(self.n):
                    nxt.add(self.mul_var(i, u))
            if nxt.rank == 0 or len(powers) == 1:
                break
            powers.append(nxt)
        self.m_powers = powers
        self.nilpotency_index = len(powers)
        self.hilbert = [powers[i].rank - (powers[i + 1].rank if i + 1 < len(powers) else 0)
                        for i in range(len(powers))]
        self.adic_order = []
        for b in range(self.dim):
            self.adic_order.append(self.order(self.basis_vector(b)))

    @property
    def socle_degree(self) -> int:
        return self.nilpotency_index - 1

    def adic_hilbert_function(self) -> List[int]:
        return list(self.hilbert)

    # --- ideals
    def ideal(self, gens: Sequence) -> "Ideal":
        vecs = [self.element(g) if isinstance(g, Polynomial) else dict(g) for g in gens]
        return Ideal(self, vecs)

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    def maximal_ideal(self) -> "Ideal":
        return Ideal(self, [self.var(i) for i in range(self.n)])

    def m_power(self, s: int) -> "Ideal":
        if s >= len(self.m_powers):
            return self.zero_ideal()
        return Ideal(self, self.m_powers[s].basis(), closed=True)

    def socle(self) -> "Ideal":
        return self.zero_ideal().colon(self.maximal_ideal())

    def annihilator(self, v: Vector) -> "Ideal":
        return self.zero_ideal().colon_element(v)

    def homogeneous_parts(self, v: Vector) -> Dict[int, Vector]:
        if not self.graded:
            raise StructuralError("algebra is not graded")
        out: Dict[int, Vector] = {}
        for b, c in v.items():
            out.setdefault(self.weights[b], {})[b] = c
        return out

    # --- associated graded ring
    def assoc_graded(self) -> RingPresentation:
        """Homogeneous presentation of gr_m(R) in the same variables."""
        pres = self.presentation
        if pres is not None and pres.is_homogeneous:
            return pres.with_generators(pres.generators, order="degrevlex")
        F = self.field
        gens: List[Polynomial] = []
        prev_kernel: List[Dict[Monomial, object]] = []
        N = self.nilpotency_index
        for d in range(2, N + 1):
            monos = monomials_of_degree(self.n, d)
            col = {m: j for j, m in enumerate(monos)}
            nxt = self.m_powers[d + 1] if d + 1 < len(self.m_powers) else Echelon(F)
            images = [nxt.remainder(self.monomial_vector(m)) for m in monos]
            K = kernel(F, images)
            kspace = Echelon(F)
            kspace.extend(K)
            lower = Echelon(F)
            for rel in prev_kernel:
                for i in range(self.n):
                    shifted: Vector = {}
                    for m, c in rel.items():
                        mm = tuple(e + (1 if k == i else 0) for k, e in enumerate(m))
                        shifted[col[mm]] = c
                    lower.add(shifted)
            lower_piv = set(lower.rows)
            for row in kspace.reduced_basis():
                if min(row) not in lower_piv:
                    gens.append(Polynomial._raw(self.ring, {monos[j]: c for j, c in row.items()}))
            prev_kernel = [{monos[j]: c for j, c in row.items()} for row in kspace.basis()]
        gens = [g.monic() for g in gens]
        return RingPresentation(F, self.names, "degrevlex", tuple(gens),
                                pres.ideal_name if pres is not None else "I")

    def check_associativity(self) -> bool:
        for a in range(self.dim):
            for b in range(self.dim):
                ab = self.basis_product(a, b)
                for c in range(self.dim):
                    lhs = self.mul(ab, self.basis_vector(c))
                    rhs = self.mul(self.basis_vector(a), self.basis_product(b, c))
                    if lhs != rhs:
                        return False
        return True

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, basis={[str(self.to_poly({i: 1})) for i in range(self.dim)]})"


class Ideal:
    """An ideal of a FiniteAlgebra, stored as a k-subspace closed under multiplication."""

    def __init__(self, A: FiniteAlgebra, gens: Sequence[Vector], closed: bool = False):
        self.A = A
        self.gens = [dict(g) for g in gens if g]
        self.space = Echelon(A.field)
        if closed:
            self.space.extend(self.gens)
        else:
            queue = list(self.gens)
            while queue:
                v = queue.pop()
                r, _ = self.space.reduce(v)
                if not r:
                    continue
                self.space.add(r)
                for i in range(A.n):
                    w = A.mul_var(i, r)
                    if w:
                        queue.append(w)

    @property
    def dim(self) -> int:
        return self.space.rank

    def basis(self) -> List[Vector]:
        return self.space.basis()

    def contains(self, v) -> bool:
        if isinstance(v, Polynomial):
            v = self.A.element(v)
        return self.space.contains(v)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.space.contains(v) for v in self.basis())

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.dim == other.dim and self.issubset(other))

    def __hash__(self):
        return hash(self.dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_proper(self) -> bool:
        return not self.space.contains(self.A.one())

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.A, self.basis() + other.basis(), closed=True)

    def product(self, other: "Ideal") -> "Ideal":
        A = self.A
        vecs = [A.mul(u, g) for u in self.basis() for g in (other.gens or other.basis())]
        return Ideal(A, vecs, closed=True)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return self.product(other)

    def intersect(self, other: "Ideal") -> "Ideal":
        return Ideal(self.A, intersect(self.A.field, self.space, other.basis()), closed=True)

    def colon_element(self, f) -> "Ideal":
        if isinstance(f, Polynomial):
            f = self.A.element(f)
        return self.colon_vectors([f])

    def colon(self, other: "Ideal") -> "Ideal":
        return self.colon_vectors(other.gens or other.basis())

    def colon_vectors(self, fs: Sequence[Vector]) -> "Ideal":
        A = self.A
        fs = [f for f in fs if f]
        if not fs:
            return Ideal(A, [A.one()])
        d = A.dim
        images = []
        for b in range(d):
            img: Vector = {}
            for k, f in enumerate(fs):
                r = self.space.remainder(A.mul(A.basis_vector(b), f))
                for c, a in r.items():
                    img[k * d + c] = a
            images.append(img)
        return Ideal(A, kernel(A.field, images), closed=True)

    def quotient_dim(self) -> int:
        return self.A.dim - self.dim

    def minimal_generators(self) -> List[Vector]:
        """A minimal generating set, preferring the given generators in order."""
        A = self.A
        mI = Echelon(A.field)
        for u in self.basis():
            for i in range(A.n):
                mI.add(A.mul_var(i, u))
        out = []
        for v in self.gens + self.basis():
            if mI.add(v) is None:
                out.append(v)
        return out

    def generators_as_polys(self) -> List[Polynomial]:
        return [self.A.to_poly(v) for v in self.minimal_generators()]

    def __repr__(self):
        return f"Ideal({', '.join(str(p) for p in self.generators_as_polys()) or '0'})"


# ---------------------------------------------------------------------------
# construction


def _poly_vec(f: Polynomial, index: Dict[Monomial, int]) -> Vector:
    out: Vector = {}
    for m, c in f.items():
        out[index[m]] = c
    return out


def build_finite_algebra(R: RingPresentation, budget: Budget = DEFAULT_BUDGET) -> FiniteAlgebra:
    """Finite-dimensional algebra of an artinian presentation.

    Homogeneous input is handled with a degrevlex Groebner basis.  Otherwise
    the ring is read as the localization at the origin: a Mora standard basis
    gives the standard monomials B, and since m^(D+1) lies in the local ideal
    (D the top degree in B), normal forms are taken modulo I + m^(D+1).
    """
    F = R.field
    n = R.nvars
    gring = PolynomialRing(F, R.names, DEGREVLEX)
    gens = [g.change_ring(gring) for g in R.generators]
    if n == 0:
        return FiniteAlgebra(F, R.names, [()], [], True, R)
    if R.is_homogeneous:
        if not gens:
            raise UnsupportedError(NON_ARTINIAN)
        gb = groebner_basis(gens, DEGREVLEX, budget)
        leads = gb.leading_monomials()
        if not is_zero_dimensional(leads, n):
            raise UnsupportedError(NON_ARTINIAN)
        B = standard_monomials(leads, n)
        std_index = {m: i for i, m in enumerate(B)}
        graded = True

        def nf_vec(m: Monomial) -> Vector:
            return _poly_vec(gb.reduce(gring.monomial(m)), std_index)
    else:
        lring = R.ring.with_order(NEGDEGREVLEX)
        sb = groebner_basis([g.change_ring(lring) for g in R.generators], lring.order, budget)
        lleads = sb.leading_monomials()
        if not is_zero_dimensional(lleads, n):
            raise UnsupportedError(NON_ARTINIAN)
        B = standard_monomials(lleads, n)
        D = max(sum(m) for m in B)
        trunc = [gring.monomial(m) for m in monomials_of_degree(n, D + 1)]
        gb = groebner_basis(gens + trunc, DEGREVLEX, budget)
        gstd = standard_monomials(gb.leading_monomials(), n)
        if len(gstd) != len(B):
            raise AssertionError("truncation changed the length of the local ring")
        gindex = {m: i for i, m in enumerate(gstd)}
        change = Echelon(F, track=True)
        for j, b in enumerate(B):
            if change.add(_poly_vec(gb.reduce(gring.monomial(b)), gindex), {j: F.one}) is not None:
                raise AssertionError("local standard monomials are dependent")
        graded = False

        def nf_vec(m: Monomial) -> Vector:
            w = _poly_vec(gb.reduce(gring.monomial(m)), gindex)
            return change.solve(w)

    orig = list(B)
    B = _sort_basis(B)
    pos = {m: i for i, m in enumerate(B)}
    perm = {j: pos[m] for j, m in enumerate(orig)}
    mulvar: List[List[Vector]] = []
    for i in range(n):
        rows = []
        for m in B:
            mm = tuple(e + (1 if k == i else 0) for k, e in enumerate(m))
            if mm in pos:
                rows.append({pos[mm]: F.one})
            else:
                v = nf_vec(mm)
                rows.append({perm[j]: c for j, c in v.items()})
        mulvar.append(rows)
    return FiniteAlgebra(F, R.names, B, mulvar, graded, R)


def _sort_basis(B: List[Monomial]) -> List[Monomial]:
    """Ascending degree; within a degree, degrevlex-descending (x before y)."""
    return sorted(B, key=lambda m: (sum(m), tuple(-k for k in DEGREVLEX.key(m))))


__all__ = ["FiniteAlgebra", "Ideal", "build_finite_algebra", "NON_ARTINIAN"]

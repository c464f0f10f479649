"""Groebner bases, Mora standard bases, syzygies and ideal arithmetic.

Internally a polynomial or a module vector is a dict from *terms* to
coefficients, where a term is the flat tuple ``(component, e_1, ..., e_n)``.
Ideals simply live in component 0.  Every routine here is exact.
"""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import (
    DEGREVLEX,
    NEGDEGREVLEX,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    QQ,
)
from .errors import BudgetExceeded, StructuralError, UnsupportedError

Term = Tuple[int, ...]
Vec = Dict[Term, object]


@dataclass
class Budget:
    """Resource limits for one Groebner computation."""

    max_basis: int = 1000
    max_degree: int = 30
    max_pairs: int = 10 ** 6


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# term helpers


def _divides(a: Term, b: Term) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Term, b: Term) -> Term:
    return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))


def _quot(a: Term, b: Term) -> Term:
    """Monomial a / b as a term in component 0."""
    return (0,) + tuple(x - y for x, y in zip(a[1:], b[1:]))


def _tdeg(t: Term) -> int:
    return sum(t) - t[0]


def _coprime(a: Term, b: Term) -> bool:
    for x, y in zip(a[1:], b[1:]):
        if x and y:
            return False
    return True


class _Ctx:
    """Field operations plus a cached term order."""

    def __init__(self, field, order: MonomialOrder, shifts: Optional[Sequence[int]] = None):
        self.F = field
        self.order = order
        self.shifts = list(shifts) if shifts else None
        self.is_q = field.char == 0
        mk = order.key
        cache: Dict[Term, tuple] = {}
        sign = 1 if order.is_global else -1
        sh = self.shifts

        if sh is None:
            def key(t):
                k = cache.get(t)
                if k is None:
                    k = mk(t[1:]) + (-t[0],)
                    cache[t] = k
                return k
        else:
            def key(t):
                k = cache.get(t)
                if k is None:
                    base = mk(t[1:])
                    k = (base[0] + sign * sh[t[0]],) + base[1:] + (-t[0],)
                    cache[t] = k
                return k
        self.key = key

    def weight(self, t: Term) -> int:
        d = _tdeg(t)
        if self.shifts is not None:
            d += self.shifts[t[0]]
        return d

    def lead(self, f: Vec) -> Term:
        return max(f, key=self.key)

    def sugar(self, f: Vec) -> int:
        return max(self.weight(t) for t in f)

    def axpy(self, target: Vec, c, m: Term, src: Vec):
        """target -= c * m * src, in place."""
        F = self.F
        add = operator.add
        if self.is_q:
            for t, a in src.items():
                tt = tuple(map(add, t, m))
                v = target.get(tt)
                if v is None:
                    target[tt] = -(c * a)
                else:
                    v = v - c * a
                    if v:
                        target[tt] = v
                    else:
                        del target[tt]
        else:
            p = F.char
            for t, a in src.items():
                tt = tuple(map(add, t, m))
                v = (target.get(tt, 0) - c * a) % p
                if v:
                    target[tt] = v
                else:
                    target.pop(tt, None)

    def scale(self, f: Vec, c) -> Vec:
        if self.is_q:
            return {t: a * c for t, a in f.items()}
        p = self.F.char
        return {t: a * c % p for t, a in f.items()}

    def normalizer(self, f: Vec, lead_term: Term):
        """Factor making f canonical: monic over F_p, primitive over Q."""
        lc = f[lead_term]
        if not self.is_q:
            return self.F.inv(lc)
        import math
        den = 1
        for a in f.values():
            den = den * a.denominator // math.gcd(den, a.denominator)
        g = 0
        for a in f.values():
            g = math.gcd(g, int(a * den))
        c = QQ(den) / g
        if lc < 0:
            c = -c
        return c


class _Elt:
    __slots__ = ("poly", "lm", "lc", "rep", "sugar", "ecart")

    def __init__(self, poly: Vec, ctx: _Ctx, rep: Optional[Vec] = None, sugar: Optional[int] = None):
        self.poly = poly
        self.lm = ctx.lead(poly)
        self.lc = poly[self.lm]
        self.rep = rep
        self.sugar = ctx.sugar(poly) if sugar is None else sugar
        self.ecart = ctx.sugar(poly) - ctx.weight(self.lm)


def _find_reducer(basis: List[_Elt], t: Term) -> Optional[_Elt]:
    for g in basis:
        if _divides(g.lm, t):
            return g
    return None


def _reduce(f: Vec, basis: List[_Elt], ctx: _Ctx, full: bool = True,
            rep: Optional[Vec] = None) -> Tuple[Vec, Optional[Vec]]:
    """Division of f by basis (global orders). Returns (remainder, updated rep)."""
    h = dict(f)
    r: Vec = {}
    F = ctx.F
    key = ctx.key
    while h:
        lt = max(h, key=key)
        c = h[lt]
        g = _find_reducer(basis, lt)
        if g is None:
            if not full:
                h.update(r)
                return h, rep
            r[lt] = c
            del h[lt]
            continue
        q = F.div(c, g.lc)
        m = _quot(lt, g.lm)
        ctx.axpy(h, q, m, g.poly)
        if rep is not None and g.rep is not None:
            ctx.axpy(rep, q, m, g.rep)
    return r, rep


def _mora_reduce(f: Vec, basis: List[_Elt], ctx: _Ctx) -> Vec:
    """Mora's weak normal form with ecart-minimal reducer selection."""
    h = dict(f)
    T = list(basis)
    F = ctx.F
    while h:
        lt = ctx.lead(h)
        best = None
        for g in T:
            if _divides(g.lm, lt) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            return h
        he = ctx.sugar(h) - ctx.weight(lt)
        if best.ecart > he:
            T.append(_Elt(dict(h), ctx))
        q = F.div(h[lt], best.lc)
        ctx.axpy(h, q, _quot(lt, best.lm), best.poly)
    return h


def _spoly(a: _Elt, b: _Elt, ctx: _Ctx, track: bool) -> Tuple[Vec, Optional[Vec], int]:
    L = _lcm(a.lm, b.lm)
    ma, mb = _quot(L, a.lm), _quot(L, b.lm)
    F = ctx.F
    s: Vec = {}
    ctx.axpy(s, F.neg(F.inv(a.lc)), ma, a.poly)
    ctx.axpy(s, F.inv(b.lc), mb, b.poly)
    rep = None
    if track:
        rep = {}
        if a.rep:
            ctx.axpy(rep, F.neg(F.inv(a.lc)), ma, a.rep)
        if b.rep:
            ctx.axpy(rep, F.inv(b.lc), mb, b.rep)
    sugar = max(a.sugar + _tdeg(ma), b.sugar + _tdeg(mb))
    return s, rep, sugar


class _Engine:
    """Buchberger (global) or Mora (local) completion with optional tracking.

    With ``track=True`` every element carries a representation in terms of the
    tracked input generators, and every reduction to zero is recorded as a
    syzygy.  The product criterion is disabled in that mode because the Koszul
    syzygies it skips are needed as generators.
    """

    def __init__(self, ctx: _Ctx, budget: Budget = DEFAULT_BUDGET, track: bool = False,
                 local: bool = False):
        self.ctx = ctx
        self.budget = budget
        self.track = track
        self.local = local
        self.G: List[_Elt] = []
        self.alive: List[bool] = []
        self.pairs: List[tuple] = []
        self.pair_set = set()
        self.syz: List[Vec] = []
        self.pairs_done = 0
        self._counter = 0
        self.kept: List[object] = []

    # queue items: (sugar, rank, key of lcm, counter, kind, data); at equal
    # sugar S-pairs come before generators, so for homogeneous input a
    # generator reducing to zero lies in the module spanned by earlier ones
    def _push(self, sugar, lead_key, kind, data):
        self._counter += 1
        rank = 0 if kind == "pair" else 1
        heapq.heappush(self.pairs, (sugar, rank, lead_key, self._counter, kind, data))

    def add_generator(self, poly: Vec, rep: Optional[Vec] = None, label=None):
        if not poly:
            if self.track and rep:
                self.syz.append(dict(rep))
            return
        sugar = self.ctx.sugar(poly)
        self._push(sugar, self.ctx.key(self.ctx.lead(poly)), "gen", (poly, rep, label))

    def add_basis_element(self, poly: Vec, rep: Optional[Vec] = None):
        """Insert an element known to be part of a basis (no reduction)."""
        self._insert(_Elt(poly, self.ctx, rep))

    def _partial(self):
        return {"basis": [e.poly for e in self.G], "pairs_done": self.pairs_done}

    def _insert(self, e: _Elt):
        ctx = self.ctx
        if len(self.G) >= self.budget.max_basis:
            raise BudgetExceeded(f"basis size exceeds {self.budget.max_basis}", self._partial())
        new = len(self.G)
        lf = e.lm
        use_product = not self.track
        cands = [i for i, g in enumerate(self.G) if self.alive[i] and g.lm[0] == lf[0]]
        lcms = {i: _lcm(self.G[i].lm, lf) for i in cands}
        cop = {i: _coprime(self.G[i].lm, lf) for i in cands}
        # Gebauer-Moeller criteria
        D: List[int] = []
        C = list(cands)
        while C:
            i = C.pop(0)
            L = lcms[i]
            if (use_product and cop[i]) or not any(_divides(lcms[j], L) for j in C + D):
                D.append(i)
        E = [i for i in D if not (use_product and cop[i])]
        kept = []
        for item in self.pairs:
            kind = item[4]
            if kind == "pair":
                a, b = item[5]
                Lab = _lcm(self.G[a].lm, self.G[b].lm)
                if (Lab[0] == lf[0] and _divides(lf, Lab) and Lab != _lcm(self.G[a].lm, lf)
                        and Lab != _lcm(self.G[b].lm, lf)):
                    self.pair_set.discard((a, b))
                    continue
            kept.append(item)
        if len(kept) != len(self.pairs):
            heapq.heapify(kept)
            self.pairs = kept
        self.G.append(e)
        self.alive.append(True)
        for i in E:
            L = lcms[i]
            g = self.G[i]
            sugar = max(g.sugar + _tdeg(_quot(L, g.lm)), e.sugar + _tdeg(_quot(L, lf)))
            self._push(sugar, ctx.key(L), "pair", (i, new))
            self.pair_set.add((i, new))
        if not self.track:
            for i in cands:
                if _divides(lf, self.G[i].lm):
                    self.alive[i] = False

    def basis(self) -> List[_Elt]:
        return [g for g, a in zip(self.G, self.alive) if a]

    def _normal(self, h: Vec, rep: Optional[Vec]) -> Tuple[Vec, Optional[Vec]]:
        if self.local:
            return _mora_reduce(h, self.G, self.ctx), None
        return _reduce(h, self.G if self.track else self.basis(), self.ctx, full=True, rep=rep)

    def run(self):
        ctx = self.ctx
        while self.pairs:
            sugar, _, _, _, kind, data = heapq.heappop(self.pairs)
            if sugar > self.budget.max_degree:
                raise BudgetExceeded(f"degree exceeds {self.budget.max_degree}", self._partial())
            self.pairs_done += 1
            if self.pairs_done > self.budget.max_pairs:
                raise BudgetExceeded(f"pair count exceeds {self.budget.max_pairs}",
                                     self._partial())
            label = None
            if kind == "gen":
                h, rep, label = data
                rep = dict(rep) if rep is not None else None
            else:
                a, b = data
                self.pair_set.discard((a, b))
                h, rep, sugar = _spoly(self.G[a], self.G[b], ctx, self.track)
            h, rep = self._normal(h, rep)
            if not h:
                if self.track and rep:
                    self.syz.append(rep)
                continue
            lead = ctx.lead(h)
            c = ctx.normalizer(h, lead)
            h = ctx.scale(h, c)
            if rep is not None:
                rep = ctx.scale(rep, c)
            self._insert(_Elt(h, ctx, rep, sugar=max(sugar, ctx.sugar(h))))
            if label is not None:
                self.kept.append(label)
        return self


def _minimal_reduced(elts: List[_Elt], ctx: _Ctx, local: bool) -> List[Vec]:
    """Drop redundant leading terms; tail-reduce (global) and normalize."""
    elts = sorted(elts, key=lambda e: ctx.key(e.lm))
    keep: List[_Elt] = []
    for e in elts:
        if any(_divides(k.lm, e.lm) for k in keep):
            continue
        keep.append(e)
    out: List[Vec] = []
    for i, e in enumerate(keep):
        p = e.poly
        if not local:
            others = [k for j, k in enumerate(keep) if j != i]
            lt = e.lm
            tail = {t: a for t, a in p.items() if t != lt}
            tail, _ = _reduce(tail, others, ctx, full=True)
            p = dict(tail)
            p[lt] = e.poly[lt]
        c = ctx.normalizer(p, e.lm)
        out.append(ctx.scale(p, c))
    out.sort(key=lambda f: ctx.key(ctx.lead(f)))
    return out


# ---------------------------------------------------------------------------
# conversions


def _to_vec(f: Polynomial, comp: int = 0) -> Vec:
    return {(comp,) + m: c for m, c in f.items()}


def _from_vec(v: Vec, ring: PolynomialRing, comp: int = 0) -> Polynomial:
    return Polynomial._raw(ring, {t[1:]: c for t, c in v.items() if t[0] == comp})


def _vector_to_vec(v: Sequence[Polynomial]) -> Vec:
    out: Vec = {}
    for j, f in enumerate(v):
        for m, c in f.items():
            out[(j,) + m] = c
    return out


def _vec_to_vector(v: Vec, ring: PolynomialRing, rank: int) -> List[Polynomial]:
    parts: List[Dict] = [dict() for _ in range(rank)]
    for t, c in v.items():
        parts[t[0]][t[1:]] = c
    return [Polynomial._raw(ring, p) for p in parts]


# ---------------------------------------------------------------------------
# public API: ideals


class GroebnerBasis:
    """Reduced Groebner basis (global order) or minimal Mora standard basis (local)."""

    def __init__(self, ring: PolynomialRing, elements: List[Polynomial], order: MonomialOrder,
                 reduced: bool, _elts: Optional[List[_Elt]] = None, _ctx: Optional[_Ctx] = None):
        self.ring = ring
        self.elements = elements
        self.order = order
        self.reduced = reduced
        self._ctx = _ctx or _Ctx(ring.field, order)
        self._elts = _elts if _elts is not None else [
            _Elt(_to_vec(g), self._ctx) for g in elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def is_local(self) -> bool:
        return not self.order.is_global

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [e.lm[1:] for e in self._elts]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def standard_monomials(self, max_degree: Optional[int] = None) -> Optional[List[Tuple[int, ...]]]:
        """Monomials outside the leading ideal; None if infinitely many and no bound given."""
        return standard_monomials(self.leading_monomials(), self.ring.nvars, max_degree)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"


def standard_monomials(leads: Sequence[Tuple[int, ...]], n: int,
                       max_degree: Optional[int] = None) -> Optional[List[Tuple[int, ...]]]:
    """Standard monomials of a monomial ideal, ascending by degree.

    Returns None when the set is infinite and ``max_degree`` is None.
    """
    from .algebra import monomials_of_degree
    finite = is_zero_dimensional(leads, n)
    if max_degree is None and not finite:
        return None
    out = []
    d = 0
    while max_degree is None or d <= max_degree:
        level = [m for m in reversed(monomials_of_degree(n, d))
                 if not any(all(a <= b for a, b in zip(l, m)) for l in leads)]
        if not level and finite:
            break
        out.extend(level)
        d += 1
    return out


def is_zero_dimensional(leads: Sequence[Tuple[int, ...]], n: int) -> bool:
    """True when the leading ideal contains a pure power of every variable."""
    return all(any(m[i] == sum(m) and m[i] > 0 for m in leads) for i in range(n))


def groebner_basis(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                   budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis (global order) or Mora standard basis (local order)."""
    if not gens:
        raise StructuralError("need at least one polynomial to fix the ring")
    ring = gens[0].ring
    for g in gens:
        if g.ring.names != ring.names or g.ring.field != ring.field:
            raise StructuralError("generators belong to different rings")
    order = order or ring.order
    ring = ring.with_order(order)
    ctx = _Ctx(ring.field, order)
    local = not order.is_global
    eng = _Engine(ctx, budget, track=False, local=local)
    vecs = [_to_vec(g) for g in gens if not g.is_zero()]
    if local:
        for v in vecs:
            lead = ctx.lead(v)
            eng.add_basis_element(ctx.scale(v, ctx.normalizer(v, lead)))
        # the generators are inserted directly, so pairs among them are queued
    else:
        for v in vecs:
            eng.add_generator(v)
    eng.run()
    basis = _minimal_reduced(eng.basis(), ctx, local)
    elements = [_from_vec(v, ring) for v in basis]
    return GroebnerBasis(ring, elements, order, reduced=not local,
                         _elts=[_Elt(v, ctx) for v in basis], _ctx=ctx)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Full normal form (global) or Mora weak normal form (local)."""
    if f.ring.names != gb.ring.names or f.ring.field != gb.ring.field:
        raise StructuralError("polynomial and basis belong to different rings")
    v = _to_vec(f)
    if gb.is_local:
        r = _mora_reduce(v, gb._elts, gb._ctx)
    else:
        r, _ = _reduce(v, gb._elts, gb._ctx, full=True)
    return _from_vec(r, gb.ring)


def _ring_of(polys: Sequence[Polynomial], ring: Optional[PolynomialRing]) -> PolynomialRing:
    if ring is not None:
        return ring
    for p in polys:
        return p.ring
    raise StructuralError("cannot infer the ring of an empty ideal")


def _global(ring: PolynomialRing) -> PolynomialRing:
    return ring if ring.order.is_global and ring.order.blocks is None else ring.with_order(DEGREVLEX)


def ideal_gb(gens: Sequence[Polynomial], ring: Optional[PolynomialRing] = None,
             budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Degrevlex Groebner basis of an ideal; the zero ideal is allowed."""
    ring = _global(_ring_of(gens, ring))
    gens = [g.change_ring(ring) for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(ring, [], DEGREVLEX, True)
    return groebner_basis(gens, DEGREVLEX, budget)


def ideal_contains(big: Sequence[Polynomial], small: Sequence[Polynomial],
                   ring: Optional[PolynomialRing] = None) -> bool:
    """True when every element of ``small`` lies in the ideal generated by ``big``."""
    ring = _global(_ring_of(list(big) + list(small), ring))
    gb = ideal_gb(big, ring)
    return all(gb.contains(f.change_ring(ring)) for f in small)


def ideal_equal(a: Sequence[Polynomial], b: Sequence[Polynomial],
                ring: Optional[PolynomialRing] = None) -> bool:
    """Two-way membership test."""
    return ideal_contains(a, b, ring) and ideal_contains(b, a, ring)


def ideal_product(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> List[Polynomial]:
    return [f * g for f in a for g in b]


def _tagged_ring(ring: PolynomialRing, extra: int, names: Sequence[str]) -> PolynomialRing:
    return PolynomialRing(ring.field, tuple(names) + ring.names,
                          MonomialOrder("degrevlex", blocks=(extra, ring.nvars)))


def _embed(f: Polynomial, ring: PolynomialRing, extra: int) -> Polynomial:
    pad = (0,) * extra
    return Polynomial._raw(ring, {pad + m: c for m, c in f.items()})


def _restrict(f: Polynomial, ring: PolynomialRing, extra: int) -> Polynomial:
    return Polynomial._raw(ring, {m[extra:]: c for m, c in f.items()})


def ideal_intersect(I: Sequence[Polynomial], J: Sequence[Polynomial],
                    modulo: Sequence[Polynomial] = (), ring: Optional[PolynomialRing] = None,
                    budget: Budget = DEFAULT_BUDGET) -> List[Polynomial]:
    """Generators of (I + modulo) cap (J + modulo) via a tag variable."""
    ring = _global(_ring_of(list(I) + list(J) + list(modulo), ring))
    I = [f.change_ring(ring) for f in list(I) + list(modulo) if not f.is_zero()]
    J = [f.change_ring(ring) for f in list(J) + list(modulo) if not f.is_zero()]
    if not I or not J:
        return [f.change_ring(ring) for f in modulo if not f.is_zero()]
    T = _tagged_ring(ring, 1, ["_t"])
    t = T.gen(0)
    gens = [t * _embed(f, T, 1) for f in I] + [(1 - t) * _embed(g, T, 1) for g in J]
    gb = groebner_basis(gens, T.order, budget)
    out = [_restrict(g, ring, 1) for g in gb.elements if all(m[0] == 0 for m, _ in g.items())]
    return ideal_gb(out, ring).elements if out else []


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g, raising if g does not divide f."""
    ring = _global(f.ring)
    ctx = _Ctx(ring.field, DEGREVLEX)
    gv = _to_vec(g.change_ring(ring))
    ge = _Elt(gv, ctx)
    h = _to_vec(f.change_ring(ring))
    q: Vec = {}
    F = ring.field
    while h:
        lt = ctx.lead(h)
        if not _divides(ge.lm, lt):
            raise ArithmeticError(f"{g} does not divide {f}")
        c = F.div(h[lt], ge.lc)
        m = _quot(lt, ge.lm)
        q[m] = F.add(q.get(m, F.zero), c)
        ctx.axpy(h, c, m, gv)
    return _from_vec(q, f.ring)


def ideal_colon(I: Sequence[Polynomial], f, modulo: Sequence[Polynomial] = (),
                ring: Optional[PolynomialRing] = None,
                budget: Budget = DEFAULT_BUDGET) -> List[Polynomial]:
    """Generators of ((I + modulo) : f) for a polynomial or a list of polynomials f."""
    if isinstance(f, Polynomial):
        fs = [f]
    else:
        fs = list(f)
    ring = _global(_ring_of(list(I) + list(modulo) + fs, ring))
    if ring.order.is_global is False:
        raise UnsupportedError("unsupported: use artinian engine or graded presentation")
    base = [g.change_ring(ring) for g in list(I) + list(modulo) if not g.is_zero()]
    result: Optional[List[Polynomial]] = None
    for h in fs:
        h = h.change_ring(ring)
        if h.is_zero():
            part = [ring.one()]
        else:
            inter = ideal_intersect(base, [h], ring=ring, budget=budget)
            part = [exact_divide(g, h) for g in inter]
            if not part:
                part = []
        if result is None:
            result = part
        else:
            result = ideal_intersect(result, part, ring=ring, budget=budget)
    result = result or []
    return ideal_gb(result, ring).elements if result else []


def eliminate(I: Sequence[Polynomial], variables: Sequence[int],
              budget: Budget = DEFAULT_BUDGET) -> List[Polynomial]:
    """Generators of I cap k[remaining variables] via a block order."""
    ring = _ring_of(I, None)
    n = ring.nvars
    elim = sorted(set(variables))
    rest = [i for i in range(n) if i not in elim]
    perm = elim + rest
    T = PolynomialRing(ring.field, [ring.names[i] for i in perm],
                       MonomialOrder("degrevlex", blocks=(len(elim), len(rest))))
    gens = []
    for f in I:
        if f.is_zero():
            continue
        gens.append(Polynomial._raw(T, {tuple(m[i] for i in perm): c for m, c in f.items()}))
    if not gens:
        return []
    gb = groebner_basis(gens, T.order, budget)
    out = []
    inv = [0] * n
    for pos, i in enumerate(perm):
        inv[i] = pos
    base = _global(ring)
    for g in gb.elements:
        if all(all(m[k] == 0 for k in range(len(elim))) for m, _ in g.items()):
            out.append(Polynomial._raw(base, {tuple(m[inv[i]] for i in range(n)): c
                                              for m, c in g.items()}))
    return out


# ---------------------------------------------------------------------------
# modules


@dataclass
class ModulePresentation:
    """Submodule of R^rank generated by ``columns`` where R = S/(modulo).

    ``degrees`` are the degrees of the basis vectors of R^rank (graded shifts).
    """

    ring: PolynomialRing
    rank: int
    columns: List[List[Polynomial]]
    modulo: List[Polynomial] = dc_field(default_factory=list)
    degrees: Optional[List[int]] = None

    def column_degree(self, j: int) -> Optional[int]:
        col = self.columns[j]
        degs = self.degrees or [0] * self.rank
        best = None
        for i, f in enumerate(col):
            if not f.is_zero():
                d = f.degree() + degs[i]
                best = d if best is None else max(best, d)
        return best


def _module_ctx(ring: PolynomialRing, degrees: Optional[Sequence[int]]) -> _Ctx:
    return _Ctx(ring.field, DEGREVLEX, list(degrees) if degrees is not None else None)


def _modulo_gb(M: ModulePresentation, ctx: _Ctx, budget: Budget) -> List[Vec]:
    if not [g for g in M.modulo if not g.is_zero()]:
        return []
    gb = ideal_gb(M.modulo, _global(M.ring), budget)
    return [_to_vec(g) for g in gb.elements]


def syzygies(M: ModulePresentation, budget: Budget = DEFAULT_BUDGET) -> ModulePresentation:
    """Generators of the kernel of R^m -> R^rank given by the columns, R = S/modulo.

    Computed with a tracked Buchberger run (Schreyer-style): every reduction to
    zero of an S-pair or an input column yields a syzygy.  The result is
    verified by multiplying back to zero modulo the quotient ideal.
    """
    ring = _global(M.ring)
    m = len(M.columns)
    degs = M.degrees or [0] * M.rank
    ctx = _module_ctx(ring, degs)
    eng = _Engine(ctx, budget, track=True)
    for g in _modulo_gb(M, ctx, budget):
        for k in range(M.rank):
            v = {(k,) + t[1:]: c for t, c in g.items()}
            eng.add_basis_element(v, {})
    for j, col in enumerate(M.columns):
        v = _vector_to_vec([f.change_ring(ring) for f in col])
        eng.add_generator(v, {(j,) + (0,) * ring.nvars: ring.field.one})
    eng.run()
    col_degs = []
    for j in range(m):
        d = M.column_degree(j)
        col_degs.append(d if d is not None else 0)
    mod_gb = ideal_gb(M.modulo, ring) if [g for g in M.modulo if not g.is_zero()] else None
    out: List[List[Polynomial]] = []
    seen = set()
    for s in eng.syz:
        vec = _vec_to_vector(s, ring, m)
        if mod_gb is not None:
            vec = [mod_gb.reduce(f) for f in vec]
        if all(f.is_zero() for f in vec):
            continue
        key = tuple(frozenset(f.items()) for f in vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    result = ModulePresentation(ring, m, out, list(M.modulo), col_degs)
    _verify_syzygies(M, result)
    return result


def _verify_syzygies(M: ModulePresentation, S: ModulePresentation):
    ring = _global(M.ring)
    mod_gb = ideal_gb(M.modulo, ring) if [g for g in M.modulo if not g.is_zero()] else None
    for s in S.columns:
        for i in range(M.rank):
            acc = ring.zero()
            for j, coeff in enumerate(s):
                if not coeff.is_zero():
                    acc = acc + coeff * M.columns[j][i].change_ring(ring)
            if mod_gb is not None:
                acc = mod_gb.reduce(acc)
            if not acc.is_zero():
                raise AssertionError("syzygy does not multiply back to zero")


class ModuleBasis:
    """Groebner basis of a submodule of S^rank plus (modulo) * S^rank."""

    def __init__(self, M: ModulePresentation, budget: Budget = DEFAULT_BUDGET):
        self.ring = _global(M.ring)
        self.rank = M.rank
        self.ctx = _module_ctx(self.ring, M.degrees or [0] * M.rank)
        eng = _Engine(self.ctx, budget, track=False)
        for g in _modulo_gb(M, self.ctx, budget):
            for k in range(M.rank):
                eng.add_basis_element({(k,) + t[1:]: c for t, c in g.items()})
        for col in M.columns:
            v = _vector_to_vec([f.change_ring(self.ring) for f in col])
            if v:
                eng.add_generator(v)
        eng.run()
        self._elts = eng.basis()

    def reduce(self, vec: Sequence[Polynomial]) -> List[Polynomial]:
        r, _ = _reduce(_vector_to_vec([f.change_ring(self.ring) for f in vec]), self._elts,
                       self.ctx, full=True)
        return _vec_to_vector(r, self.ring, self.rank)

    def contains(self, vec: Sequence[Polynomial]) -> bool:
        r, _ = _reduce(_vector_to_vec([f.change_ring(self.ring) for f in vec]), self._elts,
                       self.ctx, full=False)
        return not r


def minimal_generator_indices(M: ModulePresentation,
                              budget: Budget = DEFAULT_BUDGET) -> List[int]:
    """Indices of a minimal generating subset of homogeneous columns.

    Columns must be homogeneous with respect to ``M.degrees``; a column is
    dropped when it reduces to zero against everything of lower or equal
    degree processed before it.
    """
    ring = _global(M.ring)
    ctx = _module_ctx(ring, M.degrees or [0] * M.rank)
    eng = _Engine(ctx, budget, track=False)
    for g in _modulo_gb(M, ctx, budget):
        for k in range(M.rank):
            eng.add_basis_element({(k,) + t[1:]: c for t, c in g.items()})
    for j, col in enumerate(M.columns):
        v = _vector_to_vec([f.change_ring(ring) for f in col])
        if v:
            eng.add_generator(v, label=j)
    eng.run()
    return sorted(eng.kept)


def module_contains(M: ModulePresentation, vectors: Sequence[Sequence[Polynomial]],
                    budget: Budget = DEFAULT_BUDGET) -> bool:
    mb = ModuleBasis(M, budget)
    return all(mb.contains(v) for v in vectors)


__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "GroebnerBasis",
    "groebner_basis",
    "normal_form",
    "standard_monomials",
    "is_zero_dimensional",
    "ideal_gb",
    "ideal_contains",
    "ideal_equal",
    "ideal_product",
    "ideal_intersect",
    "ideal_colon",
    "exact_divide",
    "eliminate",
    "ModulePresentation",
    "syzygies",
    "ModuleBasis",
    "module_contains",
    "minimal_generator_indices",
]

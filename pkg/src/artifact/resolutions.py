"""Minimal free resolutions, Betti tables and Tor-vanishing of module maps.

Two engines produce a :class:`ResolutionSlice`:

* ``artinian``: the ring is a :class:`FiniteAlgebra`; kernels are k-linear
  kernels and minimal generators are complements of m*K (split by internal
  degree when the algebra is graded).
* ``graded``: the ring is S/I with I homogeneous; syzygies come from the
  tracked Buchberger run and minimal generators from degree-ordered reduction.

Modules are quotients R^r/K with K inside m*R^r, so F_0 = R^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Polynomial, PolynomialRing, RingPresentation, DEGREVLEX
from .errors import BudgetExceeded, PreconditionError, StructuralError, UnsupportedError
from .finite import FiniteAlgebra, build_finite_algebra
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    ModulePresentation,
    ideal_gb,
    minimal_generator_indices,
    syzygies,
)
from .linalg import Echelon, Vector, axpy

DEFAULT_BOUND = 5


# ---------------------------------------------------------------------------
# modules


@dataclass
class Module:
    """R^rank / (relations).  ``relations`` are columns of length ``rank``
    whose entries are polynomials (or algebra vectors for the artinian engine
    when built internally).  ``degrees`` are generator degrees (graded case)."""

    rank: int
    relations: List[List[Polynomial]]
    degrees: Optional[List[int]] = None
    name: str = ""


def residue_field(R: RingPresentation) -> Module:
    ring = R.ring.with_order(DEGREVLEX)
    return Module(1, [[g] for g in ring.gens], [0], "k")


def cyclic_module(R: RingPresentation, gens: Sequence[Polynomial], name: str = "") -> Module:
    """R/J for an ideal J given by generators (J must lie in m)."""
    ring = R.ring.with_order(DEGREVLEX)
    cols = [[g.change_ring(ring)] for g in gens if not g.is_zero()]
    return Module(1, cols, [0], name or "R/J")


def free_module(R: RingPresentation, rank: int = 1) -> Module:
    return Module(rank, [], [0] * rank, "R")


# ---------------------------------------------------------------------------
# resolution slice


@dataclass
class ResolutionSlice:
    """F_N -> ... -> F_0 with differentials d_1..d_N.

    ``diffs[i-1]`` is d_i as a list of columns, one per generator of F_i; a
    column lists its entries on the generators of F_{i-1}.  Entries are
    algebra vectors (artinian engine) or polynomials (graded engine).
    """

    engine: str
    ranks: List[int]
    diffs: List[List[List[object]]]
    degrees: Optional[List[List[int]]]
    bound: int
    algebra: Optional[FiniteAlgebra] = None
    ring: Optional[PolynomialRing] = None
    modulo: List[Polynomial] = dc_field(default_factory=list)
    truncated_at: Optional[int] = None
    complete: bool = False
    _solvers: Dict[int, Echelon] = dc_field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def betti(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for i, r in enumerate(self.ranks):
            if self.degrees is None:
                if r:
                    out[(i, -1)] = r
                continue
            for d in self.degrees[i]:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def entry_is_unit(self, e) -> bool:
        if self.engine == "artinian":
            return bool(e.get(0))
        return bool(e.coefficient((0,) * e.ring.nvars)) if not e.is_zero() else False

    def is_minimal(self) -> bool:
        return not any(self.entry_is_unit(e) for d in self.diffs for col in d for e in col)

    def to_json(self) -> dict:
        b = self.betti()
        rows = [[i, j, c] for (i, j), c in sorted(b.items())]
        return {"betti": rows, "truncated_at": self.truncated_at if self.truncated_at is not None
                else self.bound, "bound": self.bound}


# ---------------------------------------------------------------------------
# artinian engine helpers


def _flat_mul_basis(A: FiniteAlgebra, b: int, v: Vector) -> Vector:
    d = A.dim
    out: Vector = {}
    F = A.field
    for idx, c in v.items():
        j, a = divmod(idx, d)
        prod = A.basis_product(a, b)
        off = j * d
        for t, x in prod.items():
            key = off + t
            val = F.add(out.get(key, F.zero), F.mul(c, x))
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def _flat_mul_var(A: FiniteAlgebra, i: int, v: Vector) -> Vector:
    d = A.dim
    out: Vector = {}
    F = A.field
    rows = A.mulvar[i]
    for idx, c in v.items():
        j, a = divmod(idx, d)
        off = j * d
        for t, x in rows[a].items():
            key = off + t
            val = F.add(out.get(key, F.zero), F.mul(c, x))
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def _flat_weight(A: FiniteAlgebra, degs: Sequence[int], idx: int) -> int:
    j, a = divmod(idx, A.dim)
    return degs[j] + A.weights[a]


def _flat_to_entries(A: FiniteAlgebra, v: Vector, rank: int) -> List[Vector]:
    d = A.dim
    out: List[Vector] = [dict() for _ in range(rank)]
    for idx, c in v.items():
        j, a = divmod(idx, d)
        out[j][a] = c
    return out


def _entries_to_flat(A: FiniteAlgebra, col: Sequence[Vector]) -> Vector:
    d = A.dim
    out: Vector = {}
    for j, e in enumerate(col):
        for a, c in e.items():
            out[j * d + a] = c
    return out


def _homogeneous_split(A: FiniteAlgebra, degs: Sequence[int], v: Vector) -> Dict[int, Vector]:
    out: Dict[int, Vector] = {}
    for idx, c in v.items():
        out.setdefault(_flat_weight(A, degs, idx), {})[idx] = c
    return out


def _submodule_closure(A: FiniteAlgebra, vecs: Sequence[Vector]) -> List[Vector]:
    """k-basis of the submodule generated by vecs (homogeneous pieces kept apart
    when the algebra is graded and the inputs are homogeneous)."""
    space = Echelon(A.field)
    basis = []
    queue = [v for v in vecs if v]
    while queue:
        v = queue.pop()
        r, _ = space.reduce(v)
        if not r:
            continue
        space.add(r)
        basis.append(v)
        for i in range(A.n):
            w = _flat_mul_var(A, i, v)
            if w:
                queue.append(w)
    return basis


def _minimal_gens_artinian(A: FiniteAlgebra, K: List[Vector], degs: Optional[Sequence[int]]
                           ) -> List[Tuple[Vector, Optional[int]]]:
    """Minimal generators of the submodule with k-basis K (homogeneous if graded)."""
    F = A.field
    mK = Echelon(F)
    for v in K:
        for i in range(A.n):
            w = _flat_mul_var(A, i, v)
            if w:
                mK.add(w)
    if degs is not None:
        keyed = sorted(((min(_flat_weight(A, degs, t) for t in v), k) for k, v in enumerate(K)))
        order = [k for _, k in keyed]
    else:
        order = list(range(len(K)))
    out = []
    for k in order:
        v = K[k]
        if mK.add(v) is None:
            deg = _flat_weight(A, degs, next(iter(v))) if degs is not None else None
            out.append((v, deg))
    return out


def _kernel_artinian(A: FiniteAlgebra, gens: List[Vector], degs: Optional[List[int]]
                     ) -> Tuple[List[Vector], Echelon]:
    """k-basis of ker(A^m -> A^r, e_c -> gens[c]); also the tracked image echelon."""
    F = A.field
    d = A.dim
    m = len(gens)
    solver = Echelon(F, track=True)
    groups: Dict[int, List[int]] = {}
    for c in range(m):
        for b in range(d):
            w = degs[c] + A.weights[b] if degs is not None else 0
            groups.setdefault(w, []).append(c * d + b)
    out: List[Vector] = []
    for w in sorted(groups):
        # pieces of different degree are independent, so one solver serves all
        for idx in groups[w]:
            c, b = divmod(idx, d)
            img = _flat_mul_basis(A, b, gens[c])
            rel = solver.add(img, {idx: F.one})
            if rel is not None and rel:
                out.append(rel)
    return out, solver


def _nonlinear(degs: Optional[Sequence[int]], i: int) -> bool:
    return degs is not None and any(d != i for d in degs)


def _artinian_resolution(A: FiniteAlgebra, M: Module, N: int,
                         stop_nonlinear: bool = False) -> ResolutionSlice:
    F = A.field
    graded = A.graded
    rank0 = M.rank
    degs0 = list(M.degrees) if (graded and M.degrees is not None) else ([0] * rank0 if graded else None)
    rel_vecs = []
    for col in M.relations:
        entries = [A.element(f) if isinstance(f, Polynomial) else dict(f) for f in col]
        v = _entries_to_flat(A, entries)
        if graded:
            rel_vecs.extend(_homogeneous_split(A, degs0, v).values())
        elif v:
            rel_vecs.append(v)
    K = _submodule_closure(A, rel_vecs)
    for v in K:
        for idx in v:
            if idx % A.dim == 0:
                raise PreconditionError("presentation is not minimal: a relation has a unit entry")
    ranks = [rank0]
    degrees = [degs0] if graded else None
    diffs: List[List[List[object]]] = []
    solvers: Dict[int, Echelon] = {}
    prev_rank, prev_degs = rank0, degs0
    complete = False
    stopped = N
    for i in range(1, N + 1):
        gens = _minimal_gens_artinian(A, K, prev_degs)
        ranks.append(len(gens))
        cols = [_flat_to_entries(A, v, prev_rank) for v, _ in gens]
        diffs.append(cols)
        new_degs = [dg for _, dg in gens] if graded else None
        if graded:
            degrees.append(new_degs)
        if not gens:
            complete = True
            break
        if i == N or (stop_nonlinear and _nonlinear(new_degs, i)):
            stopped = i
            break
        K, solver = _kernel_artinian(A, [v for v, _ in gens], new_degs)
        solvers[i] = solver
        prev_rank, prev_degs = len(gens), new_degs
    while complete and len(ranks) < N + 1:
        ranks.append(0)
        diffs.append([])
        if graded:
            degrees.append([])
    res = ResolutionSlice("artinian", ranks, diffs, degrees, N, algebra=A, complete=complete,
                          truncated_at=stopped if stopped < N else None)
    res._solvers = solvers
    _check_slice(res)
    return res


# ---------------------------------------------------------------------------
# graded engine


def _graded_resolution(R: RingPresentation, M: Module, N: int, budget: Budget,
                       stop_nonlinear: bool = False) -> ResolutionSlice:
    ring = R.ring.with_order(DEGREVLEX)
    modulo = [g.change_ring(ring) for g in R.generators]
    gb = ideal_gb(modulo, ring) if modulo else None

    def nf(f: Polynomial) -> Polynomial:
        f = f.change_ring(ring)
        return gb.reduce(f) if gb is not None else f

    rank0 = M.rank
    degs0 = list(M.degrees) if M.degrees is not None else [0] * rank0
    cols = [[nf(f) for f in col] for col in M.relations]
    for col in cols:
        for f in col:
            if not f.is_zero() and not f.is_homogeneous():
                raise UnsupportedError("graded engine needs homogeneous relations")
            if not f.is_zero() and f.low_degree() == 0:
                raise PreconditionError("presentation is not minimal: a relation has a unit entry")
    ranks = [rank0]
    degrees = [degs0]
    diffs: List[List[List[object]]] = []
    prev_rank, prev_degs = rank0, degs0
    truncated = None
    complete = False
    current = [c for c in cols if any(not f.is_zero() for f in c)]
    for i in range(1, N + 1):
        try:
            P = ModulePresentation(ring, prev_rank, current, modulo, prev_degs)
            keep = minimal_generator_indices(P, budget)
        except BudgetExceeded:
            truncated = i - 1
            break
        gens = [current[j] for j in keep]
        gdegs = [P.column_degree(j) for j in keep]
        ranks.append(len(gens))
        degrees.append(gdegs)
        diffs.append(gens)
        if not gens:
            complete = True
            break
        if i == N:
            break
        if stop_nonlinear and _nonlinear(gdegs, i):
            truncated = i
            break
        try:
            S = syzygies(ModulePresentation(ring, prev_rank, gens, modulo, prev_degs), budget)
        except BudgetExceeded:
            truncated = i
            break
        current = [[nf(f) for f in c] for c in S.columns]
        current = [c for c in current if any(not f.is_zero() for f in c)]
        prev_rank, prev_degs = len(gens), gdegs
    if truncated is None:
        while len(ranks) < N + 1:
            ranks.append(0)
            degrees.append([])
            diffs.append([])
    res = ResolutionSlice("graded", ranks, diffs, degrees, N, ring=ring, modulo=modulo,
                          truncated_at=truncated, complete=complete)
    _check_slice(res, gb)
    return res


def _check_slice(res: ResolutionSlice, gb=None) -> None:
    """Assert minimality and d_{i-1} d_i = 0."""
    if not res.is_minimal():
        raise AssertionError("resolution has a unit entry")
    for i in range(2, len(res.diffs) + 1):
        d_hi, d_lo = res.diffs[i - 1], res.diffs[i - 2]
        for col in d_hi:
            comp = compose_column(res, d_lo, col, res.ranks[i - 2])
            if res.engine == "artinian":
                if any(comp):
                    raise AssertionError(f"d_{i - 1} d_{i} != 0")
            else:
                for f in comp:
                    r = gb.reduce(f) if gb is not None else f
                    if not r.is_zero():
                        raise AssertionError(f"d_{i - 1} d_{i} != 0")


def compose_column(res: ResolutionSlice, matrix: List[List[object]], col: List[object],
                   out_rank: int) -> List[object]:
    """matrix * col, where matrix is given by columns."""
    if res.engine == "artinian":
        A = res.algebra
        F = A.field
        out: List[Vector] = [dict() for _ in range(out_rank)]
        for c, coeff in enumerate(col):
            if not coeff:
                continue
            for r in range(out_rank):
                e = matrix[c][r]
                if e:
                    prod = A.mul(coeff, e)
                    axpy(F, out[r], F.neg(F.one), prod)
        return out
    ring = res.ring
    acc = [ring.zero() for _ in range(out_rank)]
    for c, coeff in enumerate(col):
        if coeff.is_zero():
            continue
        for r in range(out_rank):
            e = matrix[c][r]
            if not e.is_zero():
                acc[r] = acc[r] + coeff * e
    return acc


# ---------------------------------------------------------------------------
# public API


def choose_engine(R: RingPresentation) -> str:
    """``artinian`` when the quotient is finite-dimensional, else ``graded``."""
    try:
        build_algebra(R)
        return "artinian"
    except UnsupportedError:
        if R.is_homogeneous:
            return "graded"
        raise UnsupportedError(
            "unsupported: non-artinian local ring; use the tangent cone") from None


_ALGEBRA_CACHE: Dict[str, FiniteAlgebra] = {}


def build_algebra(R: RingPresentation) -> FiniteAlgebra:
    key = R.to_text()
    A = _ALGEBRA_CACHE.get(key)
    if A is None:
        A = build_finite_algebra(R)
        if len(_ALGEBRA_CACHE) > 256:
            _ALGEBRA_CACHE.clear()
        _ALGEBRA_CACHE[key] = A
    return A


def minimal_free_resolution(R: RingPresentation, M: Optional[Module] = None,
                            N: int = DEFAULT_BOUND, engine: str = "auto",
                            budget: Budget = DEFAULT_BUDGET,
                            stop_nonlinear: bool = False) -> ResolutionSlice:
    """Minimal free resolution of M (default k) through homological degree N.

    With ``stop_nonlinear`` the computation halts (``truncated_at`` set) at the
    first homological degree i whose generators are not all in degree i.
    """
    if N < 0:
        raise ValueError("homological bound must be non-negative")
    M = M or residue_field(R)
    if engine == "auto":
        engine = choose_engine(R)
    if engine == "artinian":
        return _artinian_resolution(build_algebra(R), M, N, stop_nonlinear)
    if engine == "graded":
        if not R.is_homogeneous:
            raise UnsupportedError("graded engine needs a homogeneous presentation")
        return _graded_resolution(R, M, N, budget, stop_nonlinear)
    raise ValueError(f"unknown engine {engine!r}")


def betti_table(R: RingPresentation, M: Optional[Module] = None, N: int = DEFAULT_BOUND,
                D: Optional[int] = None, engine: str = "auto") -> Dict[Tuple[int, int], int]:
    """beta_{i,j} for i <= N (and j <= D when graded); local rings give (i, -1) totals."""
    res = minimal_free_resolution(R, M, N, engine)
    table = res.betti()
    if D is not None:
        table = {k: v for k, v in table.items() if k[1] <= D}
    return table


def poincare_coefficients(R: RingPresentation, M: Optional[Module] = None,
                          N: int = DEFAULT_BOUND, engine: str = "auto") -> List[int]:
    res = minimal_free_resolution(R, M, N, engine)
    if res.truncated_at is not None:
        raise BudgetExceeded(f"resolution truncated at {res.truncated_at}",
                             {"ranks": res.ranks})
    return list(res.ranks[:N + 1])


# ---------------------------------------------------------------------------
# lifting maps


@dataclass
class MapLift:
    """Chain map phi_i: F_i(M) -> F_i(P); ``vanishing[i]`` is True when every
    entry of phi_i lies in m, i.e. Tor_i(k, phi) = 0."""

    phis: List[List[Vector]]
    vanishing: List[bool]
    bound: int

    @property
    def all_vanishing(self) -> bool:
        return all(self.vanishing)


def lift_map(res_m: ResolutionSlice, res_p: ResolutionSlice,
             phi0: Sequence[Sequence[object]], N: Optional[int] = None) -> MapLift:
    """Lift phi0: F_0(M) -> F_0(P) (columns = images of the generators of M)."""
    if res_m.engine != "artinian" or res_p.engine != "artinian":
        raise UnsupportedError("map lifting is implemented for the artinian engine")
    A = res_m.algebra
    if res_p.algebra is not A and res_p.algebra.presentation != A.presentation:
        raise StructuralError("resolutions live over different rings")
    N = min(res_m.bound, res_p.bound) if N is None else N
    d = A.dim
    F = A.field
    cur = [_entries_to_flat(A, [A.element(e) if isinstance(e, Polynomial) else dict(e)
                                for e in col]) for col in phi0]
    phis = [cur]
    for i in range(1, N + 1):
        cols_m = res_m.diffs[i - 1] if i - 1 < len(res_m.diffs) else []
        solver = res_p._solvers.get(i)
        nxt = []
        for col in cols_m:
            u = _entries_to_flat(A, col)
            w: Vector = {}
            for idx, c in u.items():
                j, b = divmod(idx, d)
                axpy(F, w, F.neg(c), _flat_mul_basis(A, b, cur[j]))
            if not w:
                nxt.append({})
                continue
            if solver is None:
                raise AssertionError(f"no lift possible at degree {i}")
            z = solver.solve(w)
            if z is None:
                raise AssertionError(f"map does not lift at degree {i}")
            nxt.append(z)
        phis.append(nxt)
        cur = nxt
    vanishing = []
    for i, cols in enumerate(phis):
        vanishing.append(not any(idx % d == 0 for z in cols for idx in z))
    return MapLift(phis, vanishing, N)


def tor_map_is_zero(R: RingPresentation, M: Module, P: Module,
                    phi0: Sequence[Sequence[object]], N: int = 4) -> MapLift:
    """Per-degree Tor-vanishing verdicts for the map M -> P given by phi0."""
    res_m = minimal_free_resolution(R, M, N, engine="artinian")
    res_p = minimal_free_resolution(R, P, N + 1, engine="artinian")
    return lift_map(res_m, res_p, phi0, N)


__all__ = [
    "DEFAULT_BOUND",
    "Module",
    "residue_field",
    "cyclic_module",
    "free_module",
    "ResolutionSlice",
    "minimal_free_resolution",
    "betti_table",
    "poincare_coefficients",
    "choose_engine",
    "build_algebra",
    "MapLift",
    "lift_map",
    "tor_map_is_zero",
    "compose_column",
]

"""Linear part of a minimal resolution, bounded linearity defect, Koszul and Golod tests."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DEGREVLEX, Polynomial, RingPresentation, monomials_of_degree
from .errors import PreconditionError, StructuralError, UnsupportedError
from .finite import FiniteAlgebra, build_finite_algebra
from .groebner import ModuleBasis, ModulePresentation, syzygies
from .linalg import Echelon, Vector, axpy
from .resolutions import (
    DEFAULT_BOUND,
    Module,
    ResolutionSlice,
    _flat_mul_basis,
    _entries_to_flat,
    build_algebra,
    choose_engine,
    minimal_free_resolution,
    residue_field,
)

MAX_KOSZUL_GENERATORS = 6
GOLOD_DEGREE_WINDOW = 8


# ---------------------------------------------------------------------------
# linear part


@dataclass
class LinearPartComplex:
    """Linear differentials over gr_m(R); ``diffs[i-1]`` is the i-th map by columns."""

    engine: str
    ranks: List[int]
    diffs: List[List[List[object]]]
    algebra: Optional[FiniteAlgebra] = None
    ring: object = None
    modulo: List[Polynomial] = dc_field(default_factory=list)
    degrees: Optional[List[List[int]]] = None

    def is_complex(self) -> bool:
        for i in range(2, len(self.diffs) + 1):
            lo, hi = self.diffs[i - 2], self.diffs[i - 1]
            for col in hi:
                if any(_nonzero(self, e) for e in _apply(self, lo, col, self.ranks[i - 2])):
                    return False
        return True


def _nonzero(L: LinearPartComplex, e) -> bool:
    if L.engine == "artinian":
        return bool(e)
    if e.is_zero():
        return False
    from .groebner import ideal_gb
    if not L.modulo:
        return True
    return not ideal_gb(L.modulo, L.ring).reduce(e).is_zero()


def _apply(L: LinearPartComplex, matrix, col, out_rank):
    if L.engine == "artinian":
        A = L.algebra
        F = A.field
        out = [dict() for _ in range(out_rank)]
        for c, coeff in enumerate(col):
            if not coeff:
                continue
            for r in range(out_rank):
                e = matrix[c][r]
                if e:
                    axpy(F, out[r], F.neg(F.one), A.mul(coeff, e))
        return out
    acc = [L.ring.zero() for _ in range(out_rank)]
    for c, coeff in enumerate(col):
        if coeff.is_zero():
            continue
        for r in range(out_rank):
            e = matrix[c][r]
            if not e.is_zero():
                acc[r] = acc[r] + coeff * e
    return acc


def linear_part(F: ResolutionSlice) -> LinearPartComplex:
    """Keep the degree-one part of every differential entry.

    Graded slices keep entries whose degree is exactly one; slices over a
    non-graded artinian ring replace each entry by its class in m/m^2, read
    inside gr_m(R).
    """
    if not F.is_minimal():
        raise StructuralError("linear part needs a minimal resolution")
    if F.engine == "artinian" and not F.algebra.graded:
        A = F.algebra
        G = build_finite_algebra(A.assoc_graded())
        gvars = [G.var(i) for i in range(G.n)]
        diffs = []
        for d in F.diffs:
            cols = []
            for col in d:
                new = []
                for e in col:
                    v: Vector = {}
                    for i, c in A.linear_class(e).items():
                        axpy(G.field, v, G.field.neg(c), gvars[i])
                    new.append(v)
                cols.append(new)
            diffs.append(cols)
        L = LinearPartComplex("artinian", list(F.ranks), diffs, algebra=G)
    else:
        diffs = []
        for i, d in enumerate(F.diffs, start=1):
            src, tgt = F.degrees[i], F.degrees[i - 1]
            cols = []
            for c, col in enumerate(d):
                new = []
                for r, e in enumerate(col):
                    keep = src[c] - tgt[r] == 1
                    if F.engine == "artinian":
                        new.append(dict(e) if keep else {})
                    else:
                        new.append(e if keep else F.ring.zero())
                cols.append(new)
            diffs.append(cols)
        if F.engine == "artinian":
            L = LinearPartComplex("artinian", list(F.ranks), diffs, algebra=F.algebra,
                                  degrees=F.degrees)
        else:
            L = LinearPartComplex("graded", list(F.ranks), diffs, ring=F.ring,
                                  modulo=list(F.modulo), degrees=F.degrees)
    if not L.is_complex():
        raise AssertionError("linear part is not a complex")
    return L


def _rank_artinian(G: FiniteAlgebra, cols: List[List[Vector]], src_rank: int) -> int:
    if src_rank == 0 or not cols:
        return 0
    F = G.field
    ech = Echelon(F)
    for col in cols:
        flat = _entries_to_flat(G, col)
        if not flat:
            continue
        for b in range(G.dim):
            img = _flat_mul_basis(G, b, flat)
            if img:
                ech.add(img)
    return ech.rank


def homology_nonzero(L: LinearPartComplex, i: int) -> bool:
    """H_i(lin F) != 0, for 1 <= i < len(L.diffs)."""
    if i >= len(L.diffs) + 0 and i > len(L.diffs) - 1:
        raise ValueError("need the differential d_{i+1}")
    beta_i = L.ranks[i]
    if beta_i == 0:
        return False
    if L.engine == "artinian":
        G = L.algebra
        rank_i = _rank_artinian(G, L.diffs[i - 1], beta_i)
        rank_next = _rank_artinian(G, L.diffs[i], L.ranks[i + 1])
        return beta_i * G.dim - rank_i > rank_next
    # module-theoretic test over the graded ring
    ring = L.ring
    degs_i = L.degrees[i]
    degs_prev = L.degrees[i - 1]
    ker = syzygies(ModulePresentation(ring, L.ranks[i - 1], L.diffs[i - 1], L.modulo, degs_prev))
    img = ModuleBasis(ModulePresentation(ring, beta_i, L.diffs[i], L.modulo, degs_i))
    return not all(img.contains(v) for v in ker.columns)


@dataclass
class LindVerdict:
    bound: int
    nonzero_h: List[int]
    module: str = "k"

    @property
    def lind_bounded(self) -> int:
        return max(self.nonzero_h) if self.nonzero_h else 0

    def to_json(self) -> dict:
        return {"lind_bounded": {"bound": self.bound, "nonzero_h": list(self.nonzero_h),
                                 "value": self.lind_bounded, "module": self.module,
                                 "claim": f"up to {self.bound}"}}


def lind_bounded(R: RingPresentation, M: Optional[Module] = None, N: int = DEFAULT_BOUND,
                 engine: str = "auto") -> LindVerdict:
    """Exact verdicts H_i(lin F) != 0 for 1 <= i <= N."""
    M = M or residue_field(R)
    res = minimal_free_resolution(R, M, N + 1, engine)
    if res.truncated_at is not None:
        raise UnsupportedError(f"resolution truncated at {res.truncated_at}")
    L = linear_part(res)
    nz = [i for i in range(1, N + 1) if homology_nonzero(L, i)]
    return LindVerdict(N, nz, M.name or "M")


# ---------------------------------------------------------------------------
# Koszulness and regularity


@dataclass
class KoszulVerdict:
    status: str
    bound: int
    witness: Optional[Tuple[int, int]] = None

    @property
    def is_koszul(self) -> bool:
        return self.status == "KoszulUpTo"

    def to_json(self) -> dict:
        out = {"status": self.status, "bound": self.bound, "claim": f"up to {self.bound}"}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return {"koszul": out}

    def __str__(self):
        if self.is_koszul:
            return f"KoszulUpTo({self.bound})"
        return f"NotKoszul(witness {self.witness})"


def _require_graded(R: RingPresentation, what: str):
    if not R.is_homogeneous:
        raise PreconditionError(f"{what} needs a graded ring; pass the associated graded ring")


def koszul_check(R: RingPresentation, N: int = DEFAULT_BOUND, engine: str = "auto") -> KoszulVerdict:
    """KoszulUpTo(N), or NotKoszul with the smallest (i, j), j > i, beta_ij(k) != 0."""
    _require_graded(R, "koszul_check")
    res = minimal_free_resolution(R, residue_field(R), N, engine, stop_nonlinear=True)
    for i in range(1, len(res.degrees)):
        bad = sorted(j for j in res.degrees[i] if j != i)
        if bad:
            return KoszulVerdict("NotKoszul", N, (i, bad[0]))
    if res.engine == "graded" and res.truncated_at is not None:
        raise UnsupportedError(f"resolution truncated at {res.truncated_at}")
    return KoszulVerdict("KoszulUpTo", N)


def reg_k_bounded(R: RingPresentation, N: int = DEFAULT_BOUND, engine: str = "auto") -> int:
    """max{j - i : beta_ij(k) != 0, i <= N}."""
    _require_graded(R, "reg_k_bounded")
    res = minimal_free_resolution(R, residue_field(R), N, engine)
    return max((j - i for (i, j) in res.betti()), default=0)


# ---------------------------------------------------------------------------
# Koszul homology and the Golod test


def koszul_homology(A: FiniteAlgebra, by_degree: bool = False):
    """dim_k H_j(K^A) on the variables, j = 0..e.

    With ``by_degree`` (graded A) returns ``{j: {d: dim}}`` split by internal degree.
    """
    e = A.n
    if e > MAX_KOSZUL_GENERATORS:
        raise UnsupportedError(f"Koszul complex on {e} > {MAX_KOSZUL_GENERATORS} generators")
    if by_degree and not A.graded:
        raise StructuralError("degree splitting needs a graded algebra")
    F = A.field
    d = A.dim
    subsets = [list(combinations(range(e), j)) for j in range(e + 1)]
    index = [{S: k for k, S in enumerate(subsets[j])} for j in range(e + 1)]
    xs = [A.var(i) for i in range(e)]

    def wdeg(j, b):
        return (A.weights[b] + j) if by_degree else 0

    # rank of d_j: K_j -> K_{j-1}, split by degree
    ranks: List[Dict[int, int]] = [dict() for _ in range(e + 2)]
    sizes: List[Dict[int, int]] = [dict() for _ in range(e + 1)]
    for j in range(e + 1):
        for S in subsets[j]:
            for b in range(d):
                w = wdeg(j, b)
                sizes[j][w] = sizes[j].get(w, 0) + 1
    for j in range(1, e + 1):
        groups: Dict[int, Echelon] = {}
        for S in subsets[j]:
            for b in range(d):
                img: Vector = {}
                for pos, t in enumerate(S):
                    T = S[:pos] + S[pos + 1:]
                    off = index[j - 1][T] * d
                    prod = A.mul(A.basis_vector(b), xs[t])
                    sign = F.one if pos % 2 == 0 else F.neg(F.one)
                    for c, x in prod.items():
                        key = off + c
                        val = F.add(img.get(key, F.zero), F.mul(sign, x))
                        if val:
                            img[key] = val
                        else:
                            img.pop(key, None)
                w = wdeg(j, b)
                groups.setdefault(w, Echelon(F)).add(img)
        ranks[j] = {w: g.rank for w, g in groups.items()}
    if by_degree:
        out: Dict[int, Dict[int, int]] = {}
        for j in range(e + 1):
            out[j] = {}
            for w, size in sizes[j].items():
                h = size - ranks[j].get(w, 0) - ranks[j + 1].get(w, 0)
                if h:
                    out[j][w] = h
        return out
    return [sizes[j].get(0, 0) - ranks[j].get(0, 0) - ranks[j + 1].get(0, 0)
            for j in range(e + 1)]


def golod_series(e: int, hdims: Sequence[int], N: int) -> List[int]:
    """Coefficients through t^N of (1+t)^e / (1 - sum_{j>=1} hdims[j] t^(j+1))."""
    num = [comb(e, k) for k in range(N + 1)]
    den = [0] * (N + 1)
    den[0] = 1
    for j in range(1, len(hdims)):
        if j + 1 <= N:
            den[j + 1] -= hdims[j]
    out = []
    for k in range(N + 1):
        val = num[k] - sum(den[i] * out[k - i] for i in range(1, k + 1))
        out.append(val)
    return out


@dataclass
class GolodVerdict:
    status: str
    bound: int
    degree_window: Optional[int]
    koszul_homology: List[int]
    golod: List[int]
    poincare: List[int]
    discrepancy: Optional[int] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status, "bound": self.bound, "claim": f"up to {self.bound}",
               "koszul_homology": list(self.koszul_homology),
               "golod_series": list(self.golod), "poincare": list(self.poincare)}
        if self.degree_window is not None:
            out["degree_window"] = self.degree_window
        if self.discrepancy is not None:
            out["first_discrepancy"] = self.discrepancy
        if self.note:
            out["note"] = self.note
        return {"golod": out}


def _truncation(R: RingPresentation, D: int) -> RingPresentation:
    ring = R.ring.with_order(DEGREVLEX)
    extra = [ring.monomial(m) for m in monomials_of_degree(R.nvars, D + 1)]
    return R.with_generators(list(R.generators) + extra, order="degrevlex")


def serre_holds(golod: Sequence[int], poincare: Sequence[int]) -> bool:
    return all(p <= g for p, g in zip(poincare, golod))


def golod_check(R: RingPresentation, N: int = DEFAULT_BOUND,
                D: int = GOLOD_DEGREE_WINDOW) -> GolodVerdict:
    """Compare P_k(t) with the Golod bound through t^N."""
    engine = choose_engine(R)
    e = R.nvars
    if engine == "artinian":
        A = build_algebra(R)
        hd = koszul_homology(A)
        window = None
    else:
        if D < 2:
            raise ValueError("degree window must be at least 2")
        A = build_finite_algebra(_truncation(R, D))
        by = koszul_homology(A, by_degree=True)
        hd = [0] * (e + 1)
        for j in range(1, e + 1):
            if by[j].get(D) or by[j].get(D - 1):
                poin = minimal_free_resolution(R, None, N).ranks
                return GolodVerdict("Inconclusive", N, D, [], [], list(poin),
                                    note=f"Koszul homology H_{j} not zero in degrees {D - 1}, {D}")
            hd[j] = sum(v for w, v in by[j].items() if w <= D)
        hd[0] = 1
        window = D
    gs = golod_series(e, hd, N)
    res = minimal_free_resolution(R, None, N, engine)
    poin = list(res.ranks[:N + 1])
    for k in range(N + 1):
        if poin[k] != gs[k]:
            return GolodVerdict("NotGolod", N, window, hd, gs, poin, discrepancy=k)
    return GolodVerdict("GolodUpTo", N, window, hd, gs, poin)


__all__ = [
    "LinearPartComplex",
    "linear_part",
    "homology_nonzero",
    "LindVerdict",
    "lind_bounded",
    "KoszulVerdict",
    "koszul_check",
    "reg_k_bounded",
    "koszul_homology",
    "golod_series",
    "GolodVerdict",
    "golod_check",
    "serre_holds",
]

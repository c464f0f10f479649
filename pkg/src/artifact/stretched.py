"""Numerical invariants, g-stretched rings, the I = Q n structure check,
Elias-Valla normal forms, numerical semigroup rings and tangent cones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    DEGREVLEX,
    NEGDEGREVLEX,
    QQ,
    Polynomial,
    PolynomialRing,
    RingPresentation,
    make_presentation,
)
from .errors import PreconditionError, StructuralError, UnsupportedError
from .groebner import eliminate, groebner_basis, ideal_colon, ideal_gb, ideal_product
from .ideals import GradedContext, ideal_context, quotient_by_element
from .resolutions import build_algebra, cyclic_module, minimal_free_resolution

# ---------------------------------------------------------------------------
# Hilbert series of a monomial ideal


def _tpoly_sub(a: List[int], b: List[int]) -> List[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: List[Tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(leads: Sequence[Tuple[int, ...]], n: int) -> List[int]:
    """Coefficients of N(t) with HS(S/M) = N(t)/(1-t)^n for a monomial ideal M."""
    gens = _minimalize(list(leads))
    if not gens:
        return [1]
    *rest, m = gens
    quot = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    shifted = [0] * sum(m) + hilbert_numerator(quot, n)
    return _tpoly_sub(hilbert_numerator(rest, n), shifted)


def dim_and_multiplicity(leads: Sequence[Tuple[int, ...]], n: int) -> Tuple[int, int]:
    """Krull dimension and multiplicity of S/M from the Hilbert series."""
    N = hilbert_numerator(leads, n)
    k = 0
    while sum(N) == 0 and any(N):
        # divide by (1 - t)
        q, acc = [], 0
        for c in N[:-1]:
            acc += c
            q.append(acc)
        N = q or [0]
        k += 1
    return n - k, sum(N)


def hilbert_function(leads: Sequence[Tuple[int, ...]], n: int, upto: int) -> List[int]:
    from .algebra import monomials_of_degree
    gens = _minimalize(list(leads))
    out = []
    for d in range(upto + 1):
        out.append(sum(1 for m in monomials_of_degree(n, d)
                       if not any(all(a <= b for a, b in zip(g, m)) for g in gens)))
    return out


# ---------------------------------------------------------------------------
# tangent cones


def tangent_cone(R: RingPresentation) -> RingPresentation:
    """Graded presentation of gr_m(R): initial forms of a Mora standard basis."""
    if R.is_homogeneous:
        return R.with_generators(R.generators, order="degrevlex")
    local = R.ring.with_order(NEGDEGREVLEX)
    sb = groebner_basis([g.change_ring(local) for g in R.generators], NEGDEGREVLEX)
    glob = R.ring.with_order(DEGREVLEX)
    forms = [g.initial_form().change_ring(glob) for g in sb.elements]
    gb = ideal_gb(forms, glob)
    gr = R.with_generators([], order="degrevlex")
    ctx = GradedContext(gr)
    return gr.with_generators(ctx.minimal_generators(gb.elements))


# ---------------------------------------------------------------------------
# invariants


@dataclass
class InvariantReport:
    engine: str
    dim: int
    depth: Optional[int]
    embdim: int
    codim: int
    multiplicity: int
    type: Optional[int]
    mu_m2: int
    socle_degree: Optional[int] = None
    length: Optional[int] = None
    hilbert: List[int] = field(default_factory=list)
    m3_zero: Optional[bool] = None
    depth_gr: Optional[int] = None
    tags: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def is_cohen_macaulay(self) -> Optional[bool]:
        return None if self.depth is None else self.depth == self.dim

    def to_json(self) -> dict:
        return {
            "engine": self.engine, "dim": self.dim, "depth": self.depth,
            "embdim": self.embdim, "codim": self.codim, "multiplicity": self.multiplicity,
            "type": self.type, "mu_m2": self.mu_m2, "socle_degree": self.socle_degree,
            "length": self.length, "hilbert": list(self.hilbert), "m3_zero": self.m3_zero,
            "depth_gr": self.depth_gr, "tags": list(self.tags), "notes": list(self.notes),
        }


def _tags(rep: InvariantReport) -> List[str]:
    tags = []
    if rep.dim == 0:
        tags.append("artinian")
    if rep.mu_m2 <= 1:
        tags.append("g-stretched")
        if rep.dim == 0:
            tags.append("stretched")
    if rep.multiplicity == rep.codim + 1:
        tags.append("minimal multiplicity")
    elif rep.multiplicity == rep.codim + 2:
        tags.append("almost minimal multiplicity")
    if rep.is_cohen_macaulay:
        tags.append("Cohen-Macaulay")
        if rep.type == 1:
            tags.append("Gorenstein")
    return tags


def _artinian_invariants(R: RingPresentation, A) -> InvariantReport:
    hf = list(A.hilbert)
    mu2 = hf[2] if len(hf) > 2 else 0
    rep = InvariantReport("artinian", 0, 0, hf[1] if len(hf) > 1 else 0,
                          hf[1] if len(hf) > 1 else 0, A.dim, A.socle().dim, mu2,
                          socle_degree=A.socle_degree, length=A.dim, hilbert=hf,
                          m3_zero=A.nilpotency_index <= 3)
    rep.tags = _tags(rep)
    return rep


def _graded_invariants(R: RingPresentation, engine: str = "graded") -> InvariantReport:
    ring = R.ring.with_order(DEGREVLEX)
    gens = [g.change_ring(ring) for g in R.generators]
    n = ring.nvars
    leads = ideal_gb(gens, ring).leading_monomials() if gens else []
    dim, e = dim_and_multiplicity(leads, n)
    hf = hilbert_function(leads, n, max(3, max((g.degree() for g in gens), default=0) + 1))
    embdim = hf[1]
    # Auslander-Buchsbaum over the presenting polynomial ring
    S = R.with_generators([], order="degrevlex")
    res = minimal_free_resolution(S, cyclic_module(S, gens), n + 1, engine="graded")
    ranks = [r for r in res.ranks if r]
    pd = len(ranks) - 1
    depth = n - pd
    notes = []
    if depth == dim:
        rtype = ranks[-1]
    elif depth == 0:
        ctx = GradedContext(R)
        rtype = len(ctx.minimal_generators(ctx.colon_ideal([], ctx.maximal_ideal())))
    else:
        rtype = None
        notes.append("type not computed: 0 < depth < dim")
    rep = InvariantReport(engine, dim, depth, embdim, embdim - dim, e, rtype, hf[2],
                          hilbert=hf[:3], m3_zero=(hf[3] == 0 if dim == 0 else False),
                          notes=notes)
    rep.tags = _tags(rep)
    return rep


def invariants(R: RingPresentation) -> InvariantReport:
    """Invariants of R.  Artinian rings use the finite-algebra engine,
    homogeneous rings the graded engine; other local rings are read off their
    tangent cone (depth and type of R itself are then not computed)."""
    try:
        A = build_algebra(R)
    except UnsupportedError:
        A = None
    if A is not None:
        return _artinian_invariants(R, A)
    if R.is_homogeneous:
        return _graded_invariants(R)
    gr = tangent_cone(R)
    rep = _graded_invariants(gr, engine="tangent-cone")
    rep.notes.append(f"depth {rep.depth} and type {rep.type} are those of the tangent cone")
    rep.depth_gr = rep.depth
    rep.depth = None
    rep.type = None
    rep.tags = _tags(rep)
    return rep


# ---------------------------------------------------------------------------
# g-stretched rings


@dataclass
class GStretched:
    value: bool
    mu_m2: int
    dim: int

    @property
    def dim_at_most_one(self) -> bool:
        return self.dim <= 1

    def to_json(self) -> dict:
        return {"g_stretched": self.value, "mu_m2": self.mu_m2, "dim": self.dim,
                "dim_at_most_one": self.dim_at_most_one}


def is_g_stretched(R: RingPresentation, report: Optional[InvariantReport] = None) -> GStretched:
    rep = report or invariants(R)
    return GStretched(rep.mu_m2 <= 1, rep.mu_m2, rep.dim)


@dataclass
class Classification:
    verdict: str
    reasons: List[str]
    inputs: dict

    @property
    def predicts_koszul(self) -> bool:
        return self.verdict == "PredictKoszul"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reasons": list(self.reasons), "inputs": dict(self.inputs),
                "claim": "prediction from the g-stretched characterization, not a computed verdict"}


def classify_g_stretched(R: RingPresentation, report: Optional[InvariantReport] = None
                         ) -> Classification:
    """Koszul iff dim R = 1, or R is artinian with m^3 = 0 and either m^2 = 0
    or r(R) <= codim(R) - 1."""
    rep = report or invariants(R)
    if rep.mu_m2 > 1:
        raise PreconditionError(f"not g-stretched: mu(m^2) = {rep.mu_m2}")
    m2_zero = rep.mu_m2 == 0
    inputs = {"dim": rep.dim, "m2_zero": m2_zero, "m3_zero": rep.m3_zero,
              "type": rep.type, "codim": rep.codim}
    if rep.dim == 1:
        return Classification("PredictKoszul", ["dim R = 1"], inputs)
    if rep.dim != 0:
        raise PreconditionError(f"g-stretched ring of dimension {rep.dim}")
    reasons = []
    ok = True
    if not rep.m3_zero:
        ok = False
        reasons.append("m^3 != 0")
    if m2_zero:
        reasons.append("m^2 = 0")
    elif rep.type > rep.codim - 1:
        ok = False
        reasons.append(f"r = {rep.type} > codim - 1 = {rep.codim - 1}")
    else:
        reasons.append(f"r = {rep.type} <= codim - 1 = {rep.codim - 1}")
    if ok and rep.m3_zero:
        reasons.insert(0, "m^3 = 0")
    return Classification("PredictKoszul" if ok else "PredictNotKoszul", reasons, inputs)


# ---------------------------------------------------------------------------
# I = Q n


@dataclass
class QnDecomposition:
    ok: bool
    Q: List[Polynomial]
    reason: str = ""
    checks: Dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"decomposition": self.ok, "Q": [str(q) for q in self.Q],
                "reason": self.reason, "checks": dict(self.checks)}


def qn_decompose(R: RingPresentation, report: Optional[InvariantReport] = None) -> QnDecomposition:
    """Candidate Q = (I : n), accepted only if I = Q n, Q is minimally
    generated by d - 1 elements of n \\ n^2 and S/Q is one-dimensional."""
    if not R.is_homogeneous:
        raise UnsupportedError("qn_decompose needs a homogeneous presentation")
    rep = report or invariants(R)
    if rep.dim != 1:
        raise PreconditionError(f"not one-dimensional (dim = {rep.dim})")
    if rep.mu_m2 > 1:
        raise PreconditionError(f"not g-stretched: mu(m^2) = {rep.mu_m2}")
    ring = R.ring.with_order(DEGREVLEX)
    I = [g.change_ring(ring) for g in R.generators]
    n = list(ring.gens)
    d = ring.nvars
    S = R.with_generators([], order="degrevlex")
    ctx = GradedContext(S)
    Q = ctx.minimal_generators(ideal_colon(I, n, ring=ring)) if I else []
    checks = {}
    Qn = ideal_product(Q, n) if Q else []
    checks["I = Qn"] = ctx.equal(I, Qn)
    checks["d-1 generators"] = len(Q) == d - 1
    checks["linear generators"] = all(q.low_degree() == 1 for q in Q)
    leads = ideal_gb(Q, ring).leading_monomials() if Q else []
    checks["dim S/Q = 1"] = dim_and_multiplicity(leads, d)[0] == 1
    failed = [k for k, v in checks.items() if not v]
    if failed:
        return QnDecomposition(False, Q, "failed: " + ", ".join(failed), checks)
    return QnDecomposition(True, Q, "", checks)


# ---------------------------------------------------------------------------
# Elias-Valla normal forms


@dataclass(frozen=True)
class EVParameters:
    h: int
    tau: int
    s: int
    units: Tuple = ()

    def validate(self):
        if self.h < 1:
            raise PreconditionError("h must be >= 1")
        if not 1 <= self.tau <= self.h:
            raise PreconditionError("tau must satisfy 1 <= tau <= h")
        if self.s < 2:
            raise PreconditionError("s must be >= 2")
        if self.units and len(self.units) != self.h:
            raise PreconditionError("units must have one entry per variable")

    def unit(self, i: int):
        return self.units[i - 1] if self.units else 1

    def to_json(self) -> dict:
        return {"h": self.h, "tau": self.tau, "s": self.s,
                "units": [str(u) for u in self.units] if self.units else "1"}


def elias_valla_generators(p: EVParameters) -> List[str]:
    h, tau, s = p.h, p.tau, p.s
    if h == 1:
        return [f"y1^{s + 1}"]
    if tau < h:
        gens = [f"y{i}*y{j}" for i in range(1, h + 1) for j in range(i + 1, h + 1)]
        gens += [f"y{j}^2" for j in range(2, tau + 1)]
        gens += [f"y{i}^2 - {p.unit(i)}*y1^{s}" for i in range(tau + 1, h + 1)]
        return gens
    gens = [f"y1*y{j}" for j in range(2, h + 1)]
    gens += [f"y{i}*y{j}" for i in range(2, h + 1) for j in range(i, h + 1)]
    gens.append(f"y1^{s + 1}")
    return gens


def verify_elias_valla(R: RingPresentation, p: EVParameters) -> Dict[str, bool]:
    try:
        A = build_algebra(R)
    except UnsupportedError:
        return {"artinian": False}
    hf = A.hilbert
    y1 = A.var(0)
    checks = {
        "artinian": True,
        "stretched": all(v <= 1 for v in hf[2:]),
        "type": A.socle().dim == p.tau,
        "socle degree": A.socle_degree == p.s,
    }
    ok = True
    power = y1
    for i in range(2, A.nilpotency_index + 1):
        power = A.mul(power, y1)
        if not A.m_power(i) == A.ideal([power]):
            ok = False
    checks["m^i = (y1^i)"] = ok
    return checks


def elias_valla_presentation(p: EVParameters, field=QQ) -> RingPresentation:
    """k[y1..yh]/I in normal form; the quotient is re-verified before returning."""
    p.validate()
    names = [f"y{i}" for i in range(1, p.h + 1)]
    R = make_presentation(field, names, elias_valla_generators(p), ideal_name="I")
    checks = verify_elias_valla(R, p)
    bad = [k for k, v in checks.items() if not v]
    if bad:
        raise StructuralError(f"normal form failed post-verification: {', '.join(bad)}")
    return R


# ---------------------------------------------------------------------------
# numerical semigroups


@dataclass
class SemigroupRing:
    generators: List[int]
    toric: RingPresentation
    tangent_cone: RingPresentation
    warnings: List[str]

    def to_json(self) -> dict:
        return {"semigroup": list(self.generators),
                "toric_ideal": [str(g) for g in self.toric.generators],
                "tangent_cone": [str(g) for g in self.tangent_cone.generators],
                "variables": list(self.toric.names), "warnings": list(self.warnings)}


def _in_semigroup(a: int, gens: Sequence[int]) -> bool:
    reach = [True] + [False] * a
    for v in range(1, a + 1):
        reach[v] = any(g <= v and reach[v - g] for g in gens)
    return reach[a]


def _names(n: int) -> List[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i}" for i in range(1, n + 1)]


def semigroup_ring(a: Sequence[int], field=QQ) -> SemigroupRing:
    """Toric ideal of k[[t^a1, ..., t^an]] and its tangent cone."""
    a = [int(v) for v in a]
    if not a or any(v <= 0 for v in a):
        raise PreconditionError("semigroup generators must be positive integers")
    if math.gcd(*a) != 1:
        raise PreconditionError(f"gcd{tuple(a)} != 1")
    warnings = []
    kept: List[int] = []
    for v in a:
        smaller = sorted({w for w in a if w < v})
        if v in kept or _in_semigroup(v, smaller):
            warnings.append(f"{v} is not a minimal generator; dropped")
        else:
            kept.append(v)
    n = len(kept)
    names = _names(n)
    big = PolynomialRing(field, ["t"] + names, DEGREVLEX)
    gens = [big.gen(i + 1) - big.gen(0) ** v for i, v in enumerate(kept)]
    elim = eliminate(gens, [0])
    ring = PolynomialRing(field, names, DEGREVLEX)
    polys = [Polynomial._raw(ring, {m[1:]: c for m, c in g.items()}) for g in elim]
    polys = _weighted_minimal(polys, kept)
    toric = make_presentation(field, names, polys, local=True)
    return SemigroupRing(kept, toric, tangent_cone(toric), warnings)


def _weighted_minimal(polys: List[Polynomial], weights: Sequence[int]) -> List[Polynomial]:
    """Drop generators lying in the ideal of the others, heaviest first."""
    def wdeg(f):
        return max(sum(e * w for e, w in zip(m, weights)) for m, _ in f.items())
    polys = sorted((g.monic() for g in polys if not g.is_zero()), key=lambda f: (wdeg(f), str(f)))
    kept = list(polys)
    for g in reversed(polys):
        rest = [h for h in kept if h is not g]
        if rest and ideal_gb(rest).contains(g):
            kept = rest
    return kept


# ---------------------------------------------------------------------------
# regular linear forms on graded rings


@dataclass
class FilterRegularResult:
    found: bool
    form: Optional[Polynomial]
    quotient: Optional[RingPresentation]
    evidence: List[dict]

    def to_json(self) -> dict:
        return {"found": self.found, "form": str(self.form) if self.form is not None else None,
                "quotient": self.quotient.to_text() if self.quotient is not None else None,
                "evidence": self.evidence}


def _kernel_degrees(ctx: GradedContext, ell: Polynomial) -> Dict[int, int]:
    """Degrees of minimal generators of (0 : ell); empty means ell is regular."""
    out: Dict[int, int] = {}
    for g in ctx.minimal_generators(ctx.colon([], ell)):
        d = g.degree()
        out[d] = out.get(d, 0) + 1
    return out


def filter_regular_reduction(R: RingPresentation, trials: int = 20, seed: int = 0,
                             forms: Optional[Sequence] = None) -> FilterRegularResult:
    """Search for a linear form regular on the graded ring R and return R/(l).

    Regularity is decided exactly via (0 : l) = 0."""
    if not R.is_homogeneous:
        raise PreconditionError("filter_regular_reduction needs a graded presentation")
    ctx = GradedContext(R)
    ring = ctx.ring
    if forms is None:
        rng = random.Random(seed)
        F = R.field
        hi = F.char - 1 if F.char else 100
        forms = []
        for _ in range(trials):
            coeffs = [rng.randint(1, hi) for _ in range(ring.nvars)]
            ell = ring.zero()
            for i, c in enumerate(coeffs):
                ell = ell + ring.gen(i) * c
            forms.append(ell)
    evidence = []
    for ell in forms:
        ell = ctx.poly(ell)
        ker = _kernel_degrees(ctx, ell)
        evidence.append({"form": str(ell), "kernel_generator_degrees":
                         {str(k): v for k, v in sorted(ker.items())}})
        if not ker:
            Rbar, _ = quotient_by_element(R, ell)
            return FilterRegularResult(True, ell, Rbar, evidence)
    return FilterRegularResult(False, None, None, evidence)


__all__ = [
    "hilbert_numerator",
    "dim_and_multiplicity",
    "hilbert_function",
    "tangent_cone",
    "InvariantReport",
    "invariants",
    "GStretched",
    "is_g_stretched",
    "Classification",
    "classify_g_stretched",
    "QnDecomposition",
    "qn_decompose",
    "EVParameters",
    "elias_valla_generators",
    "verify_elias_valla",
    "elias_valla_presentation",
    "SemigroupRing",
    "semigroup_ring",
    "FilterRegularResult",
    "filter_regular_reduction",
]

"""Koszul and weak Koszul filtrations: verification, witness chains, lifting
along an element, and the explicit families used for g-stretched rings.

A filtration is a list of ideals, each given by a list of generators (strings
or polynomials of the presenting ring).  Every check goes through an
:class:`~artifact.ideals.IdealContext`, so artinian rings are handled by
linear algebra and graded rings by Groebner bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Polynomial, RingPresentation
from .errors import CertificateError, ParseError, PreconditionError, StructuralError
from .ideals import IdealContext, ideal_context, quotient_by_element

Gens = List[Polynomial]


@dataclass
class Witness:
    """I = J + (x) with J : x equal to the member at index ``colon``."""

    ideal: int
    J: int
    x: Polynomial
    colon: int

    def to_json(self, names: Sequence[str]) -> dict:
        return {"ideal": names[self.ideal], "J": names[self.J], "x": str(self.x),
                "colon": names[self.colon]}


@dataclass
class FiltrationCertificate:
    names: List[str]
    ideals: List[Gens]
    engine: str
    proper: List[bool]
    wf1: bool
    wf1_reason: str
    wf2: List[bool]
    witnesses: List[Optional[Witness]]
    # strong variant only
    strong: Optional[List[Dict[int, bool]]] = None
    s_bound: Optional[int] = None
    s_complete: bool = False
    chains: Dict[int, List[Polynomial]] = field(default_factory=dict)

    def wf3(self) -> List[bool]:
        return [w is not None or zero for w, zero in zip(self.witnesses, self._zero)]

    @property
    def _zero(self) -> List[bool]:
        return [not gens for gens in self.ideals]

    @property
    def weak_ok(self) -> bool:
        return all(self.proper) and self.wf1 and all(self.wf2) and all(self.wf3())

    @property
    def strong_ok(self) -> bool:
        if self.strong is None:
            return False
        return self.weak_ok and all(all(d.values()) for d in self.strong)

    def failures(self) -> List[str]:
        out = []
        if not self.wf1:
            out.append("WF1: " + self.wf1_reason)
        for i, name in enumerate(self.names):
            if not self.proper[i]:
                out.append(f"{name}: not a proper ideal")
            if not self.wf2[i]:
                out.append(f"WF2 fails for {name}: I cap m^2 != mI")
            if not self.wf3()[i]:
                out.append(f"WF3 fails for {name}: no witness I = J + (x) with J : x in the family")
            if self.strong is not None:
                bad = sorted(s for s, ok in self.strong[i].items() if not ok)
                if bad:
                    out.append(f"{name}: I cap m^(s+1) != m^s I at s = {bad}")
        return out

    def witness_for(self, i: int) -> Optional[Witness]:
        return self.witnesses[i]

    def to_json(self) -> dict:
        out = {
            "engine": self.engine,
            "ideals": {n: [str(g) for g in gens] for n, gens in zip(self.names, self.ideals)},
            "order": list(self.names),
            "WF1": self.wf1,
            "WF2": {n: ok for n, ok in zip(self.names, self.wf2)},
            "WF3": {n: ok for n, ok in zip(self.names, self.wf3())},
            "witnesses": {self.names[i]: w.to_json(self.names)
                          for i, w in enumerate(self.witnesses) if w is not None},
            "weak_koszul_filtration": self.weak_ok,
            "failures": self.failures(),
        }
        if self.strong is not None:
            out["strong"] = {n: {str(s): ok for s, ok in sorted(d.items())}
                             for n, d in zip(self.names, self.strong)}
            out["koszul_filtration"] = self.strong_ok
            out["bound"] = self.s_bound
            out["claim"] = ("all s" if self.s_complete else f"verified up to s = {self.s_bound}")
        return out


# ---------------------------------------------------------------------------
# verification


def _prepare(R: RingPresentation, F: Sequence, names, ctx):
    ctx = ctx or ideal_context(R)
    ideals = [ctx.minimal_generators(ctx.polys(I)) for I in F]
    if names is None:
        names = [_default_name(ctx, I) for I in ideals]
    return ctx, ideals, list(names)


def _default_name(ctx: IdealContext, I: Gens) -> str:
    return "(" + ", ".join(str(g) for g in I) + ")" if I else "(0)"


def _find(ctx: IdealContext, ideals: List[Gens], K: Gens) -> Optional[int]:
    for k, L in enumerate(ideals):
        if ctx.equal(K, L):
            return k
    return None


def _search_witness(ctx: IdealContext, ideals: List[Gens], i: int) -> Optional[Witness]:
    I = ideals[i]
    for j, J in enumerate(ideals):
        if j == i or not ctx.subset(J, I):
            continue
        for x in I:
            if ctx.contains(J, x):
                continue
            if not ctx.equal(I, J + [x]):
                continue
            k = _find(ctx, ideals, ctx.colon(J, x))
            if k is not None:
                return Witness(i, j, x, k)
    return None


def verify_weak_koszul_filtration(R: RingPresentation, F: Sequence, names=None,
                                  ctx: Optional[IdealContext] = None) -> FiltrationCertificate:
    """Check WF1 ((0) and m present), WF2 (I cap m^2 = mI) and WF3 (a
    witness I = J + (x) with J : x in the family) for every member."""
    ctx, ideals, names = _prepare(R, F, names, ctx)
    m = ctx.maximal_ideal()
    proper = [ctx.is_proper(I) for I in ideals]
    has_zero = any(ctx.is_zero(I) for I in ideals)
    has_m = any(ctx.equal(I, m) for I in ideals)
    reasons = []
    if not has_zero:
        reasons.append("(0) missing")
    if not has_m:
        reasons.append("m missing")
    wf2 = [ctx.strong_condition(I, 1) for I in ideals]
    witnesses: List[Optional[Witness]] = []
    for i, I in enumerate(ideals):
        witnesses.append(None if ctx.is_zero(I) else _search_witness(ctx, ideals, i))
    # canonical zero representation so wf3() treats it as exempt
    ideals = [[] if ctx.is_zero(I) else I for I in ideals]
    return FiltrationCertificate(names, ideals, ctx.engine, proper, not reasons,
                                 "; ".join(reasons), wf2, witnesses)


def _max_gen_degree(R: RingPresentation) -> int:
    degs = [g.degree() for g in R.generators if not g.is_zero()]
    return max(degs) if degs else 1


def verify_koszul_filtration(R: RingPresentation, F: Sequence, S: Optional[int] = None,
                             names=None, ctx: Optional[IdealContext] = None
                             ) -> FiltrationCertificate:
    """Strong variant: I cap m^(s+1) = m^s I for 1 <= s <= S plus full
    witness chains.  Artinian rings are checked for every s that matters."""
    ctx = ctx or ideal_context(R)
    cert = verify_weak_koszul_filtration(R, F, names, ctx)
    if ctx.engine == "artinian":
        nil = ctx.A.nilpotency_index
        S = nil if S is None else max(S, nil)
        cert.s_complete = True
    elif S is None:
        S = 2 * _max_gen_degree(R)
    cert.s_bound = S
    cert.strong = [{s: ctx.strong_condition(I, s) for s in range(1, S + 1)}
                   for I in cert.ideals]
    for i, I in enumerate(cert.ideals):
        if I and cert.witnesses[i] is not None:
            try:
                cert.chains[i] = extract_generator_chain(cert, i, ctx)
            except CertificateError:
                cert.witnesses[i] = None
    return cert


def extract_generator_chain(cert: FiltrationCertificate, I, ctx: Optional[IdealContext] = None
                            ) -> List[Polynomial]:
    """y_1..y_p with (y_1..y_i) in the family and (y_1..y_{i-1}) : y_i in the
    family, read off the stored witnesses."""
    i = I if isinstance(I, int) else cert.names.index(I)
    chain: List[Polynomial] = []
    seen = set()
    while cert.ideals[i]:
        if i in seen:
            raise CertificateError(f"witness cycle through {cert.names[i]}")
        seen.add(i)
        w = cert.witnesses[i]
        if w is None:
            raise CertificateError(f"no witness stored for {cert.names[i]}")
        if ctx is not None and ctx.in_m2(w.x):
            raise CertificateError(f"witness element {w.x} lies in m^2")
        chain.append(w.x)
        i = w.J
    chain.reverse()
    return chain


def witness_tor_maps(R: RingPresentation, cert: FiltrationCertificate, N: int = 4) -> Dict[str, object]:
    """For every stored witness I = J + (x), lift R/(J:x) -> R/J (multiplication
    by x) along minimal resolutions and report per-degree Tor-vanishing."""
    from .resolutions import cyclic_module, tor_map_is_zero
    out = {}
    for w in cert.witnesses:
        if w is None:
            continue
        M = cyclic_module(R, cert.ideals[w.colon])
        P = cyclic_module(R, cert.ideals[w.J])
        out[cert.names[w.ideal]] = tor_map_is_zero(R, M, P, [[w.x]], N)
    return out


# ---------------------------------------------------------------------------
# lifting


@dataclass
class LiftResult:
    family: List[Gens]
    names: List[str]
    hypothesis: str
    base: FiltrationCertificate
    certificate: FiltrationCertificate

    @property
    def verified(self) -> bool:
        return self.certificate.weak_ok

    def to_json(self) -> dict:
        return {"hypothesis": self.hypothesis, "base": self.base.to_json(),
                "lifted": self.certificate.to_json(), "verified": self.verified}


def lift_filtration(R: RingPresentation, y, F_bar: Sequence, names=None) -> LiftResult:
    """Lift a weak Koszul filtration of R/(y) to R.

    Needs y in m \\ m^2 and either y regular, or y^2 = 0 with Ann(y) + (y)
    lifting a member of F_bar."""
    ctx = ideal_context(R)
    y = ctx.poly(y)
    if ctx.contains([], y) or ctx.in_m2(y) or not ctx.is_proper([y]):
        raise PreconditionError("element must lie in m \\ m^2")
    Rbar, phi = quotient_by_element(R, y)
    cbar = ideal_context(Rbar)
    F_bar = [ctx.polys(I) for I in F_bar]
    base = verify_weak_koszul_filtration(Rbar, [[phi(g) for g in I] for I in F_bar], names, cbar)
    if not base.weak_ok:
        raise PreconditionError("the family is not a weak Koszul filtration of R/(y): "
                                + "; ".join(base.failures()))
    ann = ctx.colon([], y)
    if ctx.is_zero(ann):
        hyp = "a: y is regular"
    elif ctx.contains([], y * y):
        target = ann + [y]
        if not any(ctx.equal(target, I + [y]) for I in F_bar):
            raise PreconditionError("hypothesis (b) fails: Ann(y)/(y) is not in the family")
        hyp = "b: y^2 = 0 and Ann(y)/(y) in the family"
    else:
        raise PreconditionError("neither hypothesis holds: y is a zero divisor and y^2 != 0")
    family: List[Gens] = [[]]
    out_names = ["(0)"]
    for name, I, Ibar in zip(base.names, F_bar, base.ideals):
        family.append(ctx.minimal_generators([y] + I))
        out_names.append(f"(y) + {name}" if Ibar else "(y)")
    cert = verify_weak_koszul_filtration(R, family, out_names, ctx)
    return LiftResult(family, out_names, hyp, base, cert)


# ---------------------------------------------------------------------------
# explicit families


KINDS = ("regular", "dim1-canonical", "stretched-gorenstein", "dim1-gorenstein")


@dataclass
class CanonicalFamily:
    kind: str
    names: List[str]
    ideals: List[Gens]
    params: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params,
                "ideals": {n: [str(g) for g in I] for n, I in zip(self.names, self.ideals)},
                "order": list(self.names)}


def _fmt(gens: Sequence[Polynomial]) -> str:
    return "(" + ", ".join(str(g) for g in gens) + ")" if gens else "(0)"


def _stretched_gorenstein_family(ys: List[Polynomial], m_name: str = "m",
                                 extra: Sequence[Polynomial] = ()) -> Tuple[List[str], List[Gens]]:
    h = len(ys)
    extra = list(extra)
    fam = [list(extra), ys + extra]
    names = [_fmt(extra), m_name]
    for i in range(1, h):
        fam.append(ys[:i] + extra)
        names.append(_fmt(ys[:i] + extra))
    for j in range(2, h + 1):
        fam.append(ys[j - 1:] + extra)
        names.append(_fmt(ys[j - 1:] + extra))
    return names, fam


def _check_stretched_gorenstein(ctx: IdealContext, ys: List[Polynomial], label: str) -> int:
    """Checks on an artinian context; returns the socle degree."""
    if ctx.engine != "artinian":
        raise StructuralError(f"{label}: ring is not artinian")
    A = ctx.A
    hf = A.hilbert
    if len(hf) > 2 and hf[2] > 1:
        raise StructuralError(f"{label}: not stretched (mu(m^2) = {hf[2]})")
    if A.socle().dim != 1:
        raise StructuralError(f"{label}: not Gorenstein (type {A.socle().dim})")
    h = len(ys)
    if h < 2:
        raise StructuralError(f"{label}: needs embedding dimension h >= 2 (got {h})")
    if not ctx.equal(ys, ctx.maximal_ideal()):
        raise StructuralError(f"{label}: the chosen elements do not generate m")
    for i in range(h):
        for j in range(i + 1, h):
            if not ctx.contains([], ys[i] * ys[j]):
                raise StructuralError(f"{label}: y{i + 1}*y{j + 1} != 0, "
                                      "elements are not in normal form")
    return A.socle_degree


def canonical_filtration(R: RingPresentation, kind: str, x=None, ys=None) -> CanonicalFamily:
    """The explicit filtration of the given kind.

    ``regular``: (0), (x1), (x1, x2), ..., m over a polynomial ring.
    ``dim1-canonical``: R = S/(Q n); (0), (q1), ..., (q1..q_{d-1}), m.
    ``stretched-gorenstein``: artinian Gorenstein stretched ring whose
    variables y1..yh (or ``ys``) satisfy y_i y_j = 0 for i < j.
    ``dim1-gorenstein``: x regular with R/(x) as in the previous case.
    """
    if kind not in KINDS:
        raise StructuralError(f"unknown filtration kind {kind!r}; expected one of {KINDS}")
    ctx = ideal_context(R)
    gens = ctx.maximal_ideal()
    if kind == "regular":
        if R.generators:
            raise StructuralError("regular: the presentation has nonzero relations")
        fam = [gens[:i] for i in range(len(gens) + 1)]
        names = [_fmt(I) for I in fam[:-1]] + ["m"]
        return CanonicalFamily(kind, names, fam, {"n": len(gens)})
    if kind == "dim1-canonical":
        from .stretched import qn_decompose
        dec = qn_decompose(R)
        if not dec.ok:
            raise StructuralError("dim1-canonical: " + dec.reason)
        Q = [ctx.poly(q) for q in dec.Q]
        fam = [Q[:i] for i in range(len(Q) + 1)] + [gens]
        names = [_fmt(I) for I in fam[:-1]] + ["m"]
        return CanonicalFamily(kind, names, fam, {"Q": [str(q) for q in Q]})
    if kind == "stretched-gorenstein":
        ys = gens if ys is None else ctx.polys(ys)
        s = _check_stretched_gorenstein(ctx, ys, kind)
        names, fam = _stretched_gorenstein_family(ys)
        return CanonicalFamily(kind, names, fam, {"h": len(ys), "s": s})
    # dim1-gorenstein
    x = gens[0] if x is None else ctx.poly(x)
    if ys is None:
        ys = [g for g in gens if g != x]
    ys = ctx.polys(ys)
    if not ctx.is_zero(ctx.colon([], x)):
        raise StructuralError("dim1-gorenstein: x is not a regular element")
    Rbar, phi = quotient_by_element(R, x)
    cbar = ideal_context(Rbar)
    s = _check_stretched_gorenstein(cbar, [phi(g) for g in ys], "dim1-gorenstein: R/(x)")
    names, fam = _stretched_gorenstein_family(ys, "m", [x])
    names[0] = "(0)"
    fam[0] = []
    names.insert(2, _fmt([x]))
    fam.insert(2, [x])
    return CanonicalFamily(kind, names, fam, {"h": len(ys), "s": s, "x": str(x)})


# ---------------------------------------------------------------------------
# file format

_LINE = re.compile(r"^\s*([A-Za-z_][\w']*|\(0\)|m)\s*=\s*\[(.*)\]\s*;?\s*$")


def parse_filtration(text: str, R: RingPresentation) -> Tuple[List[str], List[Gens]]:
    """Lines ``name = [g1, g2]``; ``[]`` is the zero ideal; ``#`` starts a comment."""
    ring = R.ring
    names, ideals = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        mt = _LINE.match(line)
        if not mt:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected `name = [generators]`", lineno, col)
        body = mt.group(2).strip()
        gens = []
        if body:
            offset = line.index("[") + 2
            for part in body.split(","):
                try:
                    gens.append(ring.parse(part.strip()))
                except ParseError as e:
                    raise ParseError(str(e), lineno, offset) from None
                offset += len(part) + 1
        if mt.group(1) in names:
            raise ParseError(f"duplicate ideal name {mt.group(1)}", lineno, 1)
        names.append(mt.group(1))
        ideals.append(gens)
    if not ideals:
        raise ParseError("no ideals in filtration file", 1, 1)
    return names, ideals


def format_filtration(names: Sequence[str], ideals: Sequence[Sequence]) -> str:
    return "".join(f"{n} = [{', '.join(str(g) for g in I)}]\n" for n, I in zip(names, ideals))


__all__ = [
    "Witness",
    "FiltrationCertificate",
    "verify_weak_koszul_filtration",
    "verify_koszul_filtration",
    "extract_generator_chain",
    "witness_tor_maps",
    "LiftResult",
    "lift_filtration",
    "CanonicalFamily",
    "canonical_filtration",
    "parse_filtration",
    "format_filtration",
    "KINDS",
]

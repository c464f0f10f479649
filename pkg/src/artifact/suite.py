"""Parameter sweeps and the reproduction suite behind ``artifact sweep`` and
``artifact repro``."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Tuple

from .algebra import QQ, field_from_name, make_presentation, parse_presentation
from .filtration import (
    canonical_filtration,
    extract_generator_chain,
    lift_filtration,
    verify_koszul_filtration,
    verify_weak_koszul_filtration,
    witness_tor_maps,
)
from .ideals import ideal_context
from .linearity import golod_check, koszul_check
from .resolutions import build_algebra
from .stretched import (
    EVParameters,
    classify_g_stretched,
    elias_valla_presentation,
    filter_regular_reduction,
    invariants,
    qn_decompose,
    semigroup_ring,
    tangent_cone,
)


# ---------------------------------------------------------------------------
# Elias-Valla sweep


def ev_grid(hmax: int, smax: int, smin: int = 2) -> List[Tuple[int, int, int]]:
    return [(h, tau, s) for h in range(1, hmax + 1) for tau in range(1, h + 1)
            for s in range(smin, smax + 1)]


def sweep_item(args) -> dict:
    (h, tau, s), N, field_name = args
    field = field_from_name(field_name)
    R = elias_valla_presentation(EVParameters(h, tau, s), field)
    predicted = classify_g_stretched(R)
    direct = koszul_check(tangent_cone(R), N)
    return {
        "parameters": {"h": h, "tau": tau, "s": s, "field": field_name},
        "predicted": predicted.verdict,
        "direct_check": direct.to_json()["koszul"],
        "agree": predicted.predicts_koszul == direct.is_koszul,
    }


def sweep_ev(hmax: int, smax: int, N: int, field_name: str = "Q", jobs: int = 1,
             smin: int = 2) -> dict:
    """Compare the classifier against a bounded direct check on every
    Elias-Valla ring in the grid; results keep grid order."""
    items = [(p, N, field_name) for p in ev_grid(hmax, smax, smin)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(sweep_item, items))
    else:
        rows = [sweep_item(it) for it in items]
    out = {"items": rows, "bound": N,
           "disagreements": sum(1 for r in rows if not r["agree"])}
    if field_from_name(field_name).char:
        out["label"] = "experimental evidence only"
    return out


# ---------------------------------------------------------------------------
# reproduction suite


def _ring(text: str):
    return parse_presentation(text)


def _same_ideal(R, gens_a, gens_b) -> bool:
    S = R.with_generators([], order="degrevlex")
    ctx = ideal_context(S)
    return ctx.equal(ctx.polys(gens_a), ctx.polys(gens_b))


def _case_semigroup():
    sg = semigroup_ring([4, 5, 11])
    toric_ok = _same_ideal(sg.toric, sg.toric.generators,
                           ["y^3 - x*z", "x^4 - y*z", "x^3*y^2 - z^2"])
    cone_ok = _same_ideal(sg.tangent_cone, sg.tangent_cone.generators,
                          ["x*z", "y*z", "y^4", "z^2"])
    rep = invariants(sg.tangent_cone)
    inv_ok = (rep.multiplicity, rep.codim, rep.dim, rep.depth) == (4, 2, 1, 0) and \
        "almost minimal multiplicity" in rep.tags
    kz = koszul_check(sg.tangent_cone, 4)
    detail = {"toric": toric_ok, "tangent_cone": cone_ok, "invariants": inv_ok,
              "koszul": kz.to_json()["koszul"]}
    return toric_ok and cone_ok and inv_ok and not kz.is_koszul, detail


def _case_weak_not_strong():
    R = _ring("ring Q[x,y] local; ideal I = x*y, x^3 - y^2;")
    F = [[], ["x"], ["y"], ["x", "y"]]
    names = ["(0)", "(x)", "(y)", "m"]
    weak = verify_weak_koszul_filtration(R, F, names)
    ctx = ideal_context(R)
    colons = {
        "(0):x = (y)": ctx.equal(ctx.colon([], "x"), ["y"]),
        "(0):y = (x)": ctx.equal(ctx.colon([], "y"), ["x"]),
        "(x):y = m": ctx.equal(ctx.colon(["x"], "y"), ["x", "y"]),
        "m^2 = (x^2)": ctx.equal(ctx.m_power(2), ["x^2"]),
    }
    strong = verify_koszul_filtration(R, F, names=names)
    gr = build_algebra(R).assoc_graded()
    kz = koszul_check(gr, 4)
    ok = weak.weak_ok and all(colons.values()) and not strong.strong_ok and \
        not kz.is_koszul and kz.witness[1] == 4
    return ok, {"weak": weak.weak_ok, "colons": colons, "strong": strong.strong_ok,
                "gr": [str(g) for g in gr.generators], "koszul_gr": kz.to_json()["koszul"]}


def _case_regular():
    R2 = _ring("ring Q[x,y] order degrevlex; ideal I = 0;")
    weak = verify_weak_koszul_filtration(R2, [[], ["x"], ["x", "y"]])
    R3 = _ring("ring Q[x,y,z] order degrevlex; ideal I = 0;")
    strong = verify_koszul_filtration(R3, [[], ["x"], ["x", "y"], ["x", "y", "z"]], 3)
    fam = canonical_filtration(R2, "regular")
    ok = weak.weak_ok and strong.strong_ok and fam.names == ["(0)", "(x)", "m"]
    return ok, {"weak": weak.weak_ok, "strong": strong.to_json()["claim"], "family": fam.names}


def _case_dim1_canonical():
    R = _ring("ring Q[x,y] order degrevlex; ideal I = x^2, x*y;")
    fam = canonical_filtration(R, "dim1-canonical")
    cert = verify_koszul_filtration(R, fam.ideals, names=fam.names)
    return cert.strong_ok, {"family": fam.names, "claim": cert.to_json()["claim"]}


def _gorenstein_ev(h: int, s: int):
    return elias_valla_presentation(EVParameters(h, 1, s))


def _case_stretched_gorenstein():
    R3 = _gorenstein_ev(3, 2)
    fam3 = canonical_filtration(R3, "stretched-gorenstein")
    c3 = verify_weak_koszul_filtration(R3, fam3.ideals, fam3.names)
    chain = [str(y) for y in extract_generator_chain(c3, "m")]
    R2 = _gorenstein_ev(2, 2)
    fam2 = canonical_filtration(R2, "stretched-gorenstein")
    c2 = verify_weak_koszul_filtration(R2, fam2.ideals, fam2.names)
    ok = (fam3.names == ["(0)", "m", "(y1)", "(y1, y2)", "(y2, y3)", "(y3)"]
          and fam2.names == ["(0)", "m", "(y1)", "(y2)"]
          and c3.weak_ok and c2.weak_ok and chain == ["y1", "y2", "y3"])
    return ok, {"h3": fam3.names, "h2": fam2.names, "chain": chain}


def _case_tor_vanishing():
    detail = {}
    ok = True
    for h in (2, 3):
        for s in (2, 3):
            R = _gorenstein_ev(h, s)
            fam = canonical_filtration(R, "stretched-gorenstein")
            cert = verify_weak_koszul_filtration(R, fam.ideals, fam.names)
            maps = witness_tor_maps(R, cert, 4)
            good = cert.weak_ok and all(m.all_vanishing for m in maps.values())
            detail[f"h={h},s={s}"] = good
            ok = ok and good
    return ok, detail


def _case_lift():
    R = _ring("ring Q[x,y] order degrevlex; ideal I = x*y, y^2;")
    lift_b = lift_filtration(R, "y", [[], ["x"]])
    S = _ring("ring Q[x,y] order degrevlex; ideal I = 0;")
    lift_a = lift_filtration(S, "y", [[], ["x"]])
    return lift_a.verified and lift_b.verified, {"a": lift_a.hypothesis, "b": lift_b.hypothesis}


def _case_socle_example():
    R = _ring("ring Q[x,y] order degrevlex; ideal I = x^3, x*y, y^2;")
    rep = invariants(R)
    cls = classify_g_stretched(R, rep)
    ok = rep.type == 2 and rep.embdim == 2 and cls.verdict == "PredictNotKoszul"
    return ok, {"type": rep.type, "embdim": rep.embdim, "verdict": cls.verdict}


def _case_dim1_classifier():
    R = _ring("ring Q[x,y] order degrevlex; ideal I = x^2, x*y;")
    cls = classify_g_stretched(R)
    dec = qn_decompose(R)
    ok = cls.verdict == "PredictKoszul" and dec.ok and [str(q) for q in dec.Q] == ["x"]
    return ok, {"verdict": cls.verdict, "Q": [str(q) for q in dec.Q]}


def _case_ev_renaming():
    R = elias_valla_presentation(EVParameters(2, 1, 3))
    ok = _same_ideal(R, R.generators, ["y1*y2", "y1^3 - y2^2"])
    R1 = elias_valla_presentation(EVParameters(1, 1, 3))
    ok = ok and [str(g) for g in R1.generators] == ["y1^4"]
    return ok, {"h2": [str(g) for g in R.generators], "h1": [str(g) for g in R1.generators]}


def _case_golod():
    g1 = golod_check(_ring("ring Q[x,y] order degrevlex; ideal I = x^2, x*y;"), 5)
    g2 = golod_check(_ring("ring Q[x,y] order degrevlex; ideal I = x^2, y^2;"), 5)
    ok = g1.status == "GolodUpTo" and g2.status == "NotGolod" and g2.discrepancy == 3 \
        and g2.poincare[3] == 4
    return ok, {"x2,xy": g1.to_json()["golod"], "x2,y2": g2.to_json()["golod"]}


def _case_depth_gr_zero():
    cone = semigroup_ring([4, 5, 11]).tangent_cone
    res = filter_regular_reduction(cone, trials=5, seed=0)
    return not res.found, {"found": res.found, "trials": len(res.evidence)}


CASES: List[Tuple[str, Callable]] = [
    ("semigroup-4-5-11", _case_semigroup),
    ("weak-but-not-koszul-filtration", _case_weak_not_strong),
    ("regular-ring-filtrations", _case_regular),
    ("dim1-canonical-filtration", _case_dim1_canonical),
    ("stretched-gorenstein-filtrations", _case_stretched_gorenstein),
    ("witness-maps-tor-vanishing", _case_tor_vanishing),
    ("filtration-lifting", _case_lift),
    ("socle-rank-two-example", _case_socle_example),
    ("dim1-g-stretched", _case_dim1_classifier),
    ("elias-valla-normal-forms", _case_ev_renaming),
    ("golod-checks", _case_golod),
    ("tangent-cone-depth-zero", _case_depth_gr_zero),
]


def _run_case(i: int) -> dict:
    name, fn = CASES[i]
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a loud failure, not an abort
        return {"name": name, "ok": False, "error": f"{type(e).__name__}: {e}"}
    return {"name": name, "ok": bool(ok), "detail": detail}


def run_repro(jobs: int = 1, only: Optional[List[str]] = None) -> dict:
    idx = [i for i, (name, _) in enumerate(CASES) if not only or name in only]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_run_case, idx))
    else:
        rows = [_run_case(i) for i in idx]
    return {"cases": rows, "failed": [r["name"] for r in rows if not r["ok"]]}


__all__ = ["ev_grid", "sweep_ev", "run_repro", "CASES"]

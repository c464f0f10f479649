"""Command-line frontend.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
1 a mathematical negative (NotKoszul, NotGolod, a failed filtration, ...),
2 an error (parse, precondition, budget, unsupported).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
import time
from typing import List, Optional, Tuple

from . import groebner
from .algebra import field_from_name, parse_presentation
from .errors import ArtifactError, BudgetExceeded, ParseError
from .filtration import (
    KINDS,
    canonical_filtration,
    format_filtration,
    lift_filtration,
    parse_filtration,
    verify_koszul_filtration,
    verify_weak_koszul_filtration,
)
from .linearity import golod_check, koszul_check, lind_bounded
from .resolutions import DEFAULT_BOUND, betti_table, choose_engine, cyclic_module, residue_field
from .stretched import (
    EVParameters,
    classify_g_stretched,
    elias_valla_presentation,
    invariants,
    is_g_stretched,
    filter_regular_reduction,
    qn_decompose,
    semigroup_ring,
    tangent_cone,
    verify_elias_valla,
)
from .suite import run_repro, sweep_ev

SCHEMA = 1


def _field_name(flag: Optional[str]) -> Optional[str]:
    if flag is None:
        return None
    if flag in ("Q", "QQ"):
        return "Q"
    if flag == "Fp":
        return "F32003"
    field_from_name(flag)  # validates F<p>
    return flag


def load_ring(path: str, field: Optional[str] = None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if field is not None:
        text, count = re.subn(r"(\bring\s+)\w+(\s*\[)", rf"\g<1>{field}\g<2>", text, count=1)
        if not count:
            raise ParseError("no ring declaration found", 1, 1)
    return parse_presentation(text)


def _graded_view(R) -> Tuple[object, str]:
    """R itself when graded, else its tangent cone."""
    if R.is_homogeneous:
        return R, choose_engine(R)
    return tangent_cone(R), "tangent-cone"


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code, ring or None, engine)


def cmd_analyze(a):
    R = load_ring(a.ring, a.field)
    rep = invariants(R)
    out = {"invariants": rep.to_json(), "g_stretched": is_g_stretched(R, rep).to_json()}
    if rep.mu_m2 <= 1 and rep.dim <= 1:
        out["classification"] = classify_g_stretched(R, rep).to_json()
    if a.betti:
        bt = betti_table(R, None, a.bound)
        out["betti_k"] = {"bound": a.bound,
                          "table": {f"{i},{j}": v for (i, j), v in sorted(bt.items())}}
    return out, 0, R, rep.engine


def cmd_koszul(a):
    R = load_ring(a.ring, a.field)
    G, engine = _graded_view(R)
    v = koszul_check(G, a.bound)
    out = v.to_json()
    if G is not R:
        out["graded_ring"] = G.to_text()
    return out, 0 if v.is_koszul else 1, R, engine


def cmd_lind(a):
    R = load_ring(a.ring, a.field)
    if a.module in (None, "k"):
        M = residue_field(R)
    else:
        ring = R.ring
        M = cyclic_module(R, [ring.parse(g) for g in a.module.split(",")], f"R/({a.module})")
    v = lind_bounded(R, M, a.bound)
    return v.to_json(), 0, R, choose_engine(R)


def cmd_golod(a):
    R = load_ring(a.ring, a.field)
    v = golod_check(R, a.bound)
    return v.to_json(), 1 if v.status == "NotGolod" else 0, R, choose_engine(R)


def _load_filtration(path: str, R):
    with open(path, encoding="utf-8") as fh:
        return parse_filtration(fh.read(), R)


def cmd_filtration_verify(a):
    R = load_ring(a.ring, a.field)
    names, ideals = _load_filtration(a.filtration, R)
    if a.strong:
        cert = verify_koszul_filtration(R, ideals, a.sbound, names)
        ok = cert.strong_ok
    else:
        cert = verify_weak_koszul_filtration(R, ideals, names)
        ok = cert.weak_ok
    return {"filtration": cert.to_json()}, 0 if ok else 1, R, cert.engine


def cmd_filtration_lift(a):
    R = load_ring(a.ring, a.field)
    names, ideals = _load_filtration(a.filtration, R)
    res = lift_filtration(R, a.element, ideals, names)
    out = res.to_json()
    out["family_text"] = format_filtration(
        [f"F{i}" for i in range(len(res.family))], res.family)
    return {"lift": out}, 0 if res.verified else 1, R, res.certificate.engine


def cmd_filtration_canonical(a):
    R = load_ring(a.ring, a.field)
    fam = canonical_filtration(R, a.kind, x=a.x)
    cert = verify_weak_koszul_filtration(R, fam.ideals, fam.names)
    out = {"canonical": fam.to_json(), "verification": cert.to_json()}
    return out, 0 if cert.weak_ok else 1, R, cert.engine


def cmd_stretched_classify(a):
    R = load_ring(a.ring, a.field)
    cls = classify_g_stretched(R)
    return {"classification": cls.to_json()}, 0 if cls.predicts_koszul else 1, R, "invariants"


def cmd_stretched_qn(a):
    R = load_ring(a.ring, a.field)
    dec = qn_decompose(R)
    return {"qn": dec.to_json()}, 0 if dec.ok else 1, R, "graded"


def cmd_stretched_ev(a):
    field = field_from_name(a.field or "Q")
    units = tuple(a.units) if a.units else ()
    p = EVParameters(a.h, a.tau, a.s, units)
    R = elias_valla_presentation(p, field)
    out = {"parameters": p.to_json(), "checks": verify_elias_valla(R, p)}
    if field.char:
        out["label"] = "experimental evidence only"
    return out, 0, R, "artinian"


def cmd_stretched_reduce(a):
    R = load_ring(a.ring, a.field)
    res = filter_regular_reduction(R, trials=a.trials, seed=a.seed)
    return {"reduction": res.to_json()}, 0 if res.found else 1, R, "graded"


def cmd_semigroup(a):
    field = field_from_name(a.field or "Q")
    sg = semigroup_ring(a.generators, field)
    for w in sg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    out = sg.to_json()
    out["invariants"] = invariants(sg.tangent_cone).to_json()
    return out, 0, sg.toric, "tangent-cone"


def cmd_sweep_ev(a):
    out = sweep_ev(a.hmax, a.smax, a.bound, a.field or "Q", a.jobs, a.smin)
    return {"sweep": out}, 0 if out["disagreements"] == 0 else 1, None, "artinian"


def cmd_repro(a):
    out = run_repro(a.jobs)
    for row in out["cases"]:
        mark = "ok  " if row["ok"] else "FAIL"
        print(f"{mark} {row['name']}", file=sys.stderr)
    return {"repro": out}, 0 if not out["failed"] else 1, None, "mixed"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="coefficient field: Q or Fp (F32003) or F<p>")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--budget-degree", type=int, help="Groebner degree budget")
    common.add_argument("--budget-basis", type=int, help="Groebner basis-size budget")
    common.add_argument("--budget-pairs", type=int, help="Groebner pair budget")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def ring_cmd(name, fn, help_text, bound=True):
        q = sub.add_parser(name, parents=[common], help=help_text)
        q.add_argument("ring", help="ring file")
        if bound:
            q.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        q.set_defaults(func=fn)
        return q

    q = ring_cmd("analyze", cmd_analyze, "invariants and g-stretched classification")
    q.add_argument("--betti", action="store_true", help="also print Betti numbers of k")
    ring_cmd("koszul", cmd_koszul, "bounded Koszulness check")
    q = ring_cmd("lind", cmd_lind, "bounded linearity defect")
    q.add_argument("--module", default="k", help="k, or generators of J for R/J")
    ring_cmd("golod", cmd_golod, "Golod test against the Serre bound")

    filt = sub.add_parser("filtration", help="filtration tools")
    fsub = filt.add_subparsers(dest="action", required=True)
    q = fsub.add_parser("verify", parents=[common])
    q.add_argument("ring")
    q.add_argument("filtration")
    q.add_argument("--strong", action="store_true")
    q.add_argument("--sbound", type=int)
    q.set_defaults(func=cmd_filtration_verify)
    q = fsub.add_parser("lift", parents=[common])
    q.add_argument("ring")
    q.add_argument("filtration")
    q.add_argument("--element", required=True)
    q.set_defaults(func=cmd_filtration_lift)
    q = fsub.add_parser("canonical", parents=[common])
    q.add_argument("ring")
    q.add_argument("--kind", required=True, choices=KINDS)
    q.add_argument("--x", help="regular element for dim1-gorenstein")
    q.set_defaults(func=cmd_filtration_canonical)

    st = sub.add_parser("stretched", help="g-stretched rings")
    ssub = st.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("classify", parents=[common])
    q.add_argument("ring")
    q.set_defaults(func=cmd_stretched_classify)
    q = ssub.add_parser("qn", parents=[common])
    q.add_argument("ring")
    q.set_defaults(func=cmd_stretched_qn)
    q = ssub.add_parser("reduce", parents=[common], help="search for a regular linear form")
    q.add_argument("ring")
    q.add_argument("--trials", type=int, default=20)
    q.set_defaults(func=cmd_stretched_reduce)
    q = ssub.add_parser("ev", parents=[common])
    q.add_argument("--h", type=int, required=True)
    q.add_argument("--tau", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--units", type=int, nargs="*")
    q.set_defaults(func=cmd_stretched_ev)

    q = sub.add_parser("semigroup", parents=[common], help="numerical semigroup ring")
    q.add_argument("generators", type=int, nargs="+")
    q.set_defaults(func=cmd_semigroup)

    sw = sub.add_parser("sweep", help="parameter sweeps")
    wsub = sw.add_subparsers(dest="action", required=True)
    q = wsub.add_parser("ev", parents=[common])
    q.add_argument("--hmax", type=int, required=True)
    q.add_argument("--smax", type=int, required=True)
    q.add_argument("--smin", type=int, default=2)
    q.add_argument("--bound", type=int, default=4)
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_sweep_ev)

    q = sub.add_parser("repro", parents=[common], help="run the reproduction suite")
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_repro)
    return p


def _apply_budget(a) -> dict:
    b = groebner.DEFAULT_BUDGET
    if a.budget_degree is not None:
        b.max_degree = a.budget_degree
    if a.budget_basis is not None:
        b.max_basis = a.budget_basis
    if a.budget_pairs is not None:
        b.max_pairs = a.budget_pairs
    return {"max_degree": b.max_degree, "max_basis": b.max_basis, "max_pairs": b.max_pairs}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    a = parser.parse_args(argv)
    saved = dataclasses.replace(groebner.DEFAULT_BUDGET)
    try:
        a.field = _field_name(a.field)
        budget = _apply_budget(a)
        start = time.perf_counter()
        payload, code, R, engine = a.func(a)
        elapsed = time.perf_counter() - start
    except BudgetExceeded as e:
        print(f"error: budget exceeded: {e}", file=sys.stderr)
        if e.partial is not None:
            print(f"partial state: {e.partial}", file=sys.stderr)
        return 2
    except (ArtifactError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    finally:
        b = groebner.DEFAULT_BUDGET
        b.max_degree, b.max_basis, b.max_pairs = saved.max_degree, saved.max_basis, saved.max_pairs
    report = {"schema": SCHEMA, "command": argv, "engine": engine, "budget": budget,
              "ring": R.to_text() if R is not None else None, "result": payload}
    if a.timing:
        report["timing_seconds"] = round(elapsed, 3)
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())

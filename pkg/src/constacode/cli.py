"""Command-line front end.

    constacode build  --q Q --n N --r R [--field-poly c0,c1,...] [--codes C,Cperp,...]
    constacode verify {thm4,thm5,thm6,thm7,thm9,bridge,sqrt} [params]
    constacode table  {1,2} --q Q --max-n N
    constacode scan   {qr,thm9} [params]

Reports go to stdout (JSON by default, CSV with --csv); diagnostics go to
stderr.  Exit codes: 0 pass, 1 verification failure, 2 bad parameters,
3 budget exhausted.
"""

import argparse
import csv
import io
import json
import sys
from math import gcd

import numpy as np

from . import _kernels
from . import constacyclic as cc
from . import families as fam
from . import gf
from .errors import BudgetExceeded, ConstacodeError
from .linear_code import (
    DEFAULT_BUDGET,
    WeightEnumerator,
    dual,
    macwilliams,
    weight_distribution,
)

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_BUDGET = 0, 1, 2, 3
CODE_NAMES = ("C", "Cperp", "Exp1", "Exp2", "Exp3")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# serialization


def to_jsonable(x):
    """Plain JSON types; enumerator counts become decimal strings."""
    if isinstance(x, WeightEnumerator):
        return x.to_list()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def dumps(report):
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# build


def _code_facts(code, we, q, with_optimality=True):
    facts = {"length": code.n, "dim": code.k}
    if we is not None:
        d = we.min_weight()
        facts["d"] = "∞" if d is None else d
        facts["weight_distribution"] = we
        if with_optimality and d is not None and code.k:
            facts["optimality"] = cc.optimality_flags(code.n, code.k, d, q)
    return facts


def build_report(q, n, r, field_poly=None, budget=DEFAULT_BUDGET, codes=CODE_NAMES):
    spec = cc.spec_create(q, n, r, field_poly)
    ext = spec.ext
    rep = {
        "input": {"q": q, "n": n, "r": r,
                  "field_poly": gf.format_poly(ext.poly), "generator": int(spec.alpha)},
        "params": {**spec.params().as_dict(), "lambda": spec.lam_text()},
        "backend": _kernels.backend(),
        "codes": {},
    }
    C = cc.build_C(spec)
    WC, path = cc.enumerator_C(spec, budget)
    rep["paths"] = {"C": path}
    out = rep["codes"]
    if "C" in codes:
        out["C"] = _code_facts(C, WC, q)
    if "Cperp" in codes:
        Cd = cc.dual_C(spec)
        Wd = macwilliams(WC, n, C.k, q) if Cd.k else WeightEnumerator(n, {0: 1})
        out["Cperp"] = _code_facts(Cd, Wd, q)
    if "Exp1" in codes:
        E1 = cc.exp1(spec)
        W2 = weight_distribution(cc.exp2(spec), budget)
        if E1.size() <= budget:
            W1, p1 = weight_distribution(E1, budget), "direct"
        else:
            W1, p1 = W2.substitute(r), "lifted"
        rep["paths"]["Exp1"] = p1
        out["Exp1"] = _code_facts(E1, W1, q)
    if "Exp2" in codes:
        E2 = cc.exp2(spec)
        out["Exp2"] = _code_facts(E2, weight_distribution(E2, budget), q)
    if "Exp3" in codes:
        E3 = cc.exp3(spec)
        out["Exp3"] = _code_facts(E3, weight_distribution(E3, budget), q)
    rep["verification"] = _verifications(spec, budget)
    return rep


def _verifications(spec, budget):
    small = min(budget, 1 << 16)
    v = {}
    v["thm4"] = {"concat": bool(cc.verify_thm4_concat(spec, small)),
                 **cc.verify_thm4_directsum(spec, small)}
    t5 = cc.verify_thm5(spec, budget)
    v["thm5"] = {"exp1": t5["exp1"], "C": t5["C"], "ok": t5["ok"]}
    t6 = cc.verify_thm6(spec, budget)
    v["thm6"] = t6
    if cc.dual_C(spec).k and spec.ell >= 2:
        t7 = cc.theorem7_dual_analysis(spec)
        v["thm7"] = {"predicted": t7["predicted"], "measured": t7["measured"], "ok": t7["ok"]}
    if gcd(spec.r, spec.n) == 1:
        v["bridge"] = cc.verify_bridge(spec, small)
    return v


# ---------------------------------------------------------------------------
# verify


def _assertions_ok(items):
    return all(v is not False for _, v in items)


def verify_report(theorem, a):
    budget = a.budget
    if theorem in ("thm4", "thm5", "thm6", "thm7", "bridge"):
        _need(a, "q", "n", "r")
        spec = cc.spec_create(a.q, a.n, a.r, _poly(a))
        small = min(budget, 1 << 16)
        if theorem == "thm4":
            ds = cc.verify_thm4_directsum(spec, small)
            items = [("concatenation", bool(cc.verify_thm4_concat(spec, small))),
                     ("direct_sum", ds["primal"]), ("dual_direct_sum", ds["dual"])]
            detail = {}
        elif theorem == "thm5":
            t5 = cc.verify_thm5(spec, budget)
            items = [("exp1_is_W_of_z_to_r", t5["exp1"]), ("C_is_W_to_kappa", t5["C"])]
            detail = {"W": t5["W"], "kappa": spec.kappa, "r": spec.r}
        elif theorem == "thm6":
            t6 = cc.verify_thm6(spec, budget)
            items = [("dual_enumerator_power", t6["macwilliams"]), ("direct_dual", t6["direct"])]
            detail = {"path": t6["path"]}
        elif theorem == "thm7":
            t7 = cc.theorem7_dual_analysis(spec)
            items = sorted(t7["agree"].items())
            if t7["predicted"].get("exact3") and "optimality" in t7:
                items += [("distance_optimal", t7["optimality"]["distance_optimal"]),
                          ("dimension_optimal", t7["optimality"]["dimension_optimal"])]
            detail = {"predicted": t7["predicted"], "measured_d_dual": t7["measured"],
                      "optimality": t7.get("optimality")}
        else:
            br = cc.verify_bridge(spec, small)
            items = [("permutation_i_to_ir", br["permutation"]),
                     ("monomial_scaled", br["monomial"]),
                     ("equal_enumerators", br["enumerator"])]
            detail = {"any_permutation": br["any_permutation"], "dims": br["dims"]}
            if not br["permutation"]:
                C, E3 = cc.build_C(spec), cc.exp3(spec)
                detail["counterexample"] = {
                    "C_perp_generator": dual(C).G if C.k < C.n else [],
                    "Exp3_perp_generator": dual(E3).G if E3.k < E3.n else [],
                }
        rep = {"theorem": theorem, "input": {"q": a.q, "n": a.n, "r": a.r},
               "params": spec.params().as_dict()}
    elif theorem == "thm9":
        _need(a, "q", "m", "e", "u", "r")
        prm = fam.Thm9Params.from_q(a.q, a.m, a.e, a.u, a.r)
        fr = fam.verify_family(prm, budget, direct_budget=a.direct_budget, field_poly=_poly(a),
                               strict=not a.allow_outside)
        items = sorted(fr["match"].items())
        if fr["lemma8"].get("applicable"):
            items.append(("lemma8_exp1", fr["lemma8"]["matches"]))
        rep = {"theorem": theorem, "input": fr["params"]}
        detail = {k: fr[k] for k in ("case", "extras", "path", "predicted", "measured",
                                     "lemma8", "violations")}
    elif theorem == "sqrt":
        _need(a, "q", "n")
        spec = fam.qr_spec(a.q, a.n, a.variant)
        qr = fam.qr_build_and_check(spec, budget)
        keys = ("sqrt_d", "sqrt_d_dual", "exp1_bound", "exp1_matches_lift", "exp3_qr", "exp3_poly_matches")
        items = [(k, qr.get(k)) for k in keys]
        rep = {"theorem": theorem, "input": {"q": a.q, "n": a.n, "variant": spec.variant}}
        detail = {k: qr.get(k) for k in ("d", "d_dual", "exp1", "exp1_path", "status",
                                        "d_lower", "d_dual_lower")}
    else:
        raise UsageError(f"unknown theorem {theorem!r}")
    rep["assertions"] = [{"name": k, "pass": v} for k, v in items]
    rep["detail"] = detail
    rep["pass"] = _assertions_ok(items)
    return rep


# ---------------------------------------------------------------------------
# tables and scans


def table_rows(table, q, max_n, budget=DEFAULT_BUDGET):
    variant = fam.NEGA if table == 1 else fam.PRIM
    rows = []
    for n in fam.scan_qr_primes(q, max_n, variant):
        rep = fam.qr_build_and_check(fam.qr_spec(q, n, variant), budget)
        if rep["status"] == "exact":
            rows.append((n, rep["d"], rep["d_dual"]))
        else:
            rows.append((n, "≥" + str(rep["d_lower"]), "≥" + str(rep["d_dual_lower"])))
    return rows


def scan_list(what, a):
    if what == "qr":
        _need(a, "q", "max_n")
        if a.max_n < 0:
            raise UsageError("--max-n must be non-negative")
        return fam.scan_qr_primes(a.q, a.max_n, a.variant)
    if what == "thm9":
        qs = (a.q,) if a.q else (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
        max_n = a.max_n or 200
        out = []
        for prm in fam.thm9_sweep(qs, max_n):
            out.append({"q": prm.q, "m": prm.m, "e": prm.e, "u": prm.u, "r": prm.r, "n": prm.n})
        return out
    raise UsageError(f"unknown scan {what!r}")


# ---------------------------------------------------------------------------
# argument handling


def _need(a, *names):
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(a, x) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))


def _poly(a):
    return gf.parse_poly(a.field_poly) if a.field_poly else None


def _parser():
    p = _Parser(prog="constacode", description="Irreducible constacyclic codes: build, verify, tabulate.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--q", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--e", type=int)
        sp.add_argument("--u", type=int)
        sp.add_argument("--variant", default="negacyclic")
        sp.add_argument("--max-n", dest="max_n", type=int)
        sp.add_argument("--field-poly", dest="field_poly")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--direct-budget", dest="direct_budget", type=int, default=1 << 24)
        sp.add_argument("--codes", default=",".join(CODE_NAMES))
        sp.add_argument("--threads", type=int, default=0)
        sp.add_argument("--allow-outside", dest="allow_outside", action="store_true",
                        help="evaluate a closed form even when a global hypothesis fails")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")

    common(sub.add_parser("build"))
    v = sub.add_parser("verify")
    v.add_argument("theorem", choices=["thm4", "thm5", "thm6", "thm7", "thm9", "bridge", "sqrt"])
    common(v)
    t = sub.add_parser("table")
    t.add_argument("table", type=int, choices=[1, 2])
    common(t)
    s = sub.add_parser("scan")
    s.add_argument("what", choices=["qr", "thm9"])
    common(s)
    return p


def run(argv):
    """(exit code, stdout text)."""
    a = _parser().parse_args(argv)
    _kernels.set_threads(a.threads)
    fmt = a.fmt or ("csv" if a.command == "table" else "json")
    if a.command == "build":
        _need(a, "q", "n", "r")
        codes = tuple(c.strip() for c in a.codes.split(",") if c.strip())
        bad = [c for c in codes if c not in CODE_NAMES]
        if bad:
            raise UsageError(f"unknown codes {bad}; choose from {', '.join(CODE_NAMES)}")
        rep = build_report(a.q, a.n, a.r, _poly(a), a.budget, codes)
        if fmt == "csv":
            rows = [(name, f["length"], f["dim"], f.get("d", "")) for name, f in rep["codes"].items()]
            return EXIT_OK, _csv(rows, ("code", "length", "dim", "d"))
        return EXIT_OK, dumps(rep) + "\n"
    if a.command == "verify":
        rep = verify_report(a.theorem, a)
        code = EXIT_OK if rep["pass"] else EXIT_FAIL
        if fmt == "csv":
            rows = [(x["name"], x["pass"]) for x in rep["assertions"]]
            return code, _csv(rows, ("assertion", "pass"))
        return code, dumps(rep) + "\n"
    if a.command == "table":
        _need(a, "q", "max_n")
        rows = table_rows(a.table, a.q, a.max_n, a.budget)
        if fmt == "json":
            return EXIT_OK, dumps({"table": a.table, "q": a.q,
                                   "rows": [{"n": n, "d": d, "d_dual": dd} for n, d, dd in rows]}) + "\n"
        return EXIT_OK, _csv(rows, ("n", "d", "d_dual"))
    rows = scan_list(a.what, a)
    if fmt == "csv":
        if rows and isinstance(rows[0], dict):
            keys = sorted(rows[0])
            return EXIT_OK, _csv([[r[k] for k in keys] for r in rows], keys)
        return EXIT_OK, _csv([[x] for x in rows], ("n",))
    return EXIT_OK, dumps(rows) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(f"constacode: usage error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except BudgetExceeded as exc:
        print(f"constacode: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConstacodeError, AssertionError) as exc:
        print(f"constacode: invalid parameters: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARAM
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Acceptance criteria 1-9, each checked exactly and against its runtime limit.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.  Times exclude one-off numba compilation,
which the module fixture triggers beforehand.
"""

import collections
import functools
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from constacode import constacyclic as cc
from constacode import families as fam
from constacode import gf
from constacode.linear_code import (
    LinearCode,
    WeightEnumerator,
    low_weight_search,
    macwilliams,
    no_code_exists,
    sphere_packing_even_ok,
    sphere_packing_ok,
    weight_distribution,
)

POLY = {
    "2^12": gf.parse_poly("1,1,0,1,0,1,1,1,0,0,0,0,1"),
    "2^24": tuple(1 if i in {24, 16, 15, 14, 13, 10, 9, 7, 5, 3, 0} else 0 for i in range(25)),
    "3^6": gf.parse_poly("2,2,1,0,2,0,1"),
    "5^4": gf.parse_poly("2,4,4,0,1"),
    "7^6": gf.parse_poly("3,6,4,5,1,0,1"),
    "7^8": gf.parse_poly("3,2,6,4,0,0,0,0,1"),
    "11^6": gf.parse_poly("2,7,6,4,3,0,1"),
    "11^8": gf.parse_poly("2,7,1,7,7,0,0,0,1"),
    "13^4": gf.parse_poly("2,12,3,0,1"),
}


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile the numba kernels once so the timings below measure the work only
    for q in (2, 3):
        F = gf.field_create(q, 4)
        weight_distribution(LinearCode(F, [[1, 1, 0, 1], [0, 1, 1, 1]]))


def criterion(num, title, limit):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t = time.perf_counter()
            try:
                detail = fn()
            except BaseException as exc:
                ACCEPTANCE[num] = (False, title, time.perf_counter() - t, f"{type(exc).__name__}: {exc}")
                raise
            secs = time.perf_counter() - t
            ok = secs < limit
            note = detail if ok else f"{detail}; over the {limit} s limit"
            ACCEPTANCE[num] = (ok, title, secs, note)
            print(f"criterion {num}: {'PASS' if ok else 'FAIL'} [{secs:.1f} s] {note}")
            assert ok, note
        return wrapper
    return deco


def W(n, counts):
    return WeightEnumerator(n, counts)


@criterion(1, "q=4, n=15, r=3 golden suite", 1.0)
def test_criterion_1():
    s = cc.spec_create(4, 15, 3, POLY["2^12"])
    C, Cd, E1, E2 = cc.build_C(s), cc.dual_C(s), cc.exp1(s), cc.exp2(s)
    WC = weight_distribution(C)
    assert (C.n, C.k, WC.min_weight()) == (15, 6, 4)
    assert WC == W(5, {0: 1, 4: 15}) ** 3
    WCd = weight_distribution(Cd)
    assert (Cd.n, Cd.k, WCd.min_weight()) == (15, 9, 3)
    assert WCd == W(5, {0: 1, 3: 30, 4: 15, 5: 18}) ** 3
    W1 = weight_distribution(E1)
    assert (E1.n, E1.k) == (15, 2) and W1 == W(15, {0: 1, 12: 15})
    W2 = weight_distribution(E2)
    assert (E2.n, E2.k, W2.min_weight()) == (5, 2, 4)
    return "C=[15,6,4], C^perp=[15,9,3], Exp1=[15,2,12], Exp2=[5,2,4]"


@criterion(2, "q=7, n=800, r=6 via lifting", 1.0)
def test_criterion_2():
    s = cc.spec_create(7, 800, 6, POLY["7^8"])
    assert s.lam == 3
    bundle = s.params()
    assert (bundle.L, bundle.e) == (1201, 1)
    W2 = weight_distribution(cc.exp2(s))
    assert W2.counts == {0: 1, 343: 2400}
    WC = cc.lifted_enumerator(s)
    assert WC.counts == {0: 1, 343: 4800, 686: 5760000}
    assert (s.n, s.degree, WC.min_weight()) == (800, 8, 343)
    return "Exp2 1+2400z^343, C [800,8,343] 1+4800z^343+5760000z^686, L=1201, e=1"


THM9 = [
    ((16, 2, 1, 3, 15), "2^24", (51, 6, 16), None),
    ((7, 2, 2, 3, 6), "7^6", (12, 6, 3), None),
    ((7, 3, 3, 2, 6), "7^6", (38, 6, 15), None),
    ((13, 4, 4, 1, 12), "13^4", (595, 4, 540), {540: 7140, 550: 7140, 552: 7140, 555: 7140}),
    ((11, 2, 4, 3, 10), "11^6", (9, 6, 2), None),
    ((11, 4, 3, 2, 10), "11^8", (976, 8, 440), None),
]


@criterion(3, "few-weight family examples", 6 * 30.0)
def test_criterion_3():
    out = []
    for args, poly, nkd, weights in THM9:
        t = time.perf_counter()
        prm = fam.Thm9Params.from_q(*args)
        # the length-9 example lies outside the u | q-1 hypothesis; evaluate its display anyway
        rep = fam.verify_family(prm, field_poly=POLY[poly], strict=not prm.violations())
        secs = time.perf_counter() - t
        m = rep["measured"]
        assert (m["n"], m["k"], m["d"]) == nkd, (args, m)
        assert rep["match"]["enumerator"], args
        if weights:
            assert {w: c for w, c in m["enumerator"].counts.items() if w} == weights
        assert secs < 30, (args, secs)
        out.append(f"[{nkd[0]},{nkd[1]},{nkd[2]}]/{rep['path']}")
    return ", ".join(out)


@criterion(4, "corollary examples", 60.0)
def test_criterion_4():
    s = cc.spec_create(3, 26, 2, POLY["3^6"])
    C = cc.build_C(s)
    WC = weight_distribution(C)
    assert (C.n, C.k, WC.min_weight()) == (26, 6, 9)
    assert WC.counts == {0: 1, 9: 52, 18: 676}
    assert fam.predict_corollaries("two_weight", 3, 3, 2).enumerator == WC
    Cd = cc.dual_C(s)
    assert (Cd.k, low_weight_search(Cd, 3, parity=C.G)) == (20, 3)

    s = cc.spec_create(4, 255, 3, POLY["2^24"])
    WC, path = cc.enumerator_C(s, direct_budget=1 << 20)
    assert path == "lifted"
    assert WC.counts == {0: 1, 64: 765, 128: 195075, 192: 16581375}
    assert s.degree == 12 and WC.min_weight() == 64
    assert fam.predict_corollaries("three_weight", 4, 4, 3).enumerator == WC
    Cd = cc.dual_C(s)
    assert (Cd.k, low_weight_search(Cd, 3, parity=cc.build_C(s).G)) == (243, 3)
    return "[26,6,9] dual [26,20,3]; [255,12,64] (lifted) dual [255,243,3]"


@criterion(5, "dual-optimality suite q=5, m=4, r=4", 10.0)
def test_criterion_5():
    got = []
    for e in (1, 2, 3, 4):
        prm = fam.Thm9Params.from_q(5, 4, e, 1, 4)
        s = cc.spec_create(5, prm.n, 4, POLY["5^4"])
        n = s.n
        Cd = cc.dual_C(s)
        d = low_weight_search(Cd, 4, parity=cc.build_C(s).G)
        assert (Cd.k, d) == (n - 4, 3)
        # d = 4 is refuted by the even-distance bound, d = 5 by sphere packing
        assert not sphere_packing_even_ok(n, n - 4, 4, 5)
        assert not sphere_packing_ok(n, n - 4, 5, 5)
        assert no_code_exists(n, n - 4, 4, 5)[0]
        # one more dimension at distance 3 is impossible
        assert not sphere_packing_ok(n, n - 3, 3, 5)
        got.append(f"[{n},{n - 4},{d}]")
    assert got == ["[156,152,3]", "[78,74,3]", "[52,48,3]", "[39,35,3]"]
    return ", ".join(got) + "; each distance- and dimension-optimal"


TABLE_ROWS = [
    (1, 3, 11, (6, 5)), (1, 3, 23, (9, 8)), (1, 5, 11, (6, 5)), (1, 5, 19, (8, 7)),
    (2, 4, 7, (4, 3)), (2, 4, 11, (6, 5)), (2, 4, 13, (6, 5)), (2, 4, 19, (8, 7)),
    (2, 4, 23, (8, 7)), (2, 4, 29, (12, 11)), (2, 5, 11, (6, 5)), (2, 5, 19, (8, 7)),
]
_table_cache = {}


def _table_reports():
    if not _table_cache:
        for table, q, n, _ in TABLE_ROWS:
            variant = fam.NEGA if table == 1 else fam.PRIM
            _table_cache[(table, q, n)] = fam.qr_build_and_check(fam.qr_spec(q, n, variant))
    return _table_cache


@criterion(6, "table rows, d and d_dual", 600.0)
def test_criterion_6():
    reps = _table_reports()
    bad = []
    for table, q, n, want in TABLE_ROWS:
        rep = reps[(table, q, n)]
        if (rep["d"], rep["d_dual"]) != want or not rep["ok"]:
            bad.append((table, q, n, rep["d"], rep["d_dual"]))
    assert not bad, bad
    # rows beyond the budget only carry square-root lower bounds
    far = fam.qr_build_and_check(fam.qr_spec(3, 37, fam.NEGA), budget=1 << 16)
    assert far["status"] == "bound" and (far["d_lower"], far["d_dual_lower"]) == (8, 7)
    return f"{len(TABLE_ROWS)} rows exact; q=3, n=37 bound-only (d>=8, d_dual>=7)"


@criterion(7, "lifted-family square-root bounds", 600.0)
def test_criterion_7():
    s = cc.spec_create(3, 11, 2)
    E1 = cc.exp1(s)
    W1 = weight_distribution(E1)
    assert (E1.n, E1.k, W1.min_weight()) == (22, 5, 12)
    assert W1 == weight_distribution(cc.build_C(s)).substitute(2)

    s = cc.spec_create(4, 13, 3)
    E1 = cc.exp1(s)
    W1 = weight_distribution(E1)
    assert W1 == weight_distribution(cc.build_C(s)).substitute(3)
    assert fam.sqrt_bound_ok(W1.min_weight(), 13, scale=3)

    reps = _table_reports()
    for key, rep in reps.items():
        d, dd, n = rep["d"], rep["d_dual"], key[2]
        assert (d - 1) ** 2 >= n and dd * dd >= n, key
        assert rep["exp1_bound"], key
    return (f"Exp1(3,11,1;2)=[22,5,12]; Exp1(4,13,1) d={W1.min_weight()} >= 3(sqrt13+1), "
            f"equal to W(z^3); bounds hold on {len(reps)} rows")


@criterion(8, "structural property sweep", 900.0)
def test_criterion_8():
    fails = collections.Counter()
    examples = {}
    count = 0
    for q, n, r in cc.sweep_specs():
        count += 1
        rep = cc.verify_structure(cc.spec_create(q, n, r))
        for key, val in rep.items():
            if val is False:
                fails[key] += 1
                examples.setdefault(key, (q, n, r))
    summary = f"{count} specs; failures {dict(fails) or 0}"
    if examples:
        summary += f"; first failing spec per check {examples}"
    assert not fails, summary
    return summary


@criterion(9, "diophantine representations", 1.0)
def test_criterion_9():
    feeds = [("e3", fam.Thm9Params.from_q(7, 3, 3, 2, 6)), ("e4", fam.Thm9Params.from_q(13, 4, 4, 1, 12))]
    out = []
    for case, prm in feeds:
        p, q, m = prm.p, prm.q, prm.m
        tag, ex = prm.case()
        assert tag == case
        c1, d1 = ex["c1"], ex["d1"]
        if case == "e3":
            assert 4 * p ** (prm.s * m // 3) == c1 * c1 + 27 * d1 * d1 and c1 % 3 == 1
        else:
            assert p ** (prm.s * m // 2) == c1 * c1 + 4 * d1 * d1 and c1 % 4 == 1
        assert c1 % p != 0
        base_n = (q**m - 1) // ((q - 1) * prm.e)
        a = fam._enumerator(base_n, fam._base_terms(case, q, m, prm.e, c1, d1))
        b = fam._enumerator(base_n, fam._base_terms(case, q, m, prm.e, c1, -d1))
        assert a == b
        out.append(f"{case} q={q} m={m}: (c1,d1)=({c1},{d1})")
    # the other representations met along the way
    assert fam.gauss_cd_e3(13, 13, 3) == (-5, 1) and fam.gauss_cd_e4(5, 5, 4) == (-3, 2)
    return "; ".join(out) + "; sign flip of d1 leaves the enumerators unchanged"


def test_macwilliams_of_lifted_c_matches_dual_power():
    # sanity tie between criteria 2 and 6: the lifted dual enumerator of the n=800 code
    s = cc.spec_create(7, 800, 6, POLY["7^8"])
    W2 = weight_distribution(cc.exp2(s))
    left = macwilliams(cc.lifted_enumerator(s), 800, 8, 7)
    right = macwilliams(W2, cc.exp2(s).n, 4, 7) ** s.kappa
    assert left == right
    assert np.int64(left.min_weight()) == 3

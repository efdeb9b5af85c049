"""Closed-form predictions for few-weight families and the QR-derived families.

Predictions are exact integer weight enumerators; ``verify_family`` and
``qr_build_and_check`` put them next to measurements from the constructions.
"""

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from . import constacyclic as cc
from . import cosets, gf
from .errors import (
    BudgetExceeded,
    NoRepresentation,
    NotPrime,
    OrderConditionFails,
    PreconditionViolated,
)
from .linear_code import (
    DEFAULT_BUDGET,
    WeightEnumerator,
    low_weight_search,
    macwilliams,
    weight_distribution,
)
from .polyring import poly_from_roots

# ---------------------------------------------------------------------------
# diophantine data


def gauss_cd_e3(p, q, m):
    """(c1, d1) with 4 q^(m/3) = c1^2 + 27 d1^2, c1 = 1 mod 3, p does not divide c1, d1 >= 0."""
    s = gf.prime_power(q)[1]
    if p % 3 != 1 or (s * m) % 3:
        raise NoRepresentation(f"need p = 1 mod 3 and 3 | sm (p={p}, s={s}, m={m})")
    Q = p ** (s * m // 3)
    bound = isqrt(4 * Q) + 1
    for a in range(0, bound + 1):
        for c1 in (a, -a):
            if c1 % 3 != 1 or c1 % p == 0:
                continue
            rest = 4 * Q - c1 * c1
            if rest < 0 or rest % 27:
                continue
            d = isqrt(rest // 27)
            if d * d == rest // 27:
                return c1, d
    raise NoRepresentation(f"no representation of 4*{Q} as c^2 + 27d^2")


def gauss_cd_e4(p, q, m):
    """(c1, d1) with q^(m/2) = c1^2 + 4 d1^2, c1 = 1 mod 4, p does not divide c1, d1 >= 0."""
    s = gf.prime_power(q)[1]
    if p % 4 != 1 or (s * m) % 4:
        raise NoRepresentation(f"need p = 1 mod 4 and 4 | sm (p={p}, s={s}, m={m})")
    Q = p ** (s * m // 2)
    bound = isqrt(Q) + 1
    for a in range(0, bound + 1):
        for c1 in (a, -a):
            if c1 % 4 != 1 or c1 % p == 0:
                continue
            rest = Q - c1 * c1
            if rest < 0 or rest % 4:
                continue
            d = isqrt(rest // 4)
            if d * d == rest // 4:
                return c1, d
    raise NoRepresentation(f"no representation of {Q} as c^2 + 4d^2")


# ---------------------------------------------------------------------------
# base enumerators (length (q^m - 1)/((q - 1)e), dimension m)


def _exact(num, den, what):
    if num % den:
        raise PreconditionViolated(f"{what}: {num}/{den} is not an integer")
    return num // den


def semiprimitive_j(p, e):
    """Least j >= 1 with p^j = -1 mod e, or None."""
    x = 1
    for j in range(1, e + 1):
        x = x * p % e
        if x == (e - 1) % e:
            return j
    return None


def _base_terms(case, q, m, e, c1=None, d1=None, gamma=None, lemma_branch=None):
    """[(count, weight numerator, denominator)] for the displayed one-code enumerator."""
    Q = q**m - 1
    qm1 = q ** (m - 1)
    if case == "e1":
        return [(Q, qm1, 1)]
    if case == "e2":
        h = q ** ((m - 2) // 2)
        return [(Q // 2, qm1 - h, 2), (Q // 2, qm1 + h, 2)]
    if case == "e3":
        h = q ** ((m - 3) // 2)
        return [(Q // 3, 3 * 2 * (qm1 - c1 * h), 18),
                (Q // 3, 2 * qm1 + (c1 + 9 * d1) * h, 6),
                (Q // 3, 2 * qm1 + (c1 - 9 * d1) * h, 6)]
    if case == "e4":
        h2 = q ** ((m - 2) // 2)
        h4 = q ** ((m - 4) // 4)
        return [(Q // 4, qm1 + h2 + 2 * c1 * h4, 4), (Q // 4, qm1 + h2 - 2 * c1 * h4, 4),
                (Q // 4, qm1 - h2 + 4 * d1 * h4, 4), (Q // 4, qm1 - h2 - 4 * d1 * h4, 4)]
    if case == "semiprimitive":
        # q^((m-2)/2) read as p^(s(m-2)/2); sm is even here, m need not be
        pp, s = gf.prime_power(q)
        h = _exact(pp ** (s * m), q * q, "q^(m-2)")
        h = isqrt(h)
        if lemma_branch == "all_odd":
            return [(Q // e, qm1 - (e - 1) * h, e), (Q - Q // e, qm1 + h, e)]
        sg = (-1) ** gamma
        return [(Q // e, qm1 + sg * (e - 1) * h, e), (Q - Q // e, qm1 - sg * h, e)]
    raise ValueError(case)


def _enumerator(length, terms, scale=1):
    out = []
    for count, num, den in terms:
        w = _exact(num * scale, den, "weight")
        if w <= 0 or w > length:
            raise PreconditionViolated(f"weight {w} outside [1, {length}]")
        out.append((count, w))
    we = WeightEnumerator.from_terms(length, [(1, 0)] + out)
    return we


# ---------------------------------------------------------------------------
# closed-form prediction for Exp1


def lemma8_case(q, r, m, e):
    """Classify (q, r, m, e); returns (case, extras) or raises PreconditionViolated."""
    p, s = gf.prime_power(q)
    if (q - 1) % r:
        raise PreconditionViolated(f"r = {r} does not divide q - 1")
    Qm = (q**m - 1) // (q - 1)
    if m < 2 or Qm % e:
        raise PreconditionViolated(f"e = {e} does not divide (q^m-1)/(q-1) or m < 2")
    if e == 1:
        return "e1", {}
    if e == 2:
        if m % 2 or r % 2 == 0:
            raise PreconditionViolated("case e=2 needs m even and gcd(r, 2) = 1")
        return "e2", {}
    if e == 3 and p % 3 == 1:
        if m % 2 == 0 or m < 3 or (s * m) % 3 or r % 3 == 0:
            raise PreconditionViolated("case e=3 needs m odd >= 3, 3 | sm, gcd(r, 3) = 1")
        c1, d1 = gauss_cd_e3(p, q, m)
        return "e3", {"c1": c1, "d1": d1}
    if e == 4 and p % 4 == 1:
        if m % 2 or m < 4 or (s * m) % 4 or r % 2 == 0:
            raise PreconditionViolated("case e=4 needs m even >= 4, 4 | sm, gcd(r, 2) = 1")
        c1, d1 = gauss_cd_e4(p, q, m)
        return "e4", {"c1": c1, "d1": d1}
    if e > 2:
        if m % 2 or gcd(e, r) != 1:
            raise PreconditionViolated("semiprimitive case needs m even and gcd(e, r) = 1")
        j = semiprimitive_j(p, e)
        if j is None or (s * m) % (2 * j):
            raise PreconditionViolated(f"no semiprimitive j for p = {p}, e = {e}")
        gamma = s * m // (2 * j)
        if gamma % 2 and p % 2 and ((p**j + 1) // e) % 2:
            if (e - 1) ** 2 >= q**m:
                raise PreconditionViolated("all-odd branch needs e < q^(m/2) + 1")
            branch = "all_odd"
        else:
            # q^(m/2) + (-1)^gamma (e - 1) > 0
            if gamma % 2 and (e - 1) ** 2 >= q**m:
                raise PreconditionViolated("signed branch needs q^(m/2) + (-1)^gamma (e-1) > 0")
            branch = "signed"
        return "semiprimitive", {"j": j, "gamma": gamma, "branch": branch}
    raise PreconditionViolated(f"no case applies to q={q}, m={m}, e={e}")


def predict_lemma8(q, r, m, e):
    """(length, dimension, enumerator) of Exp1 for the matching case."""
    case, ex = lemma8_case(q, r, m, e)
    length = r * (q**m - 1) // ((q - 1) * e)
    terms = _base_terms(case, q, m, e, ex.get("c1"), ex.get("d1"), ex.get("gamma"), ex.get("branch"))
    return length, m, _enumerator(length, terms, scale=r)


# ---------------------------------------------------------------------------
# closed-form prediction for C


@dataclass(frozen=True)
class Thm9Params:
    p: int
    s: int
    m: int
    e: int
    u: int
    r: int

    @property
    def q(self):
        return self.p**self.s

    @property
    def n(self):
        q = self.q
        return self.u * (q**self.m - 1) // ((q - 1) * self.e)

    @classmethod
    def from_q(cls, q, m, e, u, r):
        p, s = gf.prime_power(q)
        return cls(p, s, m, e, u, r)

    def violations(self):
        """Names of the violated global hypotheses (empty when all hold)."""
        q, m, e, u, r = self.q, self.m, self.e, self.u, self.r
        Qm = (q**m - 1) // (q - 1)
        problems = []
        if m < 2:
            problems.append("m >= 2")
        if Qm % e:
            problems.append("e | (q^m-1)/(q-1)")
        if (2 * e - 1) ** 2 > q**m:
            problems.append("e <= (q^(m/2)+1)/2")
        if (q - 1) % u:
            problems.append("u | q-1")
        if (q - 1) % r:
            problems.append("r | q-1")
        if gcd(e, u) != 1:
            problems.append("gcd(e, u) = 1")
        if not problems and gcd((q - 1) // r, self.n) != 1:
            problems.append("gcd((q-1)/r, n) = 1")
        return problems

    def validate(self):
        problems = self.violations()
        if problems:
            raise PreconditionViolated("violated: " + "; ".join(problems))
        return self

    def case(self, strict=True):
        """(tag, extras) among e1, e2, e3, e4, semiprimitive."""
        if strict:
            self.validate()
        p, s, q, m, e = self.p, self.s, self.q, self.m, self.e
        if e == 1:
            return "e1", {}
        if e == 2 and m % 2 == 0 and 2 < q:
            return "e2", {}
        if e == 3 and e < q and m % 2 and m >= 3 and (s * m) % 3 == 0 and p % 3 == 1:
            c1, d1 = gauss_cd_e3(p, q, m)
            return "e3", {"c1": c1, "d1": d1}
        if e == 4 and e < q and m % 2 == 0 and m >= 4 and (s * m) % 4 == 0 and p % 4 == 1:
            c1, d1 = gauss_cd_e4(p, q, m)
            return "e4", {"c1": c1, "d1": d1}
        if e > 2:
            j = semiprimitive_j(p, e)
            if j is not None and (s * m) % (2 * j) == 0:
                gamma = s * m // (2 * j)
                return "semiprimitive", {"j": j, "gamma": gamma,
                                         "branch": "all_odd" if gamma % 2 else "signed"}
        raise PreconditionViolated(f"no case applies to {self}")


@dataclass
class Thm9Prediction:
    n: int
    k: int
    enumerator: WeightEnumerator
    dual_distance: int
    case: str
    extras: dict
    violations: tuple = ()


def predict_thm9(params, strict=True):
    """Prediction for C; strict=False evaluates the display even when a global hypothesis fails."""
    case, ex = params.case(strict)
    q, m, e, u = params.q, params.m, params.e, params.u
    base_len = (q**m - 1) // ((q - 1) * e)
    if case == "semiprimitive":
        # for C only the parity of gamma matters
        terms = _base_terms(case, q, m, e, gamma=ex["gamma"],
                            lemma_branch="all_odd" if ex["gamma"] % 2 else "signed")
    else:
        terms = _base_terms(case, q, m, e, ex.get("c1"), ex.get("d1"))
    base = _enumerator(base_len, terms)
    dd = 3
    if case == "semiprimitive" and ex["gamma"] % 2 == 0 and m == 4 and e == q + 1:
        dd = 4
    if params.n == u * m:
        dd = None  # C is the full space and its dual is zero
    return Thm9Prediction(params.n, u * m, base**u, dd, case, ex, tuple(params.violations()))


def base_enumerator_thm9(params):
    """The displayed enumerator before raising to the u-th power."""
    pred = predict_thm9(params)
    return pred, pred.enumerator


# ---------------------------------------------------------------------------
# one-, two- and three-weight special cases


@dataclass
class CorollaryPrediction:
    kind: str
    n: int
    k: int
    d: int
    enumerator: WeightEnumerator
    dual: tuple
    constant_weight: int = None


def predict_corollaries(kind, q, m, r):
    if (q - 1) % r or m < 2:
        raise PreconditionViolated("need r | q-1 and m >= 2")
    t = (q - 1) // r
    Q = q**m - 1
    w = q ** (m - 1)
    base_n = Q // (q - 1)
    if kind == "simplex":
        if gcd(t, m) != 1:
            raise PreconditionViolated("need gcd((q-1)/r, m) = 1")
        we = WeightEnumerator(base_n, {0: 1, w: Q})
        return CorollaryPrediction(kind, base_n, m, w, we, (base_n, base_n - m, 3), constant_weight=w)
    if kind == "two_weight":
        if q % 2 == 0 or gcd(t, 2 * m) != 1:
            raise PreconditionViolated("need q odd and gcd((q-1)/r, 2m) = 1")
        n = 2 * base_n
        we = WeightEnumerator(n, {0: 1, w: 2 * Q, 2 * w: Q * Q})
        return CorollaryPrediction(kind, n, 2 * m, w, we, (n, n - 2 * m, 3))
    if kind == "three_weight":
        if q % 3 != 1 or gcd(t, 3 * m) != 1:
            raise PreconditionViolated("need q = 1 mod 3 and gcd((q-1)/r, 3m) = 1")
        n = 3 * base_n
        we = WeightEnumerator(n, {0: 1, w: 3 * Q, 2 * w: 3 * Q * Q, 3 * w: Q**3})
        return CorollaryPrediction(kind, n, 3 * m, w, we, (n, n - 3 * m, 3))
    raise ValueError(f"unknown corollary kind {kind!r}")


# ---------------------------------------------------------------------------
# quadratic-residue families

NEGA = "negacyclic"
PRIM = "primitive"


def _variant(v):
    v = str(v).lower()
    if v in ("nega", "negacyclic", "1"):
        return NEGA
    if v in ("prim", "primitive", "primitive-lambda", "primitive-λ", "2"):
        return PRIM
    raise ValueError(f"unknown variant {v!r}")


@dataclass(frozen=True)
class QRFamilySpec:
    q: int
    n: int
    variant: str
    m: int
    h: int
    companion: int

    @property
    def r(self):
        return 2 if self.variant == NEGA else self.q - 1


def _order_ok(q, n, variant):
    if variant == NEGA:
        return q % 2 == 1 and gcd(q, 2 * n) == 1 and cosets.mult_order(q, 2 * n) == (n - 1) // 2
    return q > 2 and gcd(q, (q - 1) * n) == 1 and cosets.mult_order(q, (q - 1) * n) == (n - 1) // 2


def qr_spec(q, n, variant):
    variant = _variant(variant)
    if n < 3 or n % 2 == 0 or not gf.is_prime(n):
        raise NotPrime(f"n = {n} is not an odd prime")
    if n <= q:
        raise OrderConditionFails(f"n = {n} must exceed q = {q}")
    if not _order_ok(q, n, variant):
        mod = 2 * n if variant == NEGA else (q - 1) * n
        raise OrderConditionFails(f"ord_{mod}({q}) != {(n - 1) // 2}")
    if pow(q, (n - 1) // 2, n) != 1:
        raise OrderConditionFails(f"{q} is not a quadratic residue mod {n}")
    m = (n - 1) // 2
    if variant == NEGA:
        c1 = set(cosets.cyclotomic_coset(q, 2 * n, 1).members)
        h = min(i for i in range(1, 2 * n, 2) if i not in c1 and i != n)
        return QRFamilySpec(q, n, variant, m, h, h)
    N = (q - 1) * n
    h = pow(n, -1, q - 1) if q > 2 else 0
    if q == 2 or h == 0:
        h = 1
    c1 = set(cosets.cyclotomic_coset(q, N, 1).members)
    t = min(i for i in range(1, N, q - 1) if i not in c1 and i != (h * n) % N)
    return QRFamilySpec(q, n, variant, m, h, t)


def scan_qr_primes(q, n_max, variant):
    variant = _variant(variant)
    out = []
    for n in range(3, n_max + 1, 2):
        if n > q and gf.is_prime(n) and _order_ok(q, n, variant):
            out.append(n)
    return out


def quadratic_residues(n):
    return sorted({x * x % n for x in range(1, n)})


def sqrt_bound_ok(d, n, scale=1):
    """d >= scale*(sqrt(n) + 1), exactly."""
    return d is not None and d >= scale and (d - scale) ** 2 >= scale * scale * n


def dual_sqrt_ok(d, n):
    return d is not None and d * d >= n


def qr_build_and_check(spec, budget=DEFAULT_BUDGET, exp1_budget=1 << 22, field_poly=None):
    """Build C(q,n,1;2) or C(q,n,1) and check the square-root bounds and QR structure."""
    q, n, r = spec.q, spec.n, spec.r
    cs = cc.spec_create(q, n, r, field_poly)
    C = cc.build_C(cs)
    rep = {"q": q, "n": n, "variant": spec.variant, "k": C.k, "r": r}
    if C.size() > budget:
        # bound-only row
        rep.update(status="bound", d=None, d_dual=None,
                   d_lower=_least_d(n), d_dual_lower=_least_dual(n), ok=True)
        return rep
    W = weight_distribution(C, budget)
    Wd = macwilliams(W, n, C.k, q)
    d, dd = W.min_weight(), Wd.min_weight()
    rep.update(status="exact", d=d, d_dual=dd, enumerator=W)
    rep["sqrt_d"] = sqrt_bound_ok(d, n)
    rep["sqrt_d_dual"] = dual_sqrt_ok(dd, n)
    E1 = cc.exp1(cs)
    lifted = W.substitute(r)
    if E1.size() <= exp1_budget:
        W1 = weight_distribution(E1, exp1_budget)
        rep["exp1_path"] = "direct"
        rep["exp1_matches_lift"] = W1 == lifted
    else:
        W1 = lifted
        rep["exp1_path"] = "lifted"
        rep["exp1_matches_lift"] = None
    rep["exp1"] = (E1.n, E1.k, W1.min_weight())
    rep["exp1_bound"] = sqrt_bound_ok(W1.min_weight(), n, scale=r)
    # QR structure of Exp3's check polynomial
    qr = set(quadratic_residues(n))
    roots = set(cosets.cyclotomic_coset(q, r * n, r % (r * n)).members)
    qr_r = {(r * i) % (r * n) for i in qr}
    qn_r = {(r * i) % (r * n) for i in range(1, n) if i not in qr}
    rep["exp3_qr"] = roots == qr_r or roots == qn_r
    h3 = cc.minimal_poly_of_power(cs, r)
    ext = cs.ext
    side = qr if roots == qr_r else {i for i in range(1, n) if i not in qr}
    big = poly_from_roots(ext, [ext.pow(cs.beta, r * i) for i in sorted(side)])
    rep["exp3_poly_matches"] = cs.sub.to_small_array(np.array(big.coeffs)).tolist() == list(h3.coeffs)
    checks = [rep["sqrt_d"], rep["sqrt_d_dual"], rep["exp1_bound"], rep["exp3_qr"],
              rep["exp3_poly_matches"], rep["exp1_matches_lift"] is not False]
    rep["ok"] = all(checks)
    return rep


def _least_d(n):
    # least d with (d-1)^2 >= n
    d = isqrt(n) + 1
    while (d - 1) ** 2 < n:
        d += 1
    return d


def _least_dual(n):
    d = isqrt(n)
    while d * d < n:
        d += 1
    return d


# ---------------------------------------------------------------------------
# prediction versus measurement


def measure_enumerator(cs, budget=DEFAULT_BUDGET, direct_budget=None):
    """C's enumerator: direct when q^(kappa*l) fits ``direct_budget``, else W(Exp2)^kappa."""
    return cc.enumerator_C(cs, budget, direct_budget)


def measure_dual_distance(cs, w_max=4):
    Cd = cc.dual_C(cs)
    if Cd.k == 0:
        return None
    return low_weight_search(Cd, w_max, parity=cc.build_C(cs).G)


def verify_family(params, budget=DEFAULT_BUDGET, direct_budget=1 << 24, field_poly=None,
                  generator=None, w_max=4, strict=True):
    """Prediction and measurement side by side for a Thm9Params instance."""
    pred = predict_thm9(params, strict)
    q, n, r = params.q, params.n, params.r
    cs = cc.spec_create(q, n, r, field_poly, generator)
    W, path = measure_enumerator(cs, budget, direct_budget)
    dd = measure_dual_distance(cs, w_max)
    rep = {
        "params": {"q": q, "m": params.m, "e": params.e, "u": params.u, "r": r, "n": n},
        "case": pred.case,
        "extras": pred.extras,
        "spec": cs.params().as_dict(),
        "path": path,
        "violations": list(pred.violations),
        "predicted": {"n": pred.n, "k": pred.k, "d": pred.enumerator.min_weight(),
                      "enumerator": pred.enumerator, "d_dual": pred.dual_distance},
        "measured": {"n": cs.n, "k": cs.degree, "d": W.min_weight(), "enumerator": W,
                     "d_dual": dd},
    }
    match = {
        "length": pred.n == cs.n,
        "dimension": pred.k == cs.degree,
        "enumerator": pred.enumerator == W,
        "d": pred.enumerator.min_weight() == W.min_weight(),
        "d_dual": pred.dual_distance == dd,
    }
    rep["match"] = match
    # cross-check on Exp1 when kappa and l line up with u and m
    lem = {"applicable": False}
    if cs.kappa == params.u and cs.ell == params.m:
        try:
            length, k1, W1p = predict_lemma8(q, r, params.m, params.e)
        except PreconditionViolated as exc:
            lem["reason"] = str(exc)
        else:
            lem["applicable"] = True
            W2 = weight_distribution(cc.exp2(cs), budget)
            lem["matches"] = W1p == W2.substitute(r) and length == cc.exp1(cs).n
    else:
        lem["reason"] = f"kappa={cs.kappa}, l={cs.ell} differ from u={params.u}, m={params.m}"
    rep["lemma8"] = lem
    rep["ok"] = all(match.values()) and lem.get("matches", True)
    return rep


def alpha_independence(q, n, r, field_poly=None, limit=1 << 12):
    """Enumerator of C for every primitive element of the extension (small fields only)."""
    base = cc.spec_create(q, n, r, field_poly)
    ext = base.ext
    if ext.order > limit:
        raise BudgetExceeded(f"extension of order {ext.order} exceeds {limit}")
    seen = set()
    ref = None
    ok = True
    count = 0
    for g in range(2, ext.order):
        if not ext.is_primitive_element(g):
            continue
        cs = cc.spec_create(q, n, r, ext.poly, generator=g)
        W = weight_distribution(cc.build_C(cs))
        key = tuple(sorted(W.counts.items()))
        seen.add(key)
        ref = ref or key
        ok = ok and key == ref
        count += 1
    return {"generators": count, "distinct_enumerators": len(seen), "ok": ok}


def thm9_sweep(qs=(2, 3, 4, 5, 7, 8, 9, 11, 13, 16), max_n=200, max_field=1 << 20):
    """Valid Thm9Params with n <= max_n whose extension field has order <= max_field."""
    for q in qs:
        p, s = gf.prime_power(q)
        for m in range(2, 13):
            if q**m > max_field * q:
                break
            Qm = (q**m - 1) // (q - 1)
            for e in range(1, Qm + 1):
                if Qm % e or (2 * e - 1) ** 2 > q**m:
                    continue
                for u in range(1, q):
                    if (q - 1) % u or gcd(e, u) != 1:
                        continue
                    n = u * Qm // e
                    if n > max_n:
                        continue
                    for r in range(1, q):
                        if (q - 1) % r or gcd((q - 1) // r, n) != 1:
                            continue
                        prm = Thm9Params(p, s, m, e, u, r)
                        try:
                            prm.case()
                        except PreconditionViolated:
                            continue
                        if q ** (cosets.kappa(q, n, r) * cosets.mult_order(q, n)) > max_field:
                            continue
                        yield prm

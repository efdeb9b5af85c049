"""Finite fields GF(p^s) with elements encoded as integers.

An element is stored as the integer whose base-p digits (little endian) are
its coefficients in the polynomial basis 1, x, ..., x^(s-1).  Index 0 is zero
and index 1 is one.  Scalar arithmetic works for any field size; log/antilog
tables are built on request for fields of order at most 2**26.

Large extension fields are mostly handled through GF(p)-linear maps on digit
vectors (multiplication by a constant, Frobenius, trace), which is what the
code constructions need.
"""

from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from . import _kernels
from .errors import (
    DivisionByZero,
    IncompatibleSubfield,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
    ZeroElement,
)

TABLE_LIMIT = 1 << 26
FIELD_LIMIT = 1 << 40


def factor_int(n):
    """Prime factorisation by trial division, as {prime: exponent}."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q):
    """Return (p, s) with q = p**s, or raise."""
    f = factor_int(q) if q > 1 else {}
    if len(f) != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    ((p, s),) = f.items()
    return p, s


# ---------------------------------------------------------------------------
# polynomials over GF(p) as ascending coefficient tuples


def _prem(a, b, p):
    """Remainder of a by monic-or-not b over GF(p); both ascending lists."""
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            off = k - db
            for t in range(db + 1):
                a[off + t] = (a[off + t] - c * b[t]) % p
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return r


def _poly_to_int2(poly):
    return sum(1 << i for i, c in enumerate(poly) if c)


def _rem2(a, b):
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


TRIAL_DIVISION_LIMIT = 200_000


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _prem(a, b, p)
    return a


def is_irreducible_rabin(poly, p):
    """Rabin's test: x^(p^s) = x mod f and gcd(x^(p^(s/t)) - x, f) = 1 for primes t | s."""
    s = len(poly) - 1
    if s <= 0:
        return False
    if s == 1:
        return True
    ring = FieldCtx(p, s, poly, generator=1)

    def frob_x(k):
        y = p
        for _ in range(k):
            y = ring.pow_ring(y, p)
        return y

    if frob_x(s) != p:
        return False
    for t in factor_int(s):
        d = ring.digits(ring.sub(frob_x(s // t), p))
        if len(_pgcd(poly, d, p)) > 1:
            return False
    return True


def is_irreducible_gfp(poly, p):
    """Irreducibility over GF(p).

    Trial division by every monic polynomial of degree <= deg/2 when that is
    at most TRIAL_DIVISION_LIMIT divisions, Rabin's test otherwise.
    """
    s = len(poly) - 1
    if sum(p**d for d in range(1, s // 2 + 1)) > TRIAL_DIVISION_LIMIT:
        return is_irreducible_rabin(poly, p)
    if s <= 0:
        return False
    if s == 1:
        return True
    if p == 2:
        f = _poly_to_int2(poly)
        for d in range(1, s // 2 + 1):
            for low in range(1 << d):
                if _rem2(f, (1 << d) | low) == 0:
                    return False
        return True
    for d in range(1, s // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _prem(poly, list(low) + [1], p):
                return False
    return True


def parse_poly(text):
    """'1,0,1' -> (1, 0, 1): ascending comma-separated coefficients."""
    return tuple(int(t) for t in str(text).replace(" ", "").split(",") if t != "")


def format_poly(coeffs):
    return ",".join(str(int(c)) for c in coeffs)


# ---------------------------------------------------------------------------


class FieldCtx:
    """GF(p^s) with a fixed monic defining polynomial and primitive element.

    Instances are immutable after construction apart from lazily built caches.
    """

    def __init__(self, p, s, poly, generator=None):
        self.p = p
        self.s = s
        self.poly = tuple(int(c) % p for c in poly)
        self.order = p**s
        self._mod2 = _poly_to_int2(self.poly) if p == 2 else None
        self._log = None
        self._exp = None
        self._cache = {}
        if generator is None:
            generator = self._find_generator()
        self.generator = generator

    def __repr__(self):
        return f"GF({self.p}^{self.s}; poly={format_poly(self.poly)}, gen={self.generator})"

    @property
    def q(self):
        return self.order

    # -- encoding ----------------------------------------------------------

    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.s):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds):
        a = 0
        for d in reversed(list(ds)):
            a = a * self.p + int(d) % self.p
        return a

    def digit_array(self, arr):
        arr = np.asarray(arr, dtype=np.int64)
        w = self.p ** np.arange(self.s, dtype=np.int64)
        return (arr[..., None] // w) % self.p

    def encode_array(self, digits):
        w = self.p ** np.arange(self.s, dtype=np.int64)
        return (np.asarray(digits, dtype=np.int64) % self.p) @ w

    def check(self, a):
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        if self.p == 2:
            return a
        if self.s == 1:
            return -a % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.s == 1:
            return a * b % self.p
        if self._exp is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])
        if self.p == 2:
            return self._mul2(a, b)
        return self._mulp(a, b)

    def _mul2(self, a, b):
        s, mod = self.s, self._mod2
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> s) & 1:
                a ^= mod
        return r

    def _mulp(self, a, b):
        p, s, poly = self.p, self.s, self.poly
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k] % p
            if c:
                off = k - s
                for t in range(s):
                    prod[off + t] -= c * poly[t]
        return self.from_digits(prod[:s])

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero has no inverse")
            return 1 if e == 0 else 0
        e %= self.order - 1
        if self._exp is not None:
            return int(self._exp[self._log[a] * e % (self.order - 1)])
        if self.s == 1:
            return pow(a, e, self.p)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def pow_ring(self, a, e):
        """a^e by square and multiply, no reduction of e (valid in any quotient ring)."""
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def element_order(self, x):
        """Least t >= 1 with x^t = 1."""
        if x == 0:
            raise ZeroElement("zero has no multiplicative order")
        t = self.order - 1
        for f in self._group_factors():
            while t % f == 0 and self.pow(x, t // f) == 1:
                t //= f
        return t

    def _group_factors(self):
        if "gf" not in self._cache:
            self._cache["gf"] = sorted(factor_int(self.order - 1))
        return self._cache["gf"]

    def is_primitive_element(self, x):
        if x == 0:
            return False
        n = self.order - 1
        return all(self.pow(x, n // f) != 1 for f in self._group_factors())

    def _find_generator(self):
        if self.order == 2:
            return 1
        for a in range(2, self.order):
            if self.is_primitive_element(a):
                return a
        raise ReduciblePolynomial("no primitive element; defining polynomial is not irreducible")

    # -- tables ------------------------------------------------------------

    def build_tables(self):
        """Build log/antilog tables (order <= 2**26)."""
        if self._exp is not None:
            return
        if self.order > TABLE_LIMIT:
            raise ValueError(f"log tables are limited to fields of order <= 2^26, got {self.order}")
        if _kernels.USE_NUMBA and self.s > 1 and self.generator == self.p:
            exp = _kernels.antilog_x_numba(self.p, self.s, self.poly)
        else:
            exp = _kernels.antilog_numpy(
                self.p, self.s, lambda L: self.mul_matrix(self.pow(self.generator, L))
            )
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(self.order - 1, dtype=np.int64)
        self._exp = exp
        self._log = log

    @property
    def antilog(self):
        self.build_tables()
        return self._exp

    @property
    def log_table(self):
        self.build_tables()
        return self._log

    def log(self, x):
        if x == 0:
            raise ZeroElement("log of zero")
        return int(self.log_table[x])

    def format_elem(self, x):
        """'0' for zero, otherwise 'a^k' relative to the generator (small fields)."""
        if x == 0:
            return "0"
        if self.order <= TABLE_LIMIT:
            return f"a^{self.log(x)}"
        return str(x)

    def small_tables(self):
        """Dense add/mul/neg/inv tables; only for small fields (code alphabets)."""
        if "small" not in self._cache:
            if self.order > 1 << 12:
                raise ValueError("dense tables only for order <= 4096")
            q = self.order
            els = np.arange(q, dtype=np.int64)
            if self.p == 2:
                add = els[:, None] ^ els[None, :]
            else:
                d = self.digit_array(els)
                add = self.encode_array(d[:, None, :] + d[None, :, :])
            self.build_tables()
            mul = np.zeros((q, q), dtype=np.int64)
            lg = self._log[1:]
            mul[1:, 1:] = self._exp[(lg[:, None] + lg[None, :]) % (q - 1)]
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = self._exp[(-lg) % (q - 1)]
            self._cache["small"] = (add, mul, neg, inv)
        return self._cache["small"]

    # -- linear maps over GF(p) -------------------------------------------

    def mul_matrix(self, a):
        """Matrix M over GF(p) with digits(y*a) = digits(y) @ M (mod p)."""
        rows = [self.digits(self.mul(self.p**t, a)) for t in range(self.s)]
        return np.array(rows, dtype=np.int64).reshape(self.s, self.s)

    def frobenius_matrix(self, k=1):
        """Matrix of y -> y^(p^k)."""
        key = ("frob", k % self.s)
        if key not in self._cache:
            e = self.p ** (k % self.s)
            rows = [self.digits(self.pow(self.p**t, e)) for t in range(self.s)]
            self._cache[key] = np.array(rows, dtype=np.int64).reshape(self.s, self.s)
        return self._cache[key]

    def trace_matrix(self, sub, top=None):
        """Matrix of the trace from the degree-``top`` subfield to the degree-``sub`` one.

        Degrees are over GF(p).  The matrix acts on all digit vectors but only
        means a trace on elements of the degree-``top`` subfield.
        """
        top = self.s if top is None else top
        if top % sub or self.s % top:
            raise IncompatibleSubfield(f"degree {sub} does not divide {top} (field degree {self.s})")
        key = ("trace", sub, top)
        if key not in self._cache:
            F = self.frobenius_matrix(sub)
            acc = np.eye(self.s, dtype=np.int64)
            T = acc.copy()
            for _ in range(top // sub - 1):
                acc = acc @ F % self.p
                T = (T + acc) % self.p
            self._cache[key] = T
        return self._cache[key]

    def trace(self, x, sub, top=None):
        """x + x^Q + ... + x^(Q^(t-1)) with Q = p^sub and t = top/sub."""
        top = self.s if top is None else top
        if top % sub or self.s % top:
            raise IncompatibleSubfield(f"degree {sub} does not divide {top} (field degree {self.s})")
        Q = self.p**sub
        acc, y = 0, x
        for _ in range(top // sub):
            acc = self.add(acc, y)
            y = self.pow(y, Q)
        return acc

    def in_subfield(self, x, d):
        return self.pow(x, self.p**d) == x

    def subfield(self, d):
        if self.s % d:
            raise IncompatibleSubfield(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.s})")
        key = ("sub", d)
        if key not in self._cache:
            self._cache[key] = Subfield(self, d)
        return self._cache[key]


class Subfield:
    """The degree-d subfield of ``ext`` together with a standalone copy of it.

    ``field`` is a FieldCtx for GF(p^d) whose defining polynomial is the
    minimal polynomial over GF(p) of delta = g^((p^s-1)/(p^d-1)), g the
    generator of ``ext``; the isomorphism sends x to delta.
    """

    def __init__(self, ext, d):
        self.ext = ext
        self.degree = d
        p = ext.p
        if d == ext.s:
            self.field = ext
            self._to_big = np.arange(ext.order, dtype=np.int64)
        elif d == 1:
            self.field = prime_field(p)
            self._to_big = np.arange(p, dtype=np.int64)
        else:
            delta = ext.pow(ext.generator, (ext.order - 1) // (p**d - 1))
            coeffs = [1]
            conj = delta
            for _ in range(d):
                # multiply running product by (X - conj)
                nxt = [0] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i + 1] = ext.add(nxt[i + 1], c)
                    nxt[i] = ext.sub(nxt[i], ext.mul(c, conj))
                coeffs = nxt
                conj = ext.pow(conj, p)
            if any(c >= p for c in coeffs):
                raise IncompatibleSubfield("minimal polynomial not over GF(p)")
            self.field = FieldCtx(p, d, coeffs, generator=p)
            powers = [1]
            for _ in range(d - 1):
                powers.append(ext.mul(powers[-1], delta))
            pd = ext.digit_array(np.array(powers, dtype=np.int64))
            small_digits = self.field.digit_array(np.arange(self.field.order))
            self._to_big = ext.encode_array(small_digits @ pd)
        self._order = np.argsort(self._to_big)
        self._sorted = self._to_big[self._order]

    def to_big(self, a):
        return int(self._to_big[a])

    def to_small(self, x):
        return int(self.to_small_array(np.array([x]))[0])

    def to_small_array(self, arr):
        arr = np.asarray(arr, dtype=np.int64)
        pos = np.searchsorted(self._sorted, arr)
        pos = np.minimum(pos, self._sorted.size - 1)
        if not np.array_equal(self._sorted[pos], arr):
            raise IncompatibleSubfield("element outside the subfield")
        return self._order[pos]


# ---------------------------------------------------------------------------


def primitive_root(p):
    fs = factor_int(p - 1)
    for g in range(1, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs) or p == 2:
            return g
    raise NonPrimeCharacteristic(p)


@lru_cache(maxsize=None)
def prime_field(p):
    return field_create(p, 1)


def _is_primitive_poly(poly, p):
    # x of order p^s - 1 modulo f forces GF(p)[x]/(f) to be a field
    ctx = FieldCtx(p, len(poly) - 1, poly, generator=1)
    if ctx.pow_ring(p, ctx.order - 1) != 1:
        return False
    return ctx.is_primitive_element(p)


def default_poly(p, s):
    """Lexicographically smallest monic primitive polynomial of degree s.

    Candidates are ordered by their coefficient tuples (c0, c1, ..., c_{s-1}),
    compared from the constant term upward.
    """
    if s == 1:
        return ((-primitive_root(p)) % p, 1)
    # the norm of a primitive x, (-1)^s c0, must generate GF(p)*
    fs = factor_int(p - 1)
    ok0 = {c for c in range(1, p)
           if all(pow((-1) ** s * c % p, (p - 1) // f, p) != 1 for f in fs)}
    for low in product(range(p), repeat=s):
        if low[0] not in ok0:
            continue
        poly = low + (1,)
        if _is_primitive_poly(poly, p):
            return poly
    raise AssertionError("unreachable: primitive polynomials always exist")


@lru_cache(maxsize=64)
def _default_field(p, s):
    poly = default_poly(p, s)
    gen = primitive_root(p) if s == 1 else p
    return FieldCtx(p, s, poly, generator=gen)


def field_create(p, s, defining_poly=None, generator=None):
    """Construct GF(p^s).

    Without ``defining_poly`` the smallest monic primitive polynomial is used
    and the generator is x.  A supplied polynomial must be monic of degree s
    and irreducible; the generator is then the smallest primitive element
    (x itself when the polynomial is primitive).
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be positive")
    if p**s > FIELD_LIMIT:
        raise ValueError(f"fields of order > 2^40 are not supported (p^s = {p**s})")
    if defining_poly is None:
        if generator is None:
            return _default_field(p, s)
        base = _default_field(p, s)
        if not base.is_primitive_element(generator):
            raise ValueError(f"{generator} is not a primitive element")
        return FieldCtx(p, s, base.poly, generator=generator)
    poly = tuple(int(c) for c in defining_poly)
    if len(poly) != s + 1 or poly[-1] != 1 or any(not 0 <= c < p for c in poly):
        raise ValueError(f"defining polynomial must be monic of degree {s} with coefficients in [0, {p})")
    if not is_irreducible_gfp(poly, p):
        raise ReduciblePolynomial(f"{format_poly(poly)} is reducible over GF({p})")
    ctx = FieldCtx(p, s, poly, generator=generator)
    if generator is not None and not ctx.is_primitive_element(generator):
        raise ValueError(f"{generator} is not a primitive element")
    return ctx


def gcd_all(*xs):
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g

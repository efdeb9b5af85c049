"""Dense polynomials over a FieldCtx, minimal polynomials, and x^n - lambda."""

import numpy as np

from . import cosets
from .errors import DivisionByZero, FieldMismatch, WrongExtensionDegree, ZeroConstantTerm
from .gf import format_poly


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Polynomial with ascending coefficients (field element indices)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def monomial(cls, field, deg, c=1):
        return cls(field, [0] * deg + [c])

    @classmethod
    def x_n_minus(cls, field, n, lam):
        return cls(field, [field.neg(lam)] + [0] * (n - 1) + [1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{format_poly(self.coeffs)}] over GF({self.field.order}))"

    def __str__(self):
        return format_poly(self.coeffs) if self.coeffs else "0"

    def _same(self, other):
        if self.field is not other.field:
            raise FieldMismatch("polynomials over different fields")

    def _tables(self):
        F = self.field
        if F.order <= 4096:
            return F.small_tables()
        return None

    def __add__(self, other):
        self._same(other)
        F = self.field
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = F.add(a[i], c)
        return Poly(F, a)

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Poly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        self._same(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, [])
        tabs = self._tables()
        if tabs is not None:
            add, mul = tabs[0], tabs[1]
            b = np.array(other.coeffs, dtype=np.int64)
            out = np.zeros(len(self.coeffs) + len(b) - 1, dtype=np.int64)
            for i, a in enumerate(self.coeffs):
                if a:
                    seg = out[i : i + len(b)]
                    out[i : i + len(b)] = add[seg, mul[a, b]]
            return Poly(F, out.tolist())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def __pow__(self, e):
        out = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def divmod(self, other):
        self._same(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv_lead = F.inv(b[-1])
        quo = [0] * max(len(a) - db, 0)
        tabs = self._tables()
        if tabs is not None:
            add, mul, neg = tabs[0], tabs[1], tabs[2]
            a = np.array(a, dtype=np.int64)
            nb = neg[np.array(b, dtype=np.int64)]
            for k in range(len(a) - 1, db - 1, -1):
                c = int(mul[a[k], inv_lead])
                if c:
                    quo[k - db] = c
                    off = k - db
                    a[off : k + 1] = add[a[off : k + 1], mul[c, nb]]
            return Poly(F, quo), Poly(F, a[:db].tolist())
        for k in range(len(a) - 1, db - 1, -1):
            c = F.mul(a[k], inv_lead)
            if c:
                quo[k - db] = c
                off = k - db
                for t in range(db + 1):
                    a[off + t] = F.sub(a[off + t], F.mul(c, b[t]))
        return Poly(F, quo), Poly(F, a[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        """Horner evaluation at a field element."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def reciprocal(self):
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        return Poly(self.field, self.coeffs[::-1]).monic()


def poly_from_roots(field, roots):
    """prod (x - r) over ``field``."""
    cs = [1]
    for root in roots:
        nxt = [0] * (len(cs) + 1)
        for i, c in enumerate(cs):
            nxt[i + 1] = field.add(nxt[i + 1], c)
            nxt[i] = field.sub(nxt[i], field.mul(c, root))
        cs = nxt
    return Poly(field, cs)


def conjugates(ext, x, q):
    out = [x]
    y = ext.pow(x, q)
    while y != x:
        out.append(y)
        y = ext.pow(y, q)
    return out


def minimal_polynomial(ext, x, sub):
    """Minimal polynomial of x over the subfield ``sub`` (a gf.Subfield of ext)."""
    q = sub.field.order
    big = poly_from_roots(ext, conjugates(ext, x, q))
    return Poly(sub.field, sub.to_small_array(np.array(big.coeffs, dtype=np.int64)).tolist())


def factor_xn_minus_lambda(q, n, r, ext, sub=None):
    """[(leader, M_{beta^leader})] over GF(q), ordered by leader.

    ``ext`` must have degree ord_{rn}(q) over GF(q); beta and lambda come
    from its generator.
    """
    deg = cosets.mult_order(q, r * n)
    cosets.kappa(q, n, r)
    p = ext.p
    s = 0
    while p**s < q:
        s += 1
    if ext.s != s * deg:
        raise WrongExtensionDegree(f"extension has degree {ext.s // s if ext.s % s == 0 else ext.s / s} over GF({q}), need {deg}")
    sub = sub or ext.subfield(s)
    beta = ext.pow(ext.generator, (ext.order - 1) // (r * n))
    out = []
    for c in cosets.gamma1(q, n, r):
        big = poly_from_roots(ext, [ext.pow(beta, j) for j in c.members])
        out.append((c.leader, Poly(sub.field, sub.to_small_array(np.array(big.coeffs)).tolist())))
    return out

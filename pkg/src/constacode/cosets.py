"""Cyclotomic cosets and the integer parameters l, kappa, e, L."""

from dataclasses import dataclass
from math import gcd

from .errors import NotCoprime, RNotDividingQMinus1


def _coprime(q, n):
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) = {gcd(q, n)} != 1")


def _check_r(q, r):
    if r < 1 or (q - 1) % r:
        raise RNotDividingQMinus1(f"r = {r} does not divide q - 1 = {q - 1}")


def mult_order(q, n):
    """Least l >= 1 with q^l = 1 (mod n)."""
    _coprime(q, n)
    if n == 1:
        return 1
    x, l = q % n, 1
    while x != 1:
        x = x * q % n
        l += 1
    return l


def kappa(q, n, r):
    _coprime(q, n)
    _check_r(q, r)
    ell = mult_order(q, n)
    k = r // gcd((q**ell - 1) // n, r)
    # the order over rn is k*l; a mismatch would mean a bad input slipped through
    assert mult_order(q, r * n) == k * ell, (q, n, r)
    return k


@dataclass(frozen=True)
class CyclotomicCoset:
    modulus: int
    representative: int
    members: tuple

    @property
    def leader(self):
        return self.members[0]

    @property
    def size(self):
        return len(self.members)

    def __contains__(self, x):
        return x % self.modulus in self.members


def cyclotomic_coset(q, N, i):
    _coprime(q, N)
    if not 0 <= i < N:
        raise ValueError(f"{i} is not a residue mod {N}")
    seen = []
    x = i
    while True:
        seen.append(x)
        x = x * q % N
        if x == i:
            break
    return CyclotomicCoset(N, i, tuple(sorted(seen)))


def coset_partition(q, N):
    """All q-cyclotomic cosets mod N, ordered by leader."""
    _coprime(q, N)
    done = bytearray(N)
    out = []
    for i in range(N):
        if not done[i]:
            c = cyclotomic_coset(q, N, i)
            for x in c.members:
                done[x] = 1
            out.append(c)
    return out


def gamma1(q, n, r):
    """Cosets mod rn whose leaders are congruent to 1 mod r."""
    _coprime(q, r * n)
    _check_r(q, r)
    # q = 1 mod r, so cosets never mix residue classes mod r
    return [c for c in coset_partition(q, r * n) if c.leader % r == 1 % r]


def param_e(q, n, r=1):
    _coprime(q, n)
    _check_r(q, r)
    ell = mult_order(q, n)
    Q = q**ell - 1
    return Q // gcd(Q, (q - 1) * n)


def param_L(q, n, r):
    k = kappa(q, n, r)
    ell = mult_order(q, n)
    Q = q ** (k * ell) - 1
    return gcd(Q // (q - 1), Q // (n * r))


@dataclass(frozen=True)
class ParamBundle:
    q: int
    n: int
    r: int
    ell: int
    kappa: int
    e: int
    L: int

    @property
    def degree(self):
        return self.kappa * self.ell

    def as_dict(self):
        return {"q": self.q, "n": self.n, "r": self.r, "ell": self.ell,
                "kappa": self.kappa, "e": self.e, "L": self.L}


def params(q, n, r):
    return ParamBundle(q, n, r, mult_order(q, n), kappa(q, n, r), param_e(q, n, r), param_L(q, n, r))

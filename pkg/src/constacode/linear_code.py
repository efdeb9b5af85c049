"""Linear codes over small fields: enumeration, duals, MacWilliams, bounds."""

from itertools import combinations, product
from math import comb

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, InconsistentInput, OddDistance

DEFAULT_BUDGET = 1 << 28
SET_COMPARE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# row reduction over GF(q)


def rref(field, M):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    add, mul, neg, inv = field.small_tables()
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2 or M.size == 0:
        return M.reshape(0, M.shape[-1] if M.ndim == 2 else 0), []
    rows, cols = M.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = mul[inv[M[r, c]], M[r]]
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            f = neg[M[others, c]]
            M[others] = add[M[others], mul[f[:, None], M[r][None, :]]]
        piv.append(c)
        r += 1
    return M[:r], piv


def rank(field, M):
    return len(rref(field, M)[1])


def null_space(field, M, n=None):
    """Basis of {x : M x^T = 0} as rows."""
    add, mul, neg, inv = field.small_tables()
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1] if n is None else n
    R, piv = rref(field, M.reshape(-1, n))
    free = [c for c in range(n) if c not in set(piv)]
    H = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        H[t, f] = 1
        for i, pc in enumerate(piv):
            H[t, pc] = neg[R[i, f]]
    return H


# ---------------------------------------------------------------------------


class WeightEnumerator:
    """Exact weight distribution {w: A_w} of a length-n code."""

    def __init__(self, n, counts):
        self.n = n
        self.counts = {int(w): int(c) for w, c in dict(counts).items() if c}

    @classmethod
    def from_histogram(cls, hist):
        return cls(len(hist) - 1, {w: int(c) for w, c in enumerate(hist) if c})

    @classmethod
    def from_terms(cls, n, terms):
        """Sum of (count, weight) terms; weights may repeat."""
        acc = {}
        for c, w in terms:
            acc[w] = acc.get(w, 0) + c
        return cls(n, acc)

    def __eq__(self, other):
        return isinstance(other, WeightEnumerator) and self.n == other.n and self.counts == other.counts

    def __repr__(self):
        body = " + ".join(f"{c}z^{w}" if w else str(c) for w, c in sorted(self.counts.items()))
        return f"W[n={self.n}]({body})"

    def __getitem__(self, w):
        return self.counts.get(w, 0)

    def total(self):
        return sum(self.counts.values())

    def weights(self):
        """Nonzero weights in ascending order."""
        return sorted(w for w in self.counts if w)

    def min_weight(self):
        ws = self.weights()
        return ws[0] if ws else None

    def __mul__(self, other):
        acc = {}
        for w1, c1 in self.counts.items():
            for w2, c2 in other.counts.items():
                acc[w1 + w2] = acc.get(w1 + w2, 0) + c1 * c2
        return WeightEnumerator(self.n + other.n, acc)

    def __pow__(self, k):
        out = WeightEnumerator(0, {0: 1})
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, r):
        """W(z) -> W(z^r), as the enumerator of a length r*n code."""
        return WeightEnumerator(self.n * r, {w * r: c for w, c in self.counts.items()})

    def to_list(self):
        return [[w, str(c)] for w, c in sorted(self.counts.items())]

    @classmethod
    def from_list(cls, n, pairs):
        return cls(n, {int(w): int(c) for w, c in pairs})


class LinearCode:
    """A k-dimensional subspace of GF(q)^n given by a full-rank generator matrix."""

    def __init__(self, field, G, n=None, name=None):
        self.field = field
        G = np.asarray(G, dtype=np.int64)
        if G.size == 0:
            n = G.shape[-1] if n is None else n
            G = G.reshape(0, n)
        self.G = G
        self.name = name
        R, piv = rref(field, G)
        if len(piv) != G.shape[0]:
            raise ValueError(f"generator rows are dependent (rank {len(piv)} < {G.shape[0]})")
        self._rref = R
        self._pivots = piv
        self._we = None
        self.parity_check_matrix = None

    @classmethod
    def from_spanning(cls, field, rows, n=None, name=None):
        rows = np.asarray(rows, dtype=np.int64)
        if n is None:
            n = rows.shape[1]
        R, _ = rref(field, rows.reshape(-1, n))
        return cls(field, R, n=n, name=name)

    @property
    def q(self):
        return self.field.order

    @property
    def n(self):
        return self.G.shape[1]

    @property
    def k(self):
        return self.G.shape[0]

    @property
    def rref(self):
        return self._rref

    def __repr__(self):
        tag = f"{self.name} " if self.name else ""
        return f"<{tag}[{self.n},{self.k}] code over GF({self.q})>"

    def size(self):
        return self.q**self.k

    def contains(self, v):
        """Membership by reduction against the RREF basis."""
        add, mul, neg, _ = self.field.small_tables()
        v = np.array(v, dtype=np.int64, copy=True)
        for row, c in zip(self._rref, self._pivots):
            if v[c]:
                v = add[v, mul[neg[v[c]], row]]
        return not v.any()

    def same_space(self, other):
        return (self.n == other.n and self.k == other.k
                and np.array_equal(self._rref, other._rref))

    def codewords(self, budget=SET_COMPARE_LIMIT):
        if self.size() > budget:
            raise BudgetExceeded(f"{self.q}^{self.k} codewords exceed budget {budget}")
        add, mul, _, _ = self.field.small_tables()
        return _kernels.all_codewords(_prime_rows(self), add, mul, self.field.p)


def _prime_rows(code):
    """Rows spanning the code over the prime field: b*g for basis b of GF(q)/GF(p)."""
    F = code.field
    _, mul, _, _ = F.small_tables()
    basis = [F.p**t for t in range(F.s)]
    if code.k == 0:
        return np.zeros((0, code.n), dtype=np.int64)
    return np.concatenate([mul[b, code.G] for b in basis], axis=0)


def weight_distribution(code, budget=DEFAULT_BUDGET):
    if code._we is not None:
        return code._we
    if code.size() > budget:
        raise BudgetExceeded(
            f"enumerating {code.q}^{code.k} codewords exceeds the budget of {budget}")
    add, mul, _, _ = code.field.small_tables()
    hist = _kernels.weight_histogram(_prime_rows(code), add, mul, code.field.p)
    we = WeightEnumerator.from_histogram(hist)
    if we[0] != 1 or we.total() != code.size():
        raise AssertionError("enumeration produced an inconsistent distribution")
    code._we = we
    return we


def min_distance(code, budget=DEFAULT_BUDGET):
    """Least nonzero weight, or None for the zero code."""
    return weight_distribution(code, budget).min_weight()


def is_constant_weight(code, budget=DEFAULT_BUDGET):
    ws = weight_distribution(code, budget).weights()
    return ws[0] if len(ws) == 1 else None


def dual(code):
    H = null_space(code.field, code.G, code.n)
    d = LinearCode(code.field, H, n=code.n, name=f"{code.name}^perp" if code.name else None)
    d.parity_check_matrix = code.G
    return d


def parity_check(code):
    if code.parity_check_matrix is not None:
        return code.parity_check_matrix
    return null_space(code.field, code.G, code.n)


# ---------------------------------------------------------------------------
# MacWilliams and moments


def krawtchouk_row(n, q, i):
    """Coefficients of (1+(q-1)z)^(n-i) (1-z)^i, i.e. K_j(i) for j = 0..n."""
    out = [0] * (n + 1)
    out[0] = 1
    if n == 0:
        return out
    out[1] = (n - i) * (q - 1) - i
    for j in range(1, n):
        num = ((n - j) * (q - 1) + j - q * i) * out[j] - (q - 1) * (n - j + 1) * out[j - 1]
        out[j + 1] = num // (j + 1)
    return out


def macwilliams(we, n, k, q):
    """Weight enumerator of the dual of an [n, k] code over GF(q)."""
    if we.total() != q**k or we[0] != 1:
        raise InconsistentInput(f"enumerator sums to {we.total()}, expected {q}^{k}")
    acc = [0] * (n + 1)
    for i, a in we.counts.items():
        if i > n:
            raise InconsistentInput(f"weight {i} exceeds length {n}")
        row = krawtchouk_row(n, q, i)
        for j in range(n + 1):
            acc[j] += a * row[j]
    scale = q**k
    out = {}
    for j, v in enumerate(acc):
        if v % scale or v < 0:
            raise InconsistentInput("transform is not a nonnegative integer distribution")
        if v:
            out[j] = v // scale
    res = WeightEnumerator(n, out)
    if res.total() != q ** (n - k) or res[0] != 1:
        raise InconsistentInput("transformed enumerator has the wrong total")
    return res


def pless_check(we, dual_first3, n, k, q):
    """The first four power moments; returns {'m0'..'m3': bool}."""
    B1, B2, B3 = dual_first3
    S = [sum(w**t * c for w, c in we.counts.items()) for t in range(4)]
    N = (q - 1) * n
    lhs_rhs = {
        "m0": (S[0] * 1, q**k),
        "m1": (S[1] * q, q**k * (N - B1)),
        "m2": (S[2] * q**2, q**k * (N * N + N - (2 * N - q + 2) * B1 + 2 * B2)),
        "m3": (
            S[3] * q**3,
            q**k * (
                N * (N * N + 3 * N - q + 2)
                - (3 * N * N - 3 * (q - 3) * N + q * q - 6 * q + 6) * B1
                + 6 * (N - q + 2) * B2
                - 6 * B3
            ),
        ),
    }
    return {key: a == b for key, (a, b) in lhs_rhs.items()}


# ---------------------------------------------------------------------------
# bounds


def sphere_packing_ok(n, k, d, q):
    t = (d - 1) // 2
    return sum(comb(n, i) * (q - 1) ** i for i in range(t + 1)) <= q ** (n - k)


def sphere_packing_even_ok(n, k, d_even, q):
    if d_even % 2:
        raise OddDistance(f"distance {d_even} is odd")
    t = (d_even - 2) // 2
    return sum(comb(n - 1, i) * (q - 1) ** i for i in range(t + 1)) <= q ** (n - 1 - k)


def griesmer_sum(k, d, q):
    return sum(-(-d // q**i) for i in range(k))


def griesmer_ok(n, k, d, q):
    return n >= griesmer_sum(k, d, q)


def no_code_exists(n, k, d, q):
    """(True, reason) when [n, k, d] is ruled out by the sphere packing bounds."""
    if not sphere_packing_ok(n, k, d, q):
        t = (d - 1) // 2
        lhs = sum(comb(n, i) * (q - 1) ** i for i in range(t + 1))
        return True, f"sphere packing: sum_(i<={t}) C({n},i)({q}-1)^i = {lhs} > {q}^{n - k}"
    if d % 2 == 0 and not sphere_packing_even_ok(n, k, d, q):
        t = (d - 2) // 2
        lhs = sum(comb(n - 1, i) * (q - 1) ** i for i in range(t + 1))
        return True, f"even-distance bound: sum_(i<={t}) C({n - 1},i)({q}-1)^i = {lhs} > {q}^{n - 1 - k}"
    return False, ""


# ---------------------------------------------------------------------------
# small dependencies among columns of a parity-check matrix


def _normalize(vecs, mul, inv):
    nzmask = vecs != 0
    has = nzmask.any(axis=1)
    first = np.argmax(nzmask, axis=1)
    lead = vecs[np.arange(vecs.shape[0]), first]
    lead = np.where(has, lead, 1)
    return mul[inv[lead][:, None], vecs], has


class _Keyer:
    def __init__(self, q, k):
        self.int_keys = k * np.log2(max(q, 2)) < 62
        self.w = q ** np.arange(k, dtype=np.int64) if self.int_keys else None

    def __call__(self, vecs):
        if self.int_keys:
            return vecs @ self.w
        v = np.ascontiguousarray(vecs.astype(np.int16))
        return v.view(np.dtype((np.void, v.dtype.itemsize * v.shape[1]))).ravel()


def _combo_keys(cols, size, field, keyer):
    """Projective keys of sum(c_i * col_i) over index sets of ``size`` with c_first = 1.

    Returns (keys, zero_found).  Sums equal to zero are reported via the flag.
    """
    add, mul, neg, inv = field.small_tables()
    n, k = cols.shape
    q = field.order
    nz = np.arange(1, q)
    chunks = []
    zero = False
    for head in combinations(range(n), size - 1):
        if size > 1 and head[-1] >= n - 1:
            continue
        start = head[-1] + 1 if head else 0
        tail = cols[start:]
        if tail.shape[0] == 0:
            continue
        for coeffs in product(range(1, q), repeat=max(size - 2, 0)):
            base = np.zeros(k, dtype=np.int64)
            if head:
                base = cols[head[0]].copy()
                for c, idx in zip(coeffs, head[1:]):
                    base = add[base, mul[c, cols[idx]]]
            if size == 1:
                sums = tail
            else:
                scaled = mul[nz[:, None, None], tail[None, :, :]].reshape(-1, k)
                sums = add[base[None, :], scaled]
            normed, has = _normalize(sums, mul, inv)
            if not has.all():
                zero = True
            chunks.append(keyer(normed[has]))
        if size == 1:
            break
    if not chunks:
        return np.zeros(0, dtype=np.int64), zero
    return np.concatenate(chunks), zero


def low_weight_search(code, w_max, parity=None):
    """Minimum distance of ``code`` if it is at most ``w_max``, else None.

    Works on columns of a parity-check matrix (by default the stored one, e.g.
    the primal generator for a dual code): d is the least number of linearly
    dependent columns.  Stage w pairs projective sums of w//2 and w - w//2
    columns; a collision proves a dependency of size exactly w because smaller
    ones were excluded at earlier stages.
    """
    H = parity if parity is not None else parity_check(code)
    field = code.field
    H = np.asarray(H, dtype=np.int64)
    n = code.n
    if H.shape[0] == 0:
        return 1 if n else None
    cols = np.ascontiguousarray(H.T)
    if (~cols.any(axis=1)).any():
        return 1
    keyer = _Keyer(field.order, cols.shape[1])
    cache = {}

    def keys(size):
        if size not in cache:
            cache[size] = _combo_keys(cols, size, field, keyer)
        return cache[size]

    for w in range(2, w_max + 1):
        if w > n:
            return None
        a, b = w // 2, w - w // 2
        ka, za = keys(a)
        if za:
            return a  # unreachable after earlier stages; kept as a guard
        if a == b:
            if np.unique(ka).size < ka.size:
                return w
        else:
            kb, zb = keys(b)
            if zb:
                return b
            if np.isin(ka, kb).any():
                return w
    return None


# ---------------------------------------------------------------------------
# equality and equivalence


def apply_monomial(G, perm, scalars=None, mul=None):
    """Column i of G moves to position perm[i], multiplied by scalars[i]."""
    G = np.asarray(G, dtype=np.int64)
    out = np.zeros_like(G)
    src = G if scalars is None else mul[np.asarray(scalars)[None, :], G]
    out[:, np.asarray(perm)] = src
    return out


def same_code(a, b, budget=SET_COMPARE_LIMIT):
    """Equality as codeword sets when small, else as row spaces (equivalent for linear codes)."""
    if a.n != b.n or a.k != b.k or a.q != b.q:
        return False
    if a.size() <= budget:
        ca = a.codewords(budget)
        cb = b.codewords(budget)
        return np.array_equal(np.unique(ca, axis=0), np.unique(cb, axis=0))
    return a.same_space(b)


def permutation_equivalent_under(a, b, perm, budget=SET_COMPARE_LIMIT):
    if a.n != b.n or a.k != b.k:
        return False
    moved = LinearCode(a.field, apply_monomial(a.G, perm), n=a.n)
    return same_code(moved, b, budget)


def monomial_equivalent_under(a, b, perm, scalars, budget=SET_COMPARE_LIMIT):
    if a.n != b.n or a.k != b.k:
        return False
    _, mul, _, _ = a.field.small_tables()
    moved = LinearCode(a.field, apply_monomial(a.G, perm, scalars, mul), n=a.n)
    return same_code(moved, b, budget)


def direct_sum(codes):
    """Outer direct sum as a block-diagonal generator."""
    n = sum(c.n for c in codes)
    rows = []
    off = 0
    for c in codes:
        block = np.zeros((c.k, n), dtype=np.int64)
        block[:, off : off + c.n] = c.G
        rows.append(block)
        off += c.n
    return LinearCode(codes[0].field, np.concatenate(rows, axis=0), n=n)

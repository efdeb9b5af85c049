"""Hot loops: codeword enumeration and log/antilog table construction.

Each kernel has a numba ``@njit`` version and a pure-numpy version with
identical results.  The numba path is used when numba imports cleanly and the
environment variable ``CONSTACODE_NO_NUMBA`` is unset (or "0").  Both paths
are always importable so tests and the benchmark can compare them directly.
"""

import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    # an old system TBB only triggers a fallback to another threading layer
    warnings.filterwarnings("ignore", message=".*TBB.*", category=numba.NumbaWarning)
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CONSTACODE_NO_NUMBA", "0") in ("", "0")


def backend():
    return "numba" if USE_NUMBA else "numpy"


def set_threads(n):
    """Cap the number of enumeration workers (numba path only)."""
    if HAVE_NUMBA and n:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


def _supports(rows):
    k, n = rows.shape
    supp = np.zeros((k, max(n, 1)), dtype=np.int64)
    slen = np.zeros(k, dtype=np.int64)
    for i in range(k):
        nz = np.flatnonzero(rows[i])
        supp[i, : nz.size] = nz
        slen[i] = nz.size
    return supp, slen


# ---------------------------------------------------------------------------
# weight histogram


def _split_top(K, p, want):
    """Number of leading rows fixed per work chunk."""
    top = 0
    while top < K and p**top < want:
        top += 1
    return top


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _hist_nb(rows, supp, slen, add, p, n_top):
        K, n = rows.shape
        k_low = K - n_top
        n_chunks = p**n_top
        total = p**k_low
        hist = np.zeros((n_chunks, n + 1), dtype=np.int64)
        for ch in prange(n_chunks):
            c = np.zeros(n, dtype=np.int64)
            for t in range(n_top):
                d = (ch // p**t) % p
                row = rows[k_low + t]
                for _ in range(d):
                    for j in range(n):
                        c[j] = add[c[j], row[j]]
            w = 0
            for j in range(n):
                if c[j] != 0:
                    w += 1
            hist[ch, w] += 1
            for t in range(1, total):
                i = 0
                u = t
                while u % p == 0:
                    u //= p
                    i += 1
                row = rows[i]
                for jj in range(slen[i]):
                    j = supp[i, jj]
                    old = c[j]
                    new = add[old, row[j]]
                    c[j] = new
                    if old == 0:
                        w += 1
                    if new == 0:
                        w -= 1
                hist[ch, w] += 1
        out = np.zeros(n + 1, dtype=np.int64)
        for ch in range(n_chunks):
            for j in range(n + 1):
                out[j] += hist[ch, j]
        return out

    @njit(parallel=True, cache=True)
    def _hist_nb2(rows, supp, slen, n_top):
        # characteristic 2: symbol addition is XOR of indices
        K, n = rows.shape
        k_low = K - n_top
        n_chunks = 1 << n_top
        total = 1 << k_low
        hist = np.zeros((n_chunks, n + 1), dtype=np.int64)
        for ch in prange(n_chunks):
            c = np.zeros(n, dtype=np.int64)
            for t in range(n_top):
                if (ch >> t) & 1:
                    for j in range(n):
                        c[j] ^= rows[k_low + t, j]
            w = 0
            for j in range(n):
                if c[j] != 0:
                    w += 1
            hist[ch, w] += 1
            for t in range(1, total):
                i = 0
                u = t
                while (u & 1) == 0:
                    u >>= 1
                    i += 1
                for jj in range(slen[i]):
                    j = supp[i, jj]
                    old = c[j]
                    new = old ^ rows[i, j]
                    c[j] = new
                    if old == 0:
                        w += 1
                    if new == 0:
                        w -= 1
                hist[ch, w] += 1
        out = np.zeros(n + 1, dtype=np.int64)
        for ch in range(n_chunks):
            for j in range(n + 1):
                out[j] += hist[ch, j]
        return out


def weight_histogram_numba(rows, add, p, chunks=64):
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not available")
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    K, n = rows.shape
    if K == 0:
        out = np.zeros(n + 1, dtype=np.int64)
        out[0] = 1
        return out
    supp, slen = _supports(rows)
    n_top = _split_top(K, p, chunks)
    if p == 2:
        return _hist_nb2(rows, supp, slen, n_top)
    return _hist_nb(rows, supp, slen, np.ascontiguousarray(add, dtype=np.int64), p, n_top)


def _combo_table(rows, add, mul, p):
    """All p**K GF(p)-combinations of ``rows``; row index = base-p message."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        parts = [table]
        for c in range(1, p):
            parts.append(add[table, mul[c, row][None, :]])
        table = np.concatenate(parts, axis=0)
    return table


def weight_histogram_numpy(rows, add, mul, p, block_elems=1 << 22):
    rows = np.asarray(rows, dtype=np.int64)
    K, n = rows.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    if K == 0:
        hist[0] = 1
        return hist
    low = 0
    while low < K and p ** (low + 1) * max(n, 1) <= block_elems:
        low += 1
    low = max(low, 1)
    table = _combo_table(rows[:low], add, mul, p)
    high = rows[low:]
    cur = np.zeros(n, dtype=np.int64)
    total = p ** (K - low)
    for t in range(total):
        if t:
            i = 0
            u = t
            while u % p == 0:
                u //= p
                i += 1
            cur = add[cur, high[i]]
        words = add[table, cur[None, :]]
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return hist


def weight_histogram(rows, add, mul, p):
    """Histogram of Hamming weights over every GF(p)-combination of ``rows``.

    ``rows`` are codewords (symbol indices of GF(q), q a power of p) that
    span the code over GF(p); ``add``/``mul`` are the GF(q) tables.
    """
    if USE_NUMBA:
        return weight_histogram_numba(rows, add, p)
    return weight_histogram_numpy(rows, add, mul, p)


def all_codewords(rows, add, mul, p):
    return _combo_table(np.asarray(rows, dtype=np.int64), add, mul, p)


# ---------------------------------------------------------------------------
# antilog tables

if HAVE_NUMBA:

    @njit(cache=True)
    def _antilog_x_nb(p, s, poly):
        # successive powers of x modulo a monic ``poly`` (ascending, length s+1)
        size = p**s - 1
        out = np.empty(size, dtype=np.int64)
        d = np.zeros(s, dtype=np.int64)
        d[0] = 1
        for k in range(size):
            idx = 0
            for t in range(s - 1, -1, -1):
                idx = idx * p + d[t]
            out[k] = idx
            top = d[s - 1]
            for t in range(s - 1, 0, -1):
                d[t] = d[t - 1]
            d[0] = 0
            if top:
                for t in range(s):
                    d[t] = (d[t] - top * poly[t]) % p
        return out


def antilog_x_numba(p, s, poly):
    return _antilog_x_nb(p, s, np.asarray(poly, dtype=np.int64))


def antilog_numpy(p, s, power_matrix, chunk=1 << 18):
    """Powers g^0 .. g^(p^s - 2) by doubling; ``power_matrix(L)`` multiplies by g^L."""
    size = p**s - 1
    weights = p ** np.arange(s, dtype=np.int64)
    out = np.empty(size, dtype=np.int64)
    out[0] = 1
    filled = 1
    while filled < size:
        take = min(filled, size - filled)
        M = power_matrix(filled)
        for lo in range(0, take, chunk):
            hi = min(take, lo + chunk)
            src = out[lo:hi]
            digits = (src[:, None] // weights[None, :]) % p
            out[filled + lo : filled + hi] = ((digits @ M) % p) @ weights
        filled += take
    return out

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from constacode import gf
from constacode.errors import BudgetExceeded, InconsistentInput, OddDistance
from constacode.linear_code import (
    LinearCode,
    WeightEnumerator,
    dual,
    griesmer_ok,
    griesmer_sum,
    is_constant_weight,
    low_weight_search,
    macwilliams,
    min_distance,
    no_code_exists,
    permutation_equivalent_under,
    pless_check,
    rank,
    same_code,
    sphere_packing_even_ok,
    sphere_packing_ok,
    weight_distribution,
)

FIELDS = {q: gf.field_create(*gf.prime_power(q)) for q in (2, 3, 4, 5, 7, 8, 9)}


def brute_distribution(code):
    """Oracle: loop over every message with plain Python field arithmetic."""
    F = code.field
    hist = [0] * (code.n + 1)
    for msg in itertools.product(range(F.order), repeat=code.k):
        word = [0] * code.n
        for m, row in zip(msg, code.G):
            for j, g in enumerate(row):
                word[j] = F.add(word[j], F.mul(m, int(g)))
        hist[sum(1 for x in word if x)] += 1
    return WeightEnumerator.from_histogram(hist)


def random_code(q, n, k, seed):
    F = FIELDS[q]
    rng = np.random.default_rng(seed)
    for _ in range(50):
        G = rng.integers(0, q, size=(k, n))
        if rank(F, G) == k:
            return LinearCode(F, G)
    return None


@st.composite
def small_codes(draw, max_size=1 << 12):
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
    n = draw(st.integers(1, 12))
    k = draw(st.integers(1, n))
    assume(q**k <= max_size)
    code = random_code(q, n, k, draw(st.integers(0, 10**6)))
    assume(code is not None)
    return code


def test_zero_code_and_repetition():
    F = FIELDS[3]
    z = LinearCode(F, np.zeros((0, 4), dtype=np.int64), n=4)
    assert weight_distribution(z).counts == {0: 1}
    assert min_distance(z) is None
    rep = LinearCode(F, [[1] * 5])
    assert min_distance(rep) == 5
    assert is_constant_weight(rep) == 5


def test_full_space_dual_is_zero():
    F = FIELDS[2]
    full = LinearCode(F, np.eye(4, dtype=np.int64))
    assert dual(full).k == 0


def test_macwilliams_example_and_roundtrip():
    W = WeightEnumerator(5, {0: 1, 4: 15})
    Wd = macwilliams(W, 5, 2, 4)
    assert Wd.counts == {0: 1, 3: 30, 4: 15, 5: 18}
    assert macwilliams(Wd, 5, 3, 4) == W
    with pytest.raises(InconsistentInput):
        macwilliams(WeightEnumerator(5, {0: 1, 4: 14}), 5, 2, 4)


def test_enumerator_algebra():
    W = WeightEnumerator(5, {0: 1, 4: 15})
    assert (W**3).counts == {0: 1, 4: 45, 8: 675, 12: 3375}
    assert W.substitute(3).counts == {0: 1, 12: 15}
    assert W.substitute(3).n == 15
    assert WeightEnumerator.from_list(5, W.to_list()) == W
    assert W.to_list() == [[0, "1"], [4, "15"]]


def test_budget():
    code = random_code(2, 20, 12, 1)
    with pytest.raises(BudgetExceeded):
        weight_distribution(code, budget=100)


def test_pless_examples():
    q, m = 3, 3
    n = (q**m - 1) // (q - 1)
    W = WeightEnumerator(n, {0: 1, q ** (m - 1): q**m - 1})
    Wd = macwilliams(W, n, m, q)
    assert Wd[1] == Wd[2] == 0
    rep = pless_check(W, (Wd[1], Wd[2], Wd[3]), n, m, q)
    assert all(rep.values())
    bad = WeightEnumerator(n, {0: 1, q ** (m - 1): q**m - 2, q ** (m - 1) + 1: 1})
    assert not all(pless_check(bad, (Wd[1], Wd[2], Wd[3]), n, m, q).values())
    # the length-800 enumerator with its dual moments
    W8 = WeightEnumerator(800, {0: 1, 343: 4800, 686: 5760000})
    W8d = macwilliams(W8, 800, 8, 7)
    assert all(pless_check(W8, (W8d[1], W8d[2], W8d[3]), 800, 8, 7).values())


def test_bounds_examples():
    assert sphere_packing_ok(7, 7, 1, 2)
    assert not sphere_packing_ok(156, 152, 5, 5)
    assert sphere_packing_ok(15, 9, 3, 4)
    assert sphere_packing_even_ok(6, 5, 2, 3)
    assert not sphere_packing_even_ok(13, 11, 4, 3)
    assert not sphere_packing_even_ok(595, 591, 4, 13)
    with pytest.raises(OddDistance):
        sphere_packing_even_ok(5, 2, 3, 2)
    q, m = 3, 4
    n = (q**m - 1) // (q - 1)
    assert griesmer_sum(m, q ** (m - 1), q) == n
    assert griesmer_sum(1, 9, 5) == 9
    assert griesmer_sum(4, 6, 3) == 10 and griesmer_ok(10, 4, 6, 3)
    ok, why = no_code_exists(156, 152, 4, 5)
    assert ok and "even-distance" in why
    assert no_code_exists(156, 152, 5, 5)[0]
    assert not no_code_exists(15, 9, 3, 4)[0]


def test_sphere_packing_oracle():
    # compare with a direct ball-volume evaluation for a grid of parameters
    for q in (2, 3, 4):
        for n in range(1, 12):
            for k in range(1, n + 1):
                for d in range(1, n + 1):
                    t = (d - 1) // 2
                    vol = sum(comb(n, i) * (q - 1) ** i for i in range(t + 1))
                    assert sphere_packing_ok(n, k, d, q) == (q**k * vol <= q**n)


def test_low_weight_equal_columns():
    F = FIELDS[3]
    H = np.array([[1, 1, 0, 2], [0, 0, 1, 1]])
    code = LinearCode(F, [[1, 2, 0, 0]])
    assert low_weight_search(code, 3, parity=H) == 2


def test_permutation_equivalence_basic():
    F = FIELDS[2]
    a = LinearCode(F, [[1, 1, 0, 0], [0, 1, 1, 1]])
    assert permutation_equivalent_under(a, a, np.arange(4))
    assert not permutation_equivalent_under(a, a, np.array([0, 2, 1, 3]))


@settings(max_examples=60, deadline=None)
@given(small_codes(max_size=1 << 9))
def test_distribution_matches_oracle(code):
    assert weight_distribution(code) == brute_distribution(code)


@settings(max_examples=60, deadline=None)
@given(small_codes())
def test_macwilliams_roundtrip_and_dual(code):
    q, n, k = code.q, code.n, code.k
    W = weight_distribution(code)
    Wd = macwilliams(W, n, k, q)
    assert macwilliams(Wd, n, n - k, q) == W
    D = dual(code)
    if q ** (n - k) <= 1 << 14:
        assert weight_distribution(D) == Wd
    assert all(pless_check(W, (Wd[1], Wd[2], Wd[3]), n, k, q).values())


@settings(max_examples=60, deadline=None)
@given(small_codes(max_size=1 << 10))
def test_low_weight_agrees_with_enumeration(code):
    d = min_distance(code)
    got = low_weight_search(code, 4)
    assert got == (d if d <= 4 else None)


@settings(max_examples=40, deadline=None)
@given(small_codes(), st.integers(0, 2**32 - 1))
def test_same_code_paths_agree(code, seed):
    # set comparison and RREF comparison agree, also after scrambling the basis
    F = code.field
    k = code.k
    rng = np.random.default_rng(seed)
    while True:
        M = rng.integers(0, F.order, size=(k, k))
        if rank(F, M) == k:
            break
    add, mul, _, _ = F.small_tables()
    G2 = np.zeros_like(code.G)
    for i in range(k):
        acc = np.zeros(code.n, dtype=np.int64)
        for j in range(k):
            acc = add[acc, mul[M[i, j], code.G[j]]]
        G2[i] = acc
    other = LinearCode(F, G2)
    assert same_code(code, other, budget=1 << 16)
    assert same_code(code, other, budget=0)

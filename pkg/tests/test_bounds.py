from __future__ import annotations

import random

import pytest

from insdel_lab.bounds import (
    BOUND_NAMES,
    ORDERING_FREE,
    BoundResult,
    CodeContext,
    all_bounds,
    c21_bound,
    c22_bound,
    c23_bound,
    c24_bound,
    direct_bounds,
    half_singleton_bound,
    half_singleton_witness,
    lshift,
    p41_bounds,
    p41_for_code,
    t21_bound_search,
    t21_witness,
    t31_for_code,
    t31_rm_bound,
)
from insdel_lab.codes import (
    LinearCode,
    agfc_insert,
    codeword_array,
    cyclic_code,
    permute_coordinates,
    random_code,
    reed_muller,
    reed_solomon,
)
from insdel_lab.errors import CodeError, GuardExceeded
from insdel_lab.galois import field_from_order, field_new
from insdel_lab.metrics import insdel_distance, is_information_free, lcs_length
from conftest import random_codes


def _by_name(results):
    return {b.name: b for b in results}


def test_hermitian_ordering_1_values(herm1):
    b = _by_name(all_bounds(herm1))
    assert tuple(b) == BOUND_NAMES
    expected = {
        "t21_search": 6, "c21": 6, "c22": 6, "c23": 8, "half_singleton": 8, "c24_exact": 8,
        "c24_plotkin": 8, "direct_2dH": 10, "singleton_2nk1": 12, "cz21_2nk": 10,
    }
    for name, value in expected.items():
        assert b[name].applicable and b[name].value == value, name
    assert not b["t31_rm"].applicable and not b["p41"].applicable


def test_c22_witness_word(herm1):
    r = c22_bound(herm1)
    assert r.params["x"] == [3, 2, 1, 1, 1, 0, 0, 0]  # (ω², ω, 1, 1, 1, 0, 0, 0)
    a, b = r.witness
    assert herm1.contains(a) and herm1.contains(b)
    assert insdel_distance(a, b) <= 6


def test_c24_terms_hermitian(herm1):
    r = c24_bound(herm1, "exact")
    assert r.params["d_r"] == [5, 7, 8]
    assert r.params["terms"] == [10, 10, 8]  # d_3 - 6 + 2 = 4, doubled


def test_hermitian_ordering_2_c22_inapplicable(herm2):
    r = c22_bound(herm2)
    assert not r.applicable and r.value is None
    assert "consecutive" in r.reason
    assert r.params["formula_value"] == 6


def test_c22_needs_large_distance():
    code = reed_muller(1, 3)  # d_H = 4 = n/2
    r = c22_bound(code)
    assert not r.applicable and "n/2" in r.reason


def test_mds_consecutive_word_reproduces_half_singleton():
    F = field_from_order(8)
    code = reed_solomon(F, list(F.elements()), 3)
    n, k = code.n, code.k
    # the minimum-weight word vanishing on the first k-1 coordinates
    words = codeword_array(code)
    x = next(tuple(int(v) for v in w) for w in words
             if not any(w[: k - 1]) and all(w[k - 1:]))
    S = list(range(k - 1, 2 * k - 1))
    assert is_information_free(code, S)
    t = n - k - (k - 1)  # zeros outside the window are the first k-1 positions
    a, b = t21_witness(code, x, S, t)
    assert insdel_distance(a, b) <= 2 * (n - 2 * k + 2)


def _random_instance(rng):
    q = rng.choice((2, 3, 4))
    F = field_from_order(q)
    n = rng.randint(3, 9)
    k = rng.randint(1, min(4, n))
    code = random_code(F, n, k, rng)
    words = codeword_array(code)
    x = tuple(int(v) for v in words[rng.randrange(1, len(words))])
    for _ in range(50):
        size = rng.randint(1, k)
        S = sorted(rng.sample(range(n), size))
        if is_information_free(code, S):
            break
    else:
        return None
    lo, hi = S[0], S[-1]
    zeros = sum(1 for i in range(n) if (i < lo or i > hi) and x[i] == 0)
    t = n - len(S) - zeros + rng.randint(0, 1)
    return code, x, S, t


def test_t21_witness_random_instances():
    rng = random.Random(21)
    done = 0
    while done < 150:
        inst = _random_instance(rng)
        if inst is None:
            continue
        code, x, S, t = inst
        a, b = t21_witness(code, x, S, t)
        assert code.contains(a) and code.contains(b)
        assert b != a
        assert lcs_length(a, b) >= code.n - t - 1
        assert insdel_distance(a, b) <= 2 * (t + 1)
        done += 1


def test_t21_witness_rejects_bad_input(herm1):
    x = (3, 2, 1, 1, 1, 0, 0, 0)
    with pytest.raises(CodeError):
        t21_witness(herm1, x, [0, 1, 2, 3], 2)  # not information free
    with pytest.raises(CodeError):
        t21_witness(herm1, (1,) + (0,) * 7, [0], 2)  # not a codeword
    with pytest.raises(CodeError):
        t21_witness(herm1, x, [0, 1, 2], 1)  # too few zeros outside the window
    with pytest.raises(CodeError):
        t21_witness(herm1, x, [], 2)


def test_t21_search_properties():
    for code in random_codes(60, 7, max_size=1024):
        ctx = CodeContext(code)
        t21 = t21_bound_search(code, ctx)
        c21 = c21_bound(code, ctx)
        assert t21.value <= c21.value  # c21's window is one of those scanned
        if code.n > code.k >= 2:
            assert t21.value <= 2 * (code.n - code.k)
        a, b = t21.witness
        assert code.contains(a) and code.contains(b)
        assert insdel_distance(a, b) <= t21.value
        c22 = c22_bound(code, ctx)
        if c22.applicable:
            assert c21.value <= c22.value


def test_half_singleton_witness_random():
    rng = random.Random(6)
    found = 0
    for _ in range(300):
        F = field_new(rng.choice((2, 3)))
        n = rng.randint(2, 8)
        k = rng.randint(n // 2 + 1, n)
        code = random_code(F, n, k, rng)
        sw = half_singleton_witness(code)
        if sw.pair is None:
            assert sw.diagnostic
            continue
        y, x = sw.pair
        assert code.contains(y) and code.contains(x)
        assert x == lshift(y) and len(set(y)) > 1
        assert insdel_distance(x, y) == 2
        found += 1
    assert found >= 50


def test_half_singleton_needs_high_rate(herm1):
    with pytest.raises(CodeError):
        half_singleton_witness(herm1)
    r = half_singleton_bound(herm1)
    assert r.value == 8 and r.witness is None


def test_c23_branches():
    rm = reed_muller(1, 3)  # d_H = 4 >= k = 4
    r = c23_bound(rm)
    assert r.params["branch"] == "d_H >= k" and r.value == 2 * (8 - 8 + 2)
    rep = LinearCode.from_rows(field_new(2), [[1, 1, 0, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]])
    r = c23_bound(rep)  # d_H = 2 <= k - 1
    assert r.params["branch"] == "d_H <= k-1" and r.value == 2 * (5 - 3 - 2 + 2)
    assert r.params["data_free"] == max(2 * (5 - 6 + 2), 2 * 2)


def test_direct_bounds(herm1):
    d = _by_name(direct_bounds(herm1))
    assert d["direct_2dH"].value == 10
    assert d["singleton_2nk1"].value == 12
    assert d["cz21_2nk"].value == 10
    one = LinearCode.from_rows(field_new(2), [[1, 1, 1]])
    assert not _by_name(direct_bounds(one))["cz21_2nk"].applicable


def test_c24_plotkin_and_mode_check(herm1):
    r = c24_bound(herm1, "plotkin")
    assert r.params["d_r"] == [6, 7, 8]
    with pytest.raises(ValueError):
        c24_bound(herm1, "other")


@pytest.mark.parametrize("u,m,value", [(1, 3, 4), (1, 4, 10), (2, 5, 4), (1, 5, 24), (2, 7, 34)])
def test_t31_formula(u, m, value):
    r = t31_rm_bound(u, m)
    assert r.value == value
    assert r.params["identity_value"] == value


def test_t31_applicability():
    assert t31_for_code(reed_muller(1, 3)).applicable
    assert not t31_for_code(reed_muller(2, 4)).applicable  # u = m/2
    perm = list(range(8))
    random.Random(0).shuffle(perm)
    assert not t31_for_code(permute_coordinates(reed_muller(1, 3), perm)).applicable
    with pytest.raises(CodeError):
        t31_rm_bound(2, 4)


def test_p41_simplex_values():
    cyc, agfc = p41_bounds(7, 3, 2)
    assert [b.value for b in cyc] == [8, 8, 6]
    assert [b.value for b in agfc] == [10, 10, 8]
    assert [b.params["d_r_plotkin"] for b in cyc] == [4, 6, 7]


def test_p41_for_cyclic_and_agfc():
    simplex = cyclic_code(field_new(2), 7, [1, 0, 1, 1, 1])
    r = p41_for_code(simplex)
    assert r.applicable and r.value == 6 and r.params["values"] == [8, 8, 6]
    ext = agfc_insert(simplex, [1, 0, 0, 0, 0, 0, 0], 3)
    r = p41_for_code(ext)
    assert r.applicable and r.value == 8 and r.params["n"] == 7


def test_bound_result_round_trip(herm1):
    for b in all_bounds(herm1):
        assert BoundResult.from_dict(b.to_dict()) == b


def test_all_bounds_listed_for_repetition_code():
    code = LinearCode.from_rows(field_new(2), [[1, 1, 1]])
    names = [b.name for b in all_bounds(code)]
    assert names == list(BOUND_NAMES)


def test_partial_scan_mode():
    code = reed_muller(2, 5)
    ctx = CodeContext(code, codeword_guard=1000)
    r = t21_bound_search(code, ctx, exhaustive=False)
    assert r.params["mode"] == "partial" and r.params["codewords_scanned"] == 999
    with pytest.raises(GuardExceeded):
        t21_bound_search(code, CodeContext(code, codeword_guard=1000), exhaustive=True)
    assert not c22_bound(code, ctx).applicable
    assert not c24_bound(code, "exact", ctx).applicable


def test_ordering_free_bounds_are_permutation_invariant():
    rng = random.Random(11)
    codes = random_codes(15, 12, max_size=256) + [cyclic_code(field_new(2), 7, [1, 0, 1, 1])]
    for code in codes:
        base = _by_name(all_bounds(code))
        for _ in range(3):
            perm = list(range(code.n))
            rng.shuffle(perm)
            moved = _by_name(all_bounds(permute_coordinates(code, perm)))
            for name in ORDERING_FREE:
                assert moved[name].value == base[name].value, name

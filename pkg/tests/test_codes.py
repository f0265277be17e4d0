from __future__ import annotations

import itertools
import random

import pytest

from insdel_lab.codes import (
    HERMITIAN_ORDERING_2,
    agfc_insert,
    codeword_array,
    codeword_from_message,
    cyclic_code,
    enumerate_codewords,
    gaussian_binomial,
    hermitian_example,
    message_from_index,
    message_index,
    permute_coordinates,
    random_code,
    reed_muller,
    reed_solomon,
    reverse,
    rm_dimension,
    rm_point,
    shorten,
    LinearCode,
)
from insdel_lab.errors import CodeError, DimensionError, GuardExceeded
from insdel_lab.galois import field_from_order, field_new
from insdel_lab.metrics import ghw_profile, minimum_distance
from oracles import RefField, ref_codewords, ref_min_distance


def _ref_words(code):
    return ref_codewords(RefField(code.field.p, code.field.m, code.field.modulus), code.G.to_rows())


def test_enumeration_matches_reference(herm1):
    words = list(enumerate_codewords(herm1))
    assert words == _ref_words(herm1)
    assert codeword_array(herm1).tolist() == [list(w) for w in words]


def test_message_order_is_lexicographic(herm1):
    assert message_from_index(herm1, 0) == (0, 0, 0)
    assert message_from_index(herm1, 1) == (0, 0, 1)
    assert message_from_index(herm1, 16) == (1, 0, 0)
    for i in range(herm1.size):
        assert message_index(herm1, message_from_index(herm1, i)) == i


@pytest.mark.parametrize("q,n,k", [(4, 4, 2), (5, 5, 3), (7, 6, 2), (8, 8, 3), (9, 5, 2)])
def test_reed_solomon_is_mds(q, n, k):
    F = field_from_order(q)
    code = reed_solomon(F, list(F.elements())[:n], k)
    assert code.n == n and code.k == k
    assert minimum_distance(code) == n - k + 1


def test_reed_solomon_rejects_repeated_points():
    with pytest.raises(CodeError):
        reed_solomon(field_new(5), [1, 1, 2], 2)


@pytest.mark.parametrize("u,m", [(0, 3), (1, 3), (1, 4), (2, 4), (1, 5)])
def test_reed_muller_parameters(u, m):
    code = reed_muller(u, m)
    assert code.n == 2**m
    assert code.k == rm_dimension(u, m)
    assert minimum_distance(code) == 2 ** (m - u)


def test_rm_point_uses_x1_as_top_bit():
    assert rm_point(4, 3) == (1, 0, 0)
    assert rm_point(1, 3) == (0, 0, 1)


def test_reed_muller_points_must_be_permutation():
    with pytest.raises(CodeError):
        reed_muller(1, 3, points=[0] * 8)


def test_hamming_cyclic_code():
    code = cyclic_code(field_new(2), 7, [1, 0, 1, 1])  # x^3 + x + 1
    assert (code.n, code.k) == (7, 4)
    assert minimum_distance(code) == 3


@pytest.mark.parametrize(
    "q,n,g",
    [(2, 7, [1, 0, 1, 1]), (2, 7, [1, 0, 1, 1, 1]), (3, 4, [1, 0, 1]), (2, 15, [1, 0, 0, 1, 1]), (4, 5, [1, 1])],
)
def test_cyclic_codes_are_shift_closed(q, n, g):
    code = cyclic_code(field_from_order(q), n, g)
    for w in enumerate_codewords(code):
        assert code.contains(w[-1:] + w[:-1])


def test_cyclic_code_errors():
    F = field_new(2)
    with pytest.raises(CodeError):
        cyclic_code(F, 7, [1, 1, 1])  # does not divide x^7 - 1
    with pytest.raises(CodeError):
        cyclic_code(field_new(3), 4, [2, 0, 2])  # not monic
    with pytest.raises(CodeError):
        cyclic_code(F, 3, [0])


def test_hermitian_rows_verbatim(herm1, herm2):
    assert herm1.G.to_rows()[1] == (0, 1, 2, 2, 2, 3, 3, 3)
    assert herm2.G.to_rows()[2] == (0, 0, 1, 1, 2, 2, 3, 3)
    assert (herm1.n, herm1.k, herm1.q) == (8, 3, 4)


def test_hermitian_point_permutation_gives_ordering_2(herm1, herm2):
    assert [p + 1 for p in HERMITIAN_ORDERING_2] == [1, 2, 3, 6, 4, 7, 5, 8]
    assert permute_coordinates(herm1, HERMITIAN_ORDERING_2).same_code(herm2)
    assert not herm1.same_code(herm2)


def test_identity_permutation_keeps_code(herm1):
    assert permute_coordinates(herm1, range(8)).G == herm1.G


def test_permutation_errors(herm1):
    with pytest.raises(CodeError):
        permute_coordinates(herm1, [0] * 8)
    with pytest.raises(CodeError):
        permute_coordinates(herm1, range(7))


def test_permutation_preserves_hamming_parameters(herm1):
    rng = random.Random(3)
    base = ghw_profile(herm1).values
    for _ in range(5):
        perm = list(range(8))
        rng.shuffle(perm)
        p = permute_coordinates(herm1, perm)
        assert ghw_profile(p).values == base
        assert minimum_distance(p) == 5


def test_agfc_duplicate_first_coordinate():
    code = cyclic_code(field_new(2), 7, [1, 0, 1, 1])
    ext = agfc_insert(code, [1, 0, 0, 0, 0, 0, 0], 7)
    assert (ext.n, ext.k) == (8, 4)
    for w in enumerate_codewords(ext):
        assert w[7] == w[0]


def test_agfc_even_weight_gets_zero():
    even = LinearCode.from_rows(field_new(2), [[1, 1, 0], [0, 1, 1]])
    ext = agfc_insert(even, [1, 1, 1], 1)
    assert all(w[1] == 0 for w in enumerate_codewords(ext))


def test_agfc_deletion_recovers_parent():
    rng = random.Random(5)
    for _ in range(20):
        F = field_from_order(rng.choice([2, 3, 4]))
        n = rng.randint(2, 6)
        code = random_code(F, n, rng.randint(1, n), rng)
        f = [rng.randrange(F.q) for _ in range(n)]
        if not any(f):
            continue
        pos = rng.randint(0, n)
        ext = agfc_insert(code, f, pos)
        assert ext.k == code.k
        parent = sorted(enumerate_codewords(code))
        assert sorted(w[:pos] + w[pos + 1:] for w in enumerate_codewords(ext)) == parent
        assert ext.info["kind"] == "agfc" and ext.info["parent_n"] == str(n)


def test_agfc_errors(herm1):
    with pytest.raises(CodeError):
        agfc_insert(herm1, [0] * 8, 0)
    with pytest.raises(CodeError):
        agfc_insert(herm1, [1] * 8, 9)
    with pytest.raises(DimensionError):
        agfc_insert(herm1, [1] * 7, 0)


def test_shorten(herm1):
    s = shorten(herm1, [0])
    assert (s.n, s.k) == (7, 2)
    words = [w for w in enumerate_codewords(herm1) if w[0] == 0]
    assert sorted(enumerate_codewords(s)) == sorted(w[1:] for w in words)
    assert minimum_distance(s) >= minimum_distance(herm1)
    with pytest.raises(CodeError):
        shorten(herm1, [0, 1, 2])


def test_reverse_is_involution(herm1):
    assert reverse(reverse(herm1)).G == herm1.G


def test_rank_deficient_generator_rejected():
    with pytest.raises(CodeError):
        LinearCode.from_rows(field_new(2), [[1, 1], [1, 1]])


def test_guard(herm1):
    with pytest.raises(GuardExceeded):
        codeword_array(herm1, guard=10)


def test_gaussian_binomial_counts_subspaces():
    # brute-force count of 2-dimensional subspaces of GF(2)^4
    vecs = [v for v in itertools.product(range(2), repeat=4) if any(v)]
    spans = set()
    for a, b in itertools.combinations(vecs, 2):
        s = tuple(x ^ y for x, y in zip(a, b))
        spans.add(frozenset([a, b, s]))
    assert gaussian_binomial(4, 2, 2) == len(spans) == 35
    assert gaussian_binomial(3, 1, 4) == 21


def test_codeword_from_message(herm1):
    assert codeword_from_message(herm1, (0, 1, 0)) == herm1.G.row(1)
    assert _ref_words(herm1)[5] == codeword_from_message(herm1, (0, 1, 1))
    assert ref_min_distance(_ref_words(herm1)) == 5

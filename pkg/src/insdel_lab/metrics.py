"""Exact distance computations: Hamming quantities, LCS, insdel distance,
partial ranks and generalized Hamming weights.

These are the ground truth every bound is checked against, so nothing here
takes shortcuts.  In particular the code-level insdel distance looks at every
unordered pair of distinct codewords: the LCS is not translation invariant,
so unlike the Hamming distance it cannot be reduced to codeword weights.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .codes import (
    Codeword,
    LinearCode,
    codeword_array,
    gaussian_binomial,
    message_from_index,
)
from .errors import CodeError, DimensionError, GuardExceeded
from .linalg import column_rank

DEFAULT_SUBSPACE_GUARD = 10**6
_PAIRS_PER_BLOCK = 1 << 20


# ---------------------------------------------------------------------------
# Hamming quantities
# ---------------------------------------------------------------------------


def support(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(x) if c)


def hamming_weight(x: Sequence[int]) -> int:
    return sum(1 for c in x if c)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise DimensionError(f"lengths {len(a)} and {len(b)} differ")
    return sum(1 for x, y in zip(a, b) if x != y)


def is_consecutive(x: Sequence[int]) -> bool:
    s = support(x)
    return bool(s) and s[-1] - s[0] + 1 == len(s)


def minimum_distance(code: LinearCode, guard: Optional[int] = None) -> int:
    words = codeword_array(code, guard)
    return int(np.count_nonzero(words[1:], axis=1).min())


# ---------------------------------------------------------------------------
# longest common subsequence
# ---------------------------------------------------------------------------


def lcs_length(a: Sequence, b: Sequence) -> int:
    """Length of a longest common subsequence (two-row dynamic programme)."""
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def lcs(a: Sequence, b: Sequence) -> tuple:
    """One longest common subsequence, recovered from the full table."""
    n, m = len(a), len(b)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(m):
            if a[i] == b[j]:
                table[i + 1][j + 1] = table[i][j] + 1
            else:
                table[i + 1][j + 1] = max(table[i][j + 1], table[i + 1][j])
    out = []
    i, j = n, m
    while i and j:
        if a[i - 1] == b[j - 1]:
            out.append(a[i - 1])
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return tuple(reversed(out))


def lcs_lengths_batch(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise LCS lengths of two equally shaped ``(pairs, n)`` arrays."""
    if A.shape != B.shape:
        raise DimensionError(f"shapes {A.shape} and {B.shape} differ")
    P, n = A.shape
    dtype = np.uint8 if n < 255 else np.uint16
    a_cols = [np.ascontiguousarray(A[:, i]) for i in range(n)]
    b_cols = [np.ascontiguousarray(B[:, j]) for j in range(n)]
    zero = np.zeros(P, dtype=dtype)
    prev = [zero] * (n + 1)
    for i in range(n):
        cur = [zero]
        ai = a_cols[i]
        for j in range(n):
            # with a match, prev[j] + 1 dominates both neighbours
            step = prev[j] + (ai == b_cols[j]).astype(dtype)
            cur.append(np.maximum(np.maximum(prev[j + 1], cur[j]), step))
        prev = cur
    return prev[n].astype(np.int64)


# ---------------------------------------------------------------------------
# insdel distance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InsdelResult:
    """``distance = 2 (n - lcs_length)``; for a code, the attaining pair if known."""

    distance: int
    lcs_length: int
    n: int
    witness_pair: Optional[tuple[Codeword, Codeword]] = None
    witness_messages: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    common_subsequence: Optional[tuple[int, ...]] = None
    pairs_examined: int = 0

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "lcs_length": self.lcs_length,
            "n": self.n,
            "witness_pair": [list(w) for w in self.witness_pair] if self.witness_pair else None,
            "witness_messages": (
                [list(m) for m in self.witness_messages] if self.witness_messages else None
            ),
            "common_subsequence": (
                list(self.common_subsequence) if self.common_subsequence is not None else None
            ),
            "pairs_examined": self.pairs_examined,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InsdelResult":
        def pair(v):
            return tuple(tuple(x) for x in v) if v is not None else None

        cs = d.get("common_subsequence")
        return cls(
            distance=d["distance"],
            lcs_length=d["lcs_length"],
            n=d["n"],
            witness_pair=pair(d.get("witness_pair")),
            witness_messages=pair(d.get("witness_messages")),
            common_subsequence=tuple(cs) if cs is not None else None,
            pairs_examined=d.get("pairs_examined", 0),
        )


def insdel_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise DimensionError(f"lengths {len(a)} and {len(b)} differ")
    return 2 * (len(a) - lcs_length(a, b))


def insdel_pair(a: Sequence[int], b: Sequence[int]) -> InsdelResult:
    if len(a) != len(b):
        raise DimensionError(f"lengths {len(a)} and {len(b)} differ")
    sub = lcs(a, b)
    a, b = tuple(a), tuple(b)
    return InsdelResult(
        distance=2 * (len(a) - len(sub)),
        lcs_length=len(sub),
        n=len(a),
        witness_pair=(a, b),
        common_subsequence=sub,
        pairs_examined=1,
    )


def _pair_blocks(N: int, target: int) -> Iterator[tuple[int, int]]:
    """Split first indices 0..N-2 into runs holding about ``target`` pairs each."""
    i0 = 0
    while i0 < N - 1:
        count, i1 = 0, i0
        while i1 < N - 1 and (count == 0 or count + (N - 1 - i1) <= target):
            count += N - 1 - i1
            i1 += 1
        yield i0, i1
        i0 = i1


def _best_in_block(words: np.ndarray, i0: int, i1: int) -> tuple[int, int, int]:
    N = words.shape[0]
    firsts = np.arange(i0, i1)
    counts = N - 1 - firsts
    I = np.repeat(firsts, counts)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    J = I + 1 + (np.arange(I.size) - np.repeat(starts, counts))
    lengths = lcs_lengths_batch(words[I], words[J])
    pos = int(np.argmax(lengths))  # first maximum = lexicographically smallest pair
    return int(lengths[pos]), int(I[pos]), int(J[pos])


def longest_pair(
    words: np.ndarray, threads: int = 1, block_pairs: int = _PAIRS_PER_BLOCK
) -> tuple[int, int, int]:
    """``(lcs, i, j)`` for the first row pair ``i < j`` with the longest LCS."""
    blocks = list(_pair_blocks(words.shape[0], block_pairs))
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda b: _best_in_block(words, *b), blocks))
    else:
        results = [_best_in_block(words, *b) for b in blocks]
    return min(results, key=lambda r: (-r[0], r[1], r[2]))


def insdel_code_exact(
    code: LinearCode,
    guard: Optional[int] = None,
    threads: int = 1,
    block_pairs: int = _PAIRS_PER_BLOCK,
) -> InsdelResult:
    """Exact insdel distance of ``code`` over all ``C(q^k, 2)`` codeword pairs.

    The reported pair is the lexicographically smallest ``(msg1, msg2)``
    attaining the minimum, whatever the thread count.
    """
    words = codeword_array(code, guard)
    N = words.shape[0]
    if N < 2:
        raise CodeError("insdel distance needs at least two codewords")
    best_len, i, j = longest_pair(words, threads, block_pairs)
    a = tuple(int(v) for v in words[i])
    b = tuple(int(v) for v in words[j])
    sub = lcs(a, b)
    assert len(sub) == best_len
    return InsdelResult(
        distance=2 * (code.n - best_len),
        lcs_length=best_len,
        n=code.n,
        witness_pair=(a, b),
        witness_messages=(message_from_index(code, i), message_from_index(code, j)),
        common_subsequence=sub,
        pairs_examined=N * (N - 1) // 2,
    )


# ---------------------------------------------------------------------------
# ranks of coordinate subsets
# ---------------------------------------------------------------------------


class ColumnRanks:
    """Memoised rank of ``G`` restricted to a set of coordinates."""

    def __init__(self, code: LinearCode):
        self.code = code
        self._cache: dict[int, int] = {}
        cols = [code.G.col(j) for j in range(code.n)]
        self._binary = code.q == 2
        if self._binary:
            self._cols = [sum(bit << i for i, bit in enumerate(c)) for c in cols]
        else:
            self._cols = cols

    def __call__(self, positions: Iterable[int]) -> int:
        key = 0
        for p in positions:
            key |= 1 << p
        return self.of_mask(key)

    def of_mask(self, mask: int) -> int:
        r = self._cache.get(mask)
        if r is not None:
            return r
        idx = [j for j in range(self.code.n) if (mask >> j) & 1]
        if self._binary:
            r = _binary_rank(self._cols[j] for j in idx)
        else:
            r = column_rank(self.code.field, (self._cols[j] for j in idx))
        self._cache[mask] = r
        return r


def _binary_rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def partial_rank(x: Sequence[int], code: LinearCode) -> int:
    """Dimension of the projection of ``code`` onto ``support(x)``."""
    if not code.contains(x):
        raise CodeError("vector is not a codeword of the code")
    return ColumnRanks(code)(support(x))


def is_information_free(code: LinearCode, positions: Iterable[int]) -> bool:
    """Whether projecting ``code`` onto ``positions`` is onto ``GF(q)^|positions|``."""
    pos = sorted(set(positions))
    for p in pos:
        if not 0 <= p < code.n:
            raise DimensionError(f"position {p} out of range")
    if len(pos) > code.k:
        return False
    return ColumnRanks(code)(pos) == len(pos)


# ---------------------------------------------------------------------------
# generalized Hamming weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GhwProfile:
    values: tuple[int, ...]

    def __getitem__(self, r: int) -> int:
        """``profile[r]`` is d_r, 1-based as in the usual notation."""
        if not 1 <= r <= len(self.values):
            raise IndexError(r)
        return self.values[r - 1]

    def __len__(self) -> int:
        return len(self.values)


def iter_rref_bases(q: int, k: int, r: int) -> Iterator[list[tuple[int, ...]]]:
    """Each r-dimensional subspace of GF(q)^k once, as its RREF basis.

    Pivot sets come in lexicographic order, free entries in lexicographic order.
    """
    for pivots in itertools.combinations(range(k), r):
        pivset = set(pivots)
        slots = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, k) if c not in pivset]
        for vals in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * k for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            yield [tuple(row) for row in rows]


def subspace_count(code: LinearCode, r: int) -> int:
    return gaussian_binomial(code.k, r, code.q)


def _support_masks(code: LinearCode, guard: Optional[int]) -> list[int]:
    nz = codeword_array(code, guard) != 0
    if code.n <= 62:
        return (nz.astype(np.int64) @ (1 << np.arange(code.n, dtype=np.int64))).tolist()
    return [sum(1 << j for j, flag in enumerate(row) if flag) for row in nz.tolist()]


def ghw_exact(
    code: LinearCode,
    r: int,
    guard: Optional[int] = None,
    codeword_guard: Optional[int] = None,
    _masks: Optional[list[int]] = None,
) -> int:
    """The r-th generalized Hamming weight by enumerating r-dim subcodes."""
    if not 1 <= r <= code.k:
        raise DimensionError(f"r must be in 1..{code.k}, got {r}")
    guard = DEFAULT_SUBSPACE_GUARD if guard is None else guard
    count = subspace_count(code, r)
    if count > guard:
        raise GuardExceeded(f"{count} subspaces of dimension {r} exceed the guard of {guard}")
    masks = _masks if _masks is not None else _support_masks(code, codeword_guard)
    q, k = code.q, code.k
    place = [q ** (k - 1 - c) for c in range(k)]
    best = code.n + 1
    for basis in iter_rref_bases(q, k, r):
        union = 0
        for row in basis:
            union |= masks[sum(v * w for v, w in zip(row, place))]
        size = union.bit_count()
        if size < best:
            best = size
    return best


def ghw_profile(
    code: LinearCode, guard: Optional[int] = None, codeword_guard: Optional[int] = None
) -> GhwProfile:
    """All of ``d_1 .. d_k``; the subspace guard applies to the total count."""
    guard = DEFAULT_SUBSPACE_GUARD if guard is None else guard
    total = sum(subspace_count(code, r) for r in range(1, code.k + 1))
    if total > guard:
        raise GuardExceeded(f"{total} subspaces in total exceed the guard of {guard}")
    masks = _support_masks(code, codeword_guard)
    return GhwProfile(
        tuple(ghw_exact(code, r, guard, _masks=masks) for r in range(1, code.k + 1))
    )


def plotkin_ghw(n: int, k: int, q: int, r: int) -> int:
    """Plotkin bound on d_r: ``floor(n (q^r - 1) q^(k-r) / (q^k - 1))``."""
    return (n * (q**r - 1) * q ** (k - r)) // (q**k - 1)

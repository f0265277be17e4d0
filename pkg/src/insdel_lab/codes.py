"""Linear codes and the constructions used throughout the package.

Coordinates and message positions are 0-based in this API.  A coordinate
permutation ``perm`` is given in one-line form: position ``j`` of the new code
carries old coordinate ``perm[j]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import CodeError, DimensionError, GuardExceeded
from .galois import FieldSpec, field_from_order, poly_divmod, poly_trim
from .linalg import (
    FqMatrix,
    column_submatrix,
    mat_vec,
    null_space,
    parity_check,
    rank,
    vec_mat,
)

Codeword = tuple[int, ...]

DEFAULT_CODEWORD_GUARD = 65536


@dataclass(frozen=True)
class LinearCode:
    """An ``[n, k]_q`` code given by a full-rank ``k x n`` generator matrix.

    ``meta`` records how the code was built (e.g. ``{"kind": "rm", "u": 1,
    "m": 3, "ordering": "t31"}``); the ordering-dependent Reed-Muller bound and
    the cyclic/AGFC bound look at it to decide applicability.
    """

    field: FieldSpec
    G: FqMatrix
    label: str = ""
    meta: tuple[tuple[str, str], ...] = dc_field(default=())

    def __post_init__(self) -> None:
        if self.G.field != self.field:
            raise CodeError("generator matrix over a different field")
        if self.G.cols < 1:
            raise CodeError("code length must be >= 1")
        if rank(self.G) != self.G.rows:
            raise CodeError(f"generator matrix rank {rank(self.G)} < {self.G.rows} rows")

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[int]],
        label: str = "",
        meta: Optional[dict] = None,
        n: Optional[int] = None,
    ) -> "LinearCode":
        G = FqMatrix.from_rows(field, rows, n)
        return cls(field, G, label, _freeze_meta(meta))

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.field.q**self.k

    @property
    def info(self) -> dict[str, str]:
        return dict(self.meta)

    @cached_property
    def H(self) -> FqMatrix:
        return parity_check(self.G)

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            return False
        return not any(mat_vec(self.field, self.H, x))

    def with_meta(self, **updates) -> "LinearCode":
        meta = self.info
        meta.update({k: str(v) for k, v in updates.items()})
        return LinearCode(self.field, self.G, self.label, _freeze_meta(meta))

    def same_code(self, other: "LinearCode") -> bool:
        """True when both generator matrices span the same row space."""
        if self.field != other.field or self.n != other.n or self.k != other.k:
            return False
        return all(other.contains(r) for r in self.G.to_rows())


def _freeze_meta(meta: Optional[dict]) -> tuple[tuple[str, str], ...]:
    if not meta:
        return ()
    return tuple(sorted((str(k), str(v)) for k, v in meta.items()))


# ---------------------------------------------------------------------------
# encoding and enumeration
# ---------------------------------------------------------------------------


def codeword_from_message(code: LinearCode, msg: Sequence[int]) -> Codeword:
    if len(msg) != code.k:
        raise DimensionError(f"message of length {len(msg)} for k={code.k}")
    return vec_mat(code.field, [code.field.check(int(c)) for c in msg], code.G)


def message_index(code: LinearCode, msg: Sequence[int]) -> int:
    """Integer encoding of a message, first coordinate most significant."""
    idx = 0
    for c in msg:
        idx = idx * code.q + c
    return idx


def message_from_index(code: LinearCode, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(code.k):
        idx, c = divmod(idx, code.q)
        out.append(c)
    return tuple(reversed(out))


def check_guard(code: LinearCode, guard: Optional[int]) -> None:
    guard = DEFAULT_CODEWORD_GUARD if guard is None else guard
    if code.size > guard:
        raise GuardExceeded(
            f"{code.q}^{code.k} = {code.size} codewords exceeds the guard of {guard}"
        )


def enumerate_codewords(code: LinearCode, guard: Optional[int] = None) -> Iterator[Codeword]:
    """Every codeword once, in lexicographic message order."""
    check_guard(code, guard)
    for msg in itertools.product(range(code.q), repeat=code.k):
        yield vec_mat(code.field, msg, code.G)


def message_array(q: int, k: int, limit: Optional[int] = None) -> np.ndarray:
    """Messages as rows, lexicographic order (first column slowest)."""
    total = q**k if limit is None else min(limit, q**k)
    idx = np.arange(total, dtype=np.int64)
    out = np.zeros((total, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def encode_array(code: LinearCode, messages: np.ndarray) -> np.ndarray:
    """Vectorised ``messages . G`` through the field tables."""
    t = code.field.tables
    G = np.array(code.G.to_rows(), dtype=np.int64).reshape(code.k, code.n)
    out = np.zeros((messages.shape[0], code.n), dtype=np.int64)
    for i in range(code.k):
        out = t.add[out, t.mul[messages[:, i][:, None], G[i][None, :]]]
    return out


def codeword_array(code: LinearCode, guard: Optional[int] = None) -> np.ndarray:
    """All ``q^k`` codewords as an array, row ``i`` encoding message index ``i``."""
    check_guard(code, guard)
    return encode_array(code, message_array(code.q, code.k))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def reed_solomon(field: FieldSpec, points: Sequence[int], k: int) -> LinearCode:
    """Evaluations of all polynomials of degree < k at distinct ``points``."""
    points = [field.check(int(p)) for p in points]
    n = len(points)
    if len(set(points)) != n:
        raise CodeError("evaluation points must be distinct")
    if not 1 <= k <= n:
        raise CodeError(f"need 1 <= k <= n, got k={k}, n={n}")
    rows = [[field.pow(p, i) for p in points] for i in range(k)]
    return LinearCode.from_rows(
        field, rows, f"RS(n={n},k={k}) over GF({field.q})", {"kind": "rs"}
    )


def rm_monomials(u: int, m: int) -> list[tuple[int, ...]]:
    """Monomials of degree <= u in x_1..x_m as tuples of 1-based variable indices."""
    out: list[tuple[int, ...]] = []
    for d in range(u + 1):
        out.extend(itertools.combinations(range(1, m + 1), d))
    return out


def rm_point(index: int, m: int) -> tuple[int, ...]:
    """Point of F_2^m for integer ``index``; x_1 is the most significant bit."""
    return tuple((index >> (m - i)) & 1 for i in range(1, m + 1))


def reed_muller(
    u: int, m: int, points: Optional[Sequence[int]] = None, ordering: str = "default"
) -> LinearCode:
    """Binary RM(u, m): evaluations of monomials of degree <= u.

    ``points`` lists the point indices (see ``rm_point``) in coordinate order;
    the default is 0 .. 2^m - 1.
    """
    if m < 1 or not 0 <= u <= m:
        raise CodeError(f"need 0 <= u <= m and m >= 1, got u={u}, m={m}")
    n = 1 << m
    points = list(range(n)) if points is None else [int(p) for p in points]
    if sorted(points) != list(range(n)):
        raise CodeError("points must be a permutation of 0 .. 2^m - 1")
    coords = [rm_point(p, m) for p in points]
    rows = []
    for mono in rm_monomials(u, m):
        rows.append([int(all(pt[v - 1] for v in mono)) for pt in coords])
    f2 = FieldSpec(2)
    return LinearCode.from_rows(
        f2, rows, f"RM({u},{m})", {"kind": "rm", "u": u, "m": m, "ordering": ordering}
    )


def cyclic_code(field: FieldSpec, n: int, g_desc: Sequence[int]) -> LinearCode:
    """Cyclic code of length ``n`` generated by ``g`` (coefficients highest degree first).

    Codeword coordinates are the coefficients ``c_0 .. c_{n-1}`` of ``m(x) g(x)``.
    """
    g = poly_trim(reversed([field.check(int(c)) for c in g_desc]))
    if not g:
        raise CodeError("generator polynomial is zero")
    if g[-1] != 1:
        raise CodeError("generator polynomial must be monic")
    deg = len(g) - 1
    if deg >= n:
        raise CodeError(f"deg g = {deg} must be < n = {n}")
    xn1 = [field.neg(1)] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(field, xn1, g)
    if rem:
        raise CodeError(f"g does not divide x^{n} - 1 over GF({field.q})")
    k = n - deg
    rows = [[0] * i + g + [0] * (n - deg - 1 - i) for i in range(k)]
    return LinearCode.from_rows(
        field, rows, f"cyclic[{n},{k}] over GF({field.q})", {"kind": "cyclic"}
    )


# omega = 2, omega^2 = 3 in GF(4) with modulus x^2 + x + 1
_HERMITIAN_ROWS = {
    1: (
        (1, 1, 1, 1, 1, 1, 1, 1),
        (0, 1, 2, 2, 2, 3, 3, 3),
        (0, 0, 1, 2, 3, 1, 2, 3),
    ),
    2: (
        (1, 1, 1, 1, 1, 1, 1, 1),
        (0, 1, 2, 3, 2, 3, 2, 3),
        (0, 0, 1, 1, 2, 2, 3, 3),
    ),
}

# ordering 2 visits the points P1, P2, P3, P6, P4, P7, P5, P8 (0-based below)
HERMITIAN_ORDERING_2 = (0, 1, 2, 5, 3, 6, 4, 7)


def hermitian_example(ordering: int = 1) -> LinearCode:
    """The [8, 3, 5] code over GF(4) from eight points of a Hermitian curve."""
    if ordering not in _HERMITIAN_ROWS:
        raise CodeError("ordering must be 1 or 2")
    return LinearCode.from_rows(
        field_from_order(4),
        _HERMITIAN_ROWS[ordering],
        f"Hermitian [8,3,5]_4 ordering {ordering}",
        {"kind": "hermitian", "ordering": ordering},
    )


def agfc_insert(code: LinearCode, f: Sequence[int], pos: int) -> LinearCode:
    """Insert the value ``f . c`` at position ``pos`` (0..n) of every codeword ``c``."""
    if len(f) != code.n:
        raise DimensionError(f"functional of length {len(f)} for n={code.n}")
    f = [code.field.check(int(c)) for c in f]
    if not any(f):
        raise CodeError("the linear functional must be non-trivial")
    if not 0 <= pos <= code.n:
        raise CodeError(f"insertion position {pos} outside 0..{code.n}")
    extra = mat_vec(code.field, code.G, f)
    rows = [r[:pos] + (e,) + r[pos:] for r, e in zip(code.G.to_rows(), extra)]
    meta = code.info
    meta.update({"kind": "agfc", "parent_n": code.n, "parent_kind": meta.get("kind", "")})
    return LinearCode.from_rows(
        code.field, rows, f"AGFC({code.label or 'code'}, position {pos + 1})", meta
    )


def permute_coordinates(code: LinearCode, perm: Sequence[int]) -> LinearCode:
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(code.n)):
        raise CodeError(f"not a permutation of 0..{code.n - 1}: {perm}")
    rows = [[r[p] for p in perm] for r in code.G.to_rows()]
    meta = code.info
    if perm != list(range(code.n)):
        meta["permuted"] = "1"
        if meta.get("kind") == "rm":
            meta["ordering"] = "custom"
    return LinearCode.from_rows(code.field, rows, code.label, meta, n=code.n)


def reverse(code: LinearCode) -> LinearCode:
    return permute_coordinates(code, list(range(code.n - 1, -1, -1)))


def shorten(code: LinearCode, positions: Sequence[int]) -> LinearCode:
    """Subcode vanishing at ``positions``, with those positions deleted."""
    pos = sorted(set(int(p) for p in positions))
    for p in pos:
        if not 0 <= p < code.n:
            raise CodeError(f"position {p} out of range")
    if len(pos) >= code.n:
        raise CodeError("cannot delete every coordinate")
    sub = column_submatrix(code.G, pos)
    # messages m with m . G[:, pos] = 0
    msgs = null_space(sub.transpose()) if pos else FqMatrix.identity(code.field, code.k)
    if msgs.rows == 0:
        raise CodeError("shortening leaves only the zero codeword")
    keep = [j for j in range(code.n) if j not in set(pos)]
    rows = [vec_mat(code.field, m, code.G) for m in msgs.to_rows()]
    rows = [[r[j] for j in keep] for r in rows]
    return LinearCode.from_rows(
        code.field, rows, f"shortened({code.label or 'code'})", {"kind": "shortened"}, n=len(keep)
    )


def random_code(field: FieldSpec, n: int, k: int, rng) -> LinearCode:
    """Uniformly random full-rank generator matrix (rejection sampling)."""
    if not 1 <= k <= n:
        raise CodeError(f"need 1 <= k <= n, got k={k}, n={n}")
    while True:
        rows = [[rng.randrange(field.q) for _ in range(n)] for _ in range(k)]
        G = FqMatrix.from_rows(field, rows, n)
        if rank(G) == k:
            return LinearCode(field, G, f"random[{n},{k}]_{field.q}", (("kind", "random"),))


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^k."""
    if not 0 <= r <= k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rm_dimension(u: int, m: int) -> int:
    return sum(math.comb(m, j) for j in range(u + 1))

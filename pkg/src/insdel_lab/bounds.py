"""Upper bounds on the insdel distance of a linear code.

Every calculator returns a :class:`BoundResult`.  A bound that does not apply
to the code at hand is still returned, with ``applicable=False`` and a reason,
so a report always lists the full set.

Positions inside ``params`` are 1-based, matching the way the formulas are
usually written; the Python API elsewhere is 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Any, Optional, Sequence

import numpy as np

from .codes import (
    Codeword,
    DEFAULT_CODEWORD_GUARD,
    LinearCode,
    encode_array,
    message_array,
    rm_dimension,
)
from .errors import CodeError, GuardExceeded
from .linalg import FqMatrix, column_submatrix, null_space, rref, solve, vec_mat
from .metrics import (
    DEFAULT_SUBSPACE_GUARD,
    ColumnRanks,
    GhwProfile,
    ghw_profile,
    hamming_weight,
    lcs_length,
    plotkin_ghw,
    support,
)

BOUND_NAMES = (
    "t21_search",
    "c21",
    "c22",
    "c23",
    "half_singleton",
    "c24_exact",
    "c24_plotkin",
    "direct_2dH",
    "singleton_2nk1",
    "cz21_2nk",
    "t31_rm",
    "p41",
)

# bounds whose value depends only on Hamming-metric data of the code
ORDERING_FREE = ("c23", "half_singleton", "c24_exact", "c24_plotkin", "direct_2dH",
                 "singleton_2nk1", "cz21_2nk", "p41")


def _jsonable(v: Any) -> Any:
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


@dataclass(frozen=True)
class BoundResult:
    name: str
    value: Optional[int]
    applicable: bool
    reason: str = ""
    witness: Optional[tuple[Codeword, Codeword]] = None
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", _jsonable(dict(self.params)))
        if self.witness is not None:
            a, b = self.witness
            object.__setattr__(
                self, "witness", (tuple(int(v) for v in a), tuple(int(v) for v in b))
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "applicable": self.applicable,
            "reason": self.reason,
            "witness": [list(w) for w in self.witness] if self.witness else None,
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundResult":
        w = d.get("witness")
        return cls(
            name=d["name"],
            value=d["value"],
            applicable=d["applicable"],
            reason=d.get("reason", ""),
            witness=tuple(tuple(x) for x in w) if w else None,
            params=d.get("params", {}),
        )


def _clamp(v: int) -> int:
    return max(v, 2)


def _inapplicable(name: str, reason: str, **params) -> BoundResult:
    return BoundResult(name, None, False, reason, None, params)


class CodeContext:
    """Lazily computed facts about one code, shared by the calculators."""

    def __init__(
        self,
        code: LinearCode,
        codeword_guard: Optional[int] = None,
        subspace_guard: Optional[int] = None,
    ):
        self.code = code
        self.codeword_guard = DEFAULT_CODEWORD_GUARD if codeword_guard is None else codeword_guard
        self.subspace_guard = DEFAULT_SUBSPACE_GUARD if subspace_guard is None else subspace_guard
        self.ranks = ColumnRanks(code)

    @property
    def enumerable(self) -> bool:
        return self.code.size <= self.codeword_guard

    @cached_property
    def words(self) -> np.ndarray:
        """All codewords, or the first ``guard`` of them in message order."""
        limit = None if self.enumerable else self.codeword_guard
        return encode_array(self.code, message_array(self.code.q, self.code.k, limit))

    @cached_property
    def masks(self) -> list[int]:
        nz = self.words != 0
        if self.code.n <= 62:
            return (nz.astype(np.int64) @ (1 << np.arange(self.code.n, dtype=np.int64))).tolist()
        return [sum(1 << j for j, f in enumerate(row) if f) for row in nz.tolist()]

    @cached_property
    def d_H(self) -> Optional[int]:
        if not self.enumerable:
            return None
        return min(m.bit_count() for m in self.masks[1:])

    @cached_property
    def ghw(self) -> Optional[GhwProfile]:
        if not self.enumerable:
            return None
        try:
            return ghw_profile(self.code, self.subspace_guard, self.codeword_guard)
        except GuardExceeded:
            return None

    def word(self, i: int) -> Codeword:
        return tuple(int(v) for v in self.words[i])


def _context(code: LinearCode, ctx: Optional[CodeContext]) -> CodeContext:
    if ctx is None:
        return CodeContext(code)
    if ctx.code is not code:
        raise ValueError("context belongs to a different code")
    return ctx


def _scan_mode(ctx: CodeContext, exhaustive: bool, name: str) -> str:
    if ctx.enumerable:
        return "exhaustive"
    if exhaustive:
        raise GuardExceeded(
            f"{name}: {ctx.code.size} codewords exceed the guard of {ctx.codeword_guard}"
        )
    return "partial"


def _independent_columns(code: LinearCode, positions: Sequence[int]) -> list[int]:
    """Greedy maximal independent subset of the given columns (pivot columns)."""
    positions = sorted(positions)
    sub = column_submatrix(code.G, positions)
    _, pivots = rref(sub)
    return [positions[p] for p in pivots]


# ---------------------------------------------------------------------------
# information-free subset bound and its constructive witness
# ---------------------------------------------------------------------------


def t21_witness(
    code: LinearCode, x: Sequence[int], S: Sequence[int], t: int
) -> tuple[Codeword, Codeword]:
    """Codewords ``a`` and ``a + x`` sharing a common subsequence of length >= n - t - 1.

    ``S`` (0-based) must be information free, and ``x`` must vanish on at
    least ``n - |S| - t`` positions outside ``[min S, max S]``.  The word ``a``
    takes the values ``a_{i_1} = 0`` and ``a_{i_j} = -(x_{i_2} + ... + x_{i_j})``
    on ``S``, so that ``a + x`` repeats ``a`` on ``S`` shifted by one place.
    """
    f = code.field
    n = code.n
    x = tuple(int(v) for v in x)
    S = sorted(set(int(s) for s in S))
    if not S:
        raise CodeError("S must be non-empty")
    if not code.contains(x) or not any(x):
        raise CodeError("x must be a non-zero codeword")
    sub = column_submatrix(code.G, S)
    if len(S) > code.k or len(rref(sub)[1]) != len(S):
        raise CodeError(f"positions {S} are not information free")
    lo, hi = S[0], S[-1]
    zeros = sum(1 for i in range(n) if (i < lo or i > hi) and x[i] == 0)
    if zeros < n - len(S) - t:
        raise CodeError(
            f"x has {zeros} zeros outside [{lo}, {hi}], needs {n - len(S) - t}"
        )
    target = [0]
    for s in S[1:]:
        target.append(f.sub(target[-1], x[s]))
    msg = solve(sub.transpose(), target)
    if msg is None:  # pragma: no cover - excluded by the information-free check
        raise RuntimeError("projection onto an information-free set was not onto")
    a = vec_mat(f, msg, code.G)
    b = tuple(f.add(u, v) for u, v in zip(a, x))
    if lcs_length(a, b) < n - t - 1:  # pragma: no cover - would contradict the construction
        raise RuntimeError("witness construction lost its common subsequence")
    return a, b


def t21_bound_search(
    code: LinearCode, ctx: Optional[CodeContext] = None, exhaustive: bool = True
) -> BoundResult:
    """Minimise ``2 (n - h - z + 1)`` over non-zero codewords and windows ``[a, b]``.

    ``h`` is the rank of the window's columns and ``z`` counts zeros of the
    codeword outside the window.
    """
    ctx = _context(code, ctx)
    mode = _scan_mode(ctx, exhaustive, "t21_search")
    n = code.n
    words = ctx.words[1:]
    if words.shape[0] == 0:
        return _inapplicable("t21_search", "code has a single codeword")
    zero = (words == 0).astype(np.int64)
    before = np.zeros((words.shape[0], n + 1), dtype=np.int64)
    before[:, 1:] = np.cumsum(zero, axis=1)  # zeros in [0, a)
    total = before[:, n]

    best = (-1, 0, 0, 0)  # (h + z, a, b, word row)
    for a in range(n):
        mask = 0
        for b in range(a, n):
            mask |= 1 << b
            h = ctx.ranks.of_mask(mask)
            if h == 0:
                continue
            outside = before[:, a] + (total - before[:, b + 1])
            row = int(np.argmax(outside))
            score = h + int(outside[row])
            if score > best[0]:
                best = (score, a, b, row)
    score, a, b, row = best
    x = ctx.word(row + 1)
    h = ctx.ranks.of_mask(sum(1 << j for j in range(a, b + 1)))
    z = score - h
    t = n - h - z
    S = _independent_columns(code, range(a, b + 1))
    witness = t21_witness(code, x, S, t)
    return BoundResult(
        "t21_search",
        _clamp(2 * (t + 1)),
        True,
        "",
        witness,
        {
            "mode": mode,
            "codewords_scanned": int(words.shape[0]),
            "x": list(x),
            "window": [a + 1, b + 1],
            "h": h,
            "z": z,
            "t": t,
            "S": [s + 1 for s in S],
        },
    )


# ---------------------------------------------------------------------------
# partial-rank corollaries
# ---------------------------------------------------------------------------


def _monic_last(code: LinearCode, x: Codeword) -> Codeword:
    """Scale ``x`` so that its last non-zero coordinate is 1."""
    f = code.field
    last = next(v for v in reversed(x) if v)
    s = f.inv(last)
    return tuple(f.mul(s, v) for v in x)


def c21_bound(
    code: LinearCode, ctx: Optional[CodeContext] = None, exhaustive: bool = True
) -> BoundResult:
    """``min_x 2 (L(x) - S(x) - rank(x, C) + 2)`` over non-zero codewords."""
    ctx = _context(code, ctx)
    mode = _scan_mode(ctx, exhaustive, "c21")
    masks = ctx.masks
    if len(masks) < 2:
        return _inapplicable("c21", "code has a single codeword")
    best = None
    for i in range(1, len(masks)):
        mask = masks[i]
        first = (mask & -mask).bit_length() - 1
        last = mask.bit_length() - 1
        val = last - first - ctx.ranks.of_mask(mask) + 2
        if best is None or val < best[0]:
            best = (val, i)
    val, i = best
    x = _monic_last(code, ctx.word(i))
    mask = masks[i]
    first = (mask & -mask).bit_length() - 1
    last = mask.bit_length() - 1
    r = ctx.ranks.of_mask(mask)
    S = _independent_columns(code, support(x))
    witness = t21_witness(code, x, S, last - first + 1 - r)
    return BoundResult(
        "c21",
        _clamp(2 * val),
        True,
        "",
        witness,
        {
            "mode": mode,
            "codewords_scanned": len(masks) - 1,
            "x": list(x),
            "S_x": first + 1,
            "L_x": last + 1,
            "rank": r,
            "weight": mask.bit_count(),
            "consecutive": last - first + 1 == mask.bit_count(),
        },
    )


def c22_bound(code: LinearCode, ctx: Optional[CodeContext] = None) -> BoundResult:
    """``2 (d_H - k + 1)`` when ``d_H > n/2`` and a minimum-weight codeword has
    consecutive support."""
    ctx = _context(code, ctx)
    n, k = code.n, code.k
    d = ctx.d_H
    if d is None:
        return _inapplicable("c22", "minimum distance unknown (codeword guard exceeded)")
    formula = 2 * (d - k + 1)
    if 2 * d <= n:
        return _inapplicable("c22", f"d_H = {d} is not greater than n/2 = {n / 2}", d_H=d)
    candidates = []
    for i, mask in enumerate(ctx.masks):
        if i and mask.bit_count() == d:
            first = (mask & -mask).bit_length() - 1
            if mask.bit_length() - first == d:
                candidates.append((first, _monic_last(code, ctx.word(i))))
    if not candidates:
        return _inapplicable(
            "c22",
            f"no minimum-weight (weight {d}) codeword has consecutive support",
            d_H=d,
            formula_value=formula,
        )
    first, x = min(candidates)
    S = _independent_columns(code, support(x))
    assert len(S) == k
    witness = t21_witness(code, x, S, d - k)
    return BoundResult(
        "c22",
        _clamp(formula),
        True,
        "",
        witness,
        {"d_H": d, "x": list(x), "S_x": first + 1, "L_x": first + d, "rank": k},
    )


def c23_bound(code: LinearCode, ctx: Optional[CodeContext] = None) -> BoundResult:
    ctx = _context(code, ctx)
    n, k = code.n, code.k
    data_free = max(2 * (n - 2 * k + 2), 2 * (k - 1))
    d = ctx.d_H
    if d is None:
        return _inapplicable(
            "c23", "minimum distance unknown (codeword guard exceeded)", data_free=data_free
        )
    if d >= k:
        branch, value = "d_H >= k", 2 * (n - 2 * k + 2)
    else:
        branch, value = "d_H <= k-1", 2 * (n - k - d + 2)
    return BoundResult(
        "c23",
        _clamp(value),
        True,
        "",
        None,
        {"d_H": d, "branch": branch, "data_free": _clamp(data_free)},
    )


# ---------------------------------------------------------------------------
# half-Singleton bound and its shift-pair construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftWitness:
    """Outcome of the shift-pair construction.

    ``pair`` is ``(y, x)`` where both are codewords and ``x`` is the left cyclic
    shift of ``y``; it is None when every solution is a constant vector.
    """

    pair: Optional[tuple[Codeword, Codeword]]
    solution_dim: int
    diagnostic: str


def _rshift(x: Sequence[int]) -> Codeword:
    return (x[-1],) + tuple(x[:-1])


def lshift(x: Sequence[int]) -> Codeword:
    return tuple(x[1:]) + (x[0],)


def half_singleton_witness(code: LinearCode) -> ShiftWitness:
    """For ``2k > n``: a non-constant codeword whose cyclic shift is a codeword.

    The stacked matrix has columns ``(h_i, h_{i+1 mod n})``, so any solution
    ``x`` is a codeword whose right cyclic shift is one as well.
    """
    n, k = code.n, code.k
    if 2 * k <= n:
        raise CodeError(f"the shift-pair construction needs 2k > n (k={k}, n={n})")
    H = code.H
    rows = [list(r) for r in H.to_rows()]
    rows += [[r[(i + 1) % n] for i in range(n)] for r in H.to_rows()]
    stacked = FqMatrix.from_rows(code.field, rows, n)
    basis = null_space(stacked).to_rows()
    for x in basis:
        if len(set(x)) > 1:
            y = _rshift(x)
            assert code.contains(x) and code.contains(y)
            return ShiftWitness((y, tuple(x)), len(basis), "")
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = tuple(code.field.add(u, v) for u, v in zip(basis[i], basis[j]))
            if len(set(s)) > 1:  # pragma: no cover - a non-constant basis vector exists first
                return ShiftWitness((_rshift(s), s), len(basis), "")
    return ShiftWitness(
        None,
        len(basis),
        f"all {len(basis)} basis solutions of the stacked system are constant vectors",
    )


def half_singleton_bound(code: LinearCode, ctx: Optional[CodeContext] = None) -> BoundResult:
    n, k = code.n, code.k
    value = max(2 * (n - 2 * k + 2), 2)
    witness = None
    params: dict = {"n": n, "k": k}
    if 2 * k > n:
        sw = half_singleton_witness(code)
        witness = sw.pair
        params["shift_solution_dim"] = sw.solution_dim
        if sw.pair is None:
            params["diagnostic"] = sw.diagnostic
    return BoundResult("half_singleton", value, True, "", witness, params)


# ---------------------------------------------------------------------------
# generalized Hamming weight bounds
# ---------------------------------------------------------------------------


def _ghw_minimum(name: str, d: Sequence[int]) -> tuple[int, int, list[int]]:
    terms = [max(2 * (dr - 2 * r + 2), 2) for r, dr in enumerate(d, start=1)]
    value = min(terms)
    return value, terms.index(value) + 1, terms


def c24_bound(code: LinearCode, mode: str = "exact", ctx: Optional[CodeContext] = None) -> BoundResult:
    """``min_r max(2 (d_r - 2r + 2), 2)`` with exact or Plotkin-bounded ``d_r``."""
    n, k, q = code.n, code.k, code.q
    if mode == "plotkin":
        d = [plotkin_ghw(n, k, q, r) for r in range(1, k + 1)]
    elif mode == "exact":
        ctx = _context(code, ctx)
        profile = ctx.ghw
        if profile is None:
            return _inapplicable("c24_exact", "generalized Hamming weights not computed (guard exceeded)")
        d = list(profile.values)
    else:
        raise ValueError(f"mode must be 'exact' or 'plotkin', got {mode!r}")
    value, r, terms = _ghw_minimum(f"c24_{mode}", d)
    return BoundResult(f"c24_{mode}", value, True, "", None, {"r": r, "d_r": d, "terms": terms})


# ---------------------------------------------------------------------------
# direct bounds
# ---------------------------------------------------------------------------


def direct_bounds(code: LinearCode, ctx: Optional[CodeContext] = None) -> list[BoundResult]:
    """``2 d_H``, ``2 (n - k + 1)`` and ``2 (n - k)`` (the last needs ``n > k >= 2``)."""
    ctx = _context(code, ctx)
    n, k = code.n, code.k
    d = ctx.d_H
    if d is None:
        first = _inapplicable("direct_2dH", "minimum distance unknown (codeword guard exceeded)")
    else:
        first = BoundResult("direct_2dH", 2 * d, True, "", None, {"d_H": d})
    single = BoundResult("singleton_2nk1", 2 * (n - k + 1), True, "", None, {})
    if n > k >= 2:
        cz = BoundResult("cz21_2nk", 2 * (n - k), True, "", None, {})
    else:
        cz = _inapplicable("cz21_2nk", f"needs n > k >= 2 (n={n}, k={k})")
    return [first, single, cz]


# ---------------------------------------------------------------------------
# Reed-Muller and cyclic/AGFC families
# ---------------------------------------------------------------------------


def t31_rm_bound(u: int, m: int) -> BoundResult:
    """``2 (1 + sum_{j=u+1}^{m-u} C(m-u, j))`` for RM(u, m) with ``u < m/2`` in the
    ordering that puts the block ``x_1 = ... = x_u = 1`` last."""
    if not (u >= 0 and 2 * u < m):
        raise CodeError(f"needs 0 <= u < m/2, got u={u}, m={m}")
    value = 2 * (1 + sum(math.comb(m - u, j) for j in range(u + 1, m - u + 1)))
    block_rank = rm_dimension(u, m - u)
    weight = 2 ** (m - u)
    identity = 2 * (weight - block_rank + 1)
    if identity != value:  # pragma: no cover - binomial identity
        raise RuntimeError("weight/rank identity failed")
    return BoundResult(
        "t31_rm",
        value,
        True,
        "",
        None,
        {"u": u, "m": m, "block_rank": block_rank, "block_weight": weight, "identity_value": identity},
    )


def t31_for_code(code: LinearCode) -> BoundResult:
    info = code.info
    if info.get("kind") != "rm":
        return _inapplicable("t31_rm", "not a Reed-Muller code")
    u, m = int(info["u"]), int(info["m"])
    ordering = info.get("ordering")
    if not 2 * u < m:
        return _inapplicable("t31_rm", f"needs u < m/2 (u={u}, m={m})")
    # the default binary-counter order already ends with the x_1 = ... = x_u = 1 block
    special = ordering in ("t31", "default") or (ordering == "hyperplane" and u == 1)
    if not special:
        return _inapplicable("t31_rm", f"coordinate ordering {ordering!r} is not the block ordering")
    return t31_rm_bound(u, m)


def p41_bounds(n: int, k: int, q: int) -> tuple[list[BoundResult], list[BoundResult]]:
    """Per-r values for a Plotkin-meeting cyclic code and for its AGFC extension.

    The Plotkin value ``n (q^k - q^(k-r)) / (q^k - 1)`` is floored before use.
    """
    cyclic, agfc = [], []
    for r in range(1, k + 1):
        d_r = plotkin_ghw(n, k, q, r)
        raw_c = 2 * (d_r - 2 * r + 2)
        raw_a = 2 * (d_r - 2 * r + 3)
        common = {"r": r, "d_r_plotkin": d_r}
        cyclic.append(BoundResult("p41", _clamp(raw_c), True, "", None, {**common, "variant": "cyclic", "raw": raw_c}))
        agfc.append(BoundResult("p41", _clamp(raw_a), True, "", None, {**common, "variant": "agfc", "raw": raw_a}))
    return cyclic, agfc


def p41_for_code(code: LinearCode) -> BoundResult:
    info = code.info
    kind = info.get("kind")
    if kind == "cyclic":
        results = p41_bounds(code.n, code.k, code.q)[0]
        variant, n0 = "cyclic", code.n
    elif kind == "agfc":
        n0 = int(info["parent_n"])
        results = p41_bounds(n0, code.k, code.q)[1]
        variant = "agfc"
    else:
        return _inapplicable("p41", "stated for cyclic codes and their AGFC extensions")
    best = min(results, key=lambda b: (b.value, b.params["r"]))
    return BoundResult(
        "p41",
        best.value,
        True,
        "",
        None,
        {"variant": variant, "n": n0, "r": best.params["r"], "values": [b.value for b in results]},
    )


# ---------------------------------------------------------------------------


def all_bounds(code: LinearCode, ctx: Optional[CodeContext] = None) -> list[BoundResult]:
    """Every bound, in ``BOUND_NAMES`` order."""
    ctx = _context(code, ctx)
    if code.size < 2:
        return [_inapplicable(name, "code has a single codeword") for name in BOUND_NAMES]
    results = [
        t21_bound_search(code, ctx, exhaustive=False),
        c21_bound(code, ctx, exhaustive=False),
        c22_bound(code, ctx),
        c23_bound(code, ctx),
        half_singleton_bound(code, ctx),
        c24_bound(code, "exact", ctx),
        c24_bound(code, "plotkin", ctx),
        *direct_bounds(code, ctx),
        t31_for_code(code),
        p41_for_code(code),
    ]
    assert tuple(r.name for r in results) == BOUND_NAMES
    return results

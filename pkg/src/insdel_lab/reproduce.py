"""Pinned reference values: every worked number is recomputed and compared.

Statuses: PASS, FAIL (a value the exact computation should confirm did not
match) and WARN (a printed value disagreeing with its own formula; both
numbers are shown, and the check never fails the run).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .bounds import (
    CodeContext,
    c21_bound,
    c22_bound,
    c24_bound,
    half_singleton_bound,
    half_singleton_witness,
    lshift,
    t31_rm_bound,
)
from .codes import (
    HERMITIAN_ORDERING_2,
    hermitian_example,
    permute_coordinates,
    random_code,
    reed_muller,
)
from .galois import field_new
from .metrics import insdel_code_exact, insdel_distance, lcs_length
from .ordering import rm_hyperplane_ordering, rm_t31_ordering

CASES = ("hermitian", "rm", "halfsingleton")

# ω = 2, ω² = 3 in the default GF(4)
HERMITIAN_PAIR_1 = ((0, 0, 1, 2, 3, 1, 2, 3), (0, 0, 2, 3, 1, 2, 3, 1))
HERMITIAN_COMMON_1 = (0, 0, 2, 3, 1, 2, 3)
HERMITIAN_PAIR_2 = ((0, 0, 1, 1, 2, 2, 3, 3), (0, 0, 2, 2, 3, 3, 1, 1))
HERMITIAN_C22_WORD = (3, 2, 1, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class Check:
    case: str
    name: str
    reference: str
    computed: object
    expected: object
    provenance: str
    status: str

    def line(self) -> str:
        return (
            f"{self.status:4}  {self.case}/{self.name}: computed {self.computed}, "
            f"expected {self.expected}  [{self.provenance}; {self.reference}]"
        )


def _check(case, name, reference, computed, expected, provenance, warn=False) -> Check:
    status = "PASS" if computed == expected else ("WARN" if warn else "FAIL")
    return Check(case, name, reference, computed, expected, provenance, status)


def _is_subsequence(s, a) -> bool:
    it = iter(a)
    return all(any(c == v for v in it) for c in s)


def hermitian_checks() -> list[Check]:
    case = "hermitian"
    h1 = hermitian_example(1)
    h2 = hermitian_example(2)
    ctx1 = CodeContext(h1)
    ref1 = "worked example, ordering 1"
    ref2 = "worked example, ordering 2"
    out = []

    ex1 = insdel_code_exact(h1)
    out.append(_check(case, "exact_distance_ordering1", ref1,
                      (ex1.distance, ex1.pairs_examined), (2, 2016), "published"))

    a, b = HERMITIAN_PAIR_1
    common_ok = _is_subsequence(HERMITIAN_COMMON_1, a) and _is_subsequence(HERMITIAN_COMMON_1, b)
    out.append(_check(case, "printed_pair_lcs", ref1,
                      (h1.contains(a), h1.contains(b), lcs_length(a, b), common_ok,
                       ex1.witness_pair == HERMITIAN_PAIR_1),
                      (True, True, 7, True, True), "published"))

    out.append(_check(case, "hamming_and_ghw", ref1,
                      (ctx1.d_H, ctx1.ghw.values), (5, (5, 7, 8)), "published"))

    c22 = c22_bound(h1, ctx1)
    out.append(_check(case, "c22_bound", ref1,
                      (c22.value, c22.applicable, c22.params.get("x")),
                      (6, True, list(HERMITIAN_C22_WORD)), "published"))

    out.append(_check(case, "half_singleton", ref1, half_singleton_bound(h1, ctx1).value, 8, "published"))
    out.append(_check(case, "c24_exact", ref1, c24_bound(h1, "exact", ctx1).value, 8, "published"))

    a2, b2 = HERMITIAN_PAIR_2
    ex2 = insdel_code_exact(h2)
    same = permute_coordinates(h1, HERMITIAN_ORDERING_2).same_code(h2)
    out.append(_check(case, "ordering2_pair_and_c22", ref2,
                      (same, h2.contains(a2), h2.contains(b2), lcs_length(a2, b2),
                       insdel_distance(a2, b2), c22_bound(h2).applicable, ex2.distance <= 4),
                      (True, True, True, 6, 4, False, True), "published"))
    return out


def rm_checks() -> list[Check]:
    case = "rm"
    out = []
    expected_t31 = {(1, 3): 4, (1, 4): 10, (2, 5): 4}
    for (u, m), want in expected_t31.items():
        formula = t31_rm_bound(u, m).value
        code = reed_muller(u, m, rm_t31_ordering(u, m), ordering="t31")
        c21 = c21_bound(code).value
        out.append(_check(case, f"t31_block_ordering_{u}_{m}", "block-ordering bound",
                          (formula, c21), (want, want), "derived"))
    for m in (3, 4):
        code = reed_muller(1, m, rm_hyperplane_ordering(m), ordering="hyperplane")
        bound = t31_rm_bound(1, m).value
        exact = insdel_code_exact(code).distance
        out.append(_check(case, f"hyperplane_exact_le_bound_1_{m}", "first-order hyperplane ordering",
                          exact <= bound, True, "derived"))
    for m in (3, 4, 5):
        printed = 2 * (2 ** (m - 1) - m)
        out.append(_check(case, f"first_order_printed_{m}", "printed first-order value 2(2^(m-1)-m)",
                          t31_rm_bound(1, m).value, printed, "published, flagged", warn=True))
    for m1 in (2, 3):
        printed = (m1 * m1 + 5 * m1 + 8) // 2
        value = t31_rm_bound(m1 - 1, 2 * m1 + 1).value
        out.append(_check(case, f"poly_growth_printed_m1_{m1}", "printed (m1^2+5m1+8)/2",
                          value, printed, "published, flagged", warn=True))
    return out


def halfsingleton_checks(instances: int = 20, seed: int = 1) -> list[Check]:
    case = "halfsingleton"
    rng = random.Random(seed)
    verified = tried = 0
    failures = []
    while verified < instances and tried < 50 * instances:
        tried += 1
        field = field_new(rng.choice((2, 3)))
        n = rng.randint(3, 8)
        k = rng.randint(n // 2 + 1, n)
        code = random_code(field, n, k, rng)
        pair = half_singleton_witness(code).pair
        if pair is None:
            continue
        y, x = pair
        ok = code.contains(y) and code.contains(x) and x == lshift(y) and insdel_distance(x, y) == 2
        verified += 1
        if not ok:
            failures.append((n, k))
    return [
        _check(case, "shift_pair_witnesses", "shift-pair construction for 2k > n",
               (verified, failures), (instances, []), "published")
    ]


RUNNERS: dict[str, Callable[[], list[Check]]] = {
    "hermitian": hermitian_checks,
    "rm": rm_checks,
    "halfsingleton": halfsingleton_checks,
}


def run(case: str = "all") -> list[Check]:
    if case == "all":
        return [c for name in CASES for c in RUNNERS[name]()]
    if case not in RUNNERS:
        raise ValueError(f"unknown case {case!r}; choose from {CASES + ('all',)}")
    return RUNNERS[case]()

from __future__ import annotations

import random

import pytest

from insdel_lab.codes import hermitian_example, random_code
from insdel_lab.galois import field_from_order


@pytest.fixture(scope="session")
def herm1():
    return hermitian_example(1)


@pytest.fixture(scope="session")
def herm2():
    return hermitian_example(2)


def random_codes(count, seed, qs=(2, 3, 4), n_range=(3, 10), k_range=(1, 4), max_size=4096):
    """Seeded random codes with ``q^k <= max_size``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.choice(qs)
        n = rng.randint(*n_range)
        k = rng.randint(k_range[0], min(k_range[1], n))
        if q**k > max_size:
            continue
        out.append(random_code(field_from_order(q), n, k, rng))
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

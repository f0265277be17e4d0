"""Arithmetic in small finite fields GF(p^m).

Elements are plain integers in ``[0, q)``.  The base-p digits ``d_0 .. d_{m-1}``
of an integer are the coefficients of ``d_0 + d_1*a + ... + d_{m-1}*a^(m-1)``
where ``a`` is a root of the field modulus.  With the default GF(4) modulus
``x^2 + x + 1`` the root ``a`` (usually written omega) is 2 and ``a^2`` is 3.

Moduli are written highest degree first, exactly as in the ``field`` header of
code files: ``x^2 + x + 1`` is ``(1, 1, 1)`` and ``x^3 + x + 1`` is ``(1, 0, 1, 1)``.
Polynomials handed to the ``poly_*`` helpers use the opposite convention
(coefficient lists indexed by degree), which is what the arithmetic wants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import FieldError, FieldMismatchError

MAX_ORDER = 1024

DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 0, 1, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (2, 4): (1, 0, 0, 1, 1),  # x^4 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``p**m``; raise FieldError if it is not a prime power."""
    if q < 2:
        raise FieldError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


# ---------------------------------------------------------------------------
# polynomials over F_p with integer coefficients (index = degree)
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _prime_poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = (a[-1] * lead_inv) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _is_irreducible_over_prime(coeffs_desc: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. m//2."""
    poly = list(reversed(coeffs_desc))
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not _prime_poly_rem(poly, divisor, p):
                return False
    return True


# ---------------------------------------------------------------------------
# lookup tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Tables:
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    add_l: tuple[tuple[int, ...], ...]
    mul_l: tuple[tuple[int, ...], ...]
    neg_l: tuple[int, ...]
    inv_l: tuple[int, ...]


def _digits(value: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(value % p)
        value //= p
    return out


def _from_digits(digits: Sequence[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def _mul_direct(a: int, b: int, p: int, m: int, modulus: Optional[tuple[int, ...]]) -> int:
    """Multiply by schoolbook polynomial product then reduction."""
    if m == 1:
        return (a * b) % p
    da, db = _digits(a, p, m), _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    assert modulus is not None
    rem = _prime_poly_rem(prod, list(reversed(modulus)), p)
    return _from_digits(rem + [0] * (m - len(rem)), p)


@lru_cache(maxsize=None)
def _build_tables(p: int, m: int, modulus: Optional[tuple[int, ...]]) -> _Tables:
    q = p**m
    values = np.arange(q, dtype=np.int64)
    add = np.zeros((q, q), dtype=np.int64)
    neg = np.zeros(q, dtype=np.int64)
    weight = 1
    for _ in range(m):
        d = (values // weight) % p
        add += ((d[:, None] + d[None, :]) % p) * weight
        neg += ((-d) % p) * weight
        weight *= p

    if m == 1:
        mul = np.outer(values, values) % p
        inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, q)], dtype=np.int64)
    else:
        # exp/log tables from a primitive element found by direct multiplication
        for g in range(2, q):
            exp = [1]
            cur = 1
            for _ in range(q - 2):
                cur = _mul_direct(cur, g, p, m, modulus)
                if cur == 1:
                    break
                exp.append(cur)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - a finite field always has a primitive element
            raise FieldError("no primitive element found; modulus is not irreducible")
        exp_a = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        mul = exp_a[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp_a[(-log[1:]) % (q - 1)]

    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return _Tables(
        add=add,
        mul=mul,
        neg=neg,
        inv=inv,
        add_l=tuple(tuple(r) for r in add.tolist()),
        mul_l=tuple(tuple(r) for r in mul.tolist()),
        neg_l=tuple(neg.tolist()),
        inv_l=tuple(inv.tolist()),
    )


# ---------------------------------------------------------------------------
# field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field of order ``p**m``.

    ``modulus`` is the monic irreducible defining polynomial, highest degree
    first; it is ``None`` for prime fields.  Irreducibility is verified on
    construction.
    """

    p: int
    m: int = 1
    modulus: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.m}")
        if self.p**self.m > MAX_ORDER:
            raise FieldError(f"field order {self.p}^{self.m} exceeds {MAX_ORDER}")
        if self.m == 1:
            if self.modulus is not None and len(self.modulus) != 2:
                raise FieldError("prime fields take no modulus")
            object.__setattr__(self, "modulus", None)
            return
        modulus = self.modulus
        if modulus is None:
            modulus = DEFAULT_MODULI.get((self.p, self.m))
            if modulus is None:
                raise FieldError(
                    f"GF({self.p}^{self.m}) has no built-in modulus; supply one explicitly"
                )
        modulus = tuple(int(c) % self.p for c in modulus)
        if len(modulus) != self.m + 1:
            raise FieldError(f"modulus must have {self.m + 1} coefficients, got {len(modulus)}")
        if modulus[0] != 1:
            raise FieldError("modulus must be monic")
        if not _is_irreducible_over_prime(modulus, self.p):
            raise FieldError(f"modulus {modulus} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", modulus)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def tables(self) -> _Tables:
        return _build_tables(self.p, self.m, self.modulus)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.modulus})"

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        return self.tables.add_l[a][b]

    def sub(self, a: int, b: int) -> int:
        t = self.tables
        return t.add_l[a][t.neg_l[b]]

    def neg(self, a: int) -> int:
        return self.tables.neg_l[a]

    def mul(self, a: int, b: int) -> int:
        return self.tables.mul_l[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.tables.inv_l[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def mul_direct(self, a: int, b: int) -> int:
        """Table-free multiplication (polynomial product and reduction)."""
        return _mul_direct(self.check(a), self.check(b), self.p, self.m, self.modulus)

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def from_digits(self, digits: Sequence[int]) -> int:
        return _from_digits([d % self.p for d in digits], self.p)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, self.check(value))

    def header(self) -> str:
        """The ``field`` line used in code files."""
        if self.m == 1:
            return f"field p={self.p} m=1"
        return f"field p={self.p} m={self.m} poly={','.join(map(str, self.modulus))}"


def field_new(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    return FieldSpec(p, m, tuple(modulus) if modulus is not None else None)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) with the default modulus (prime fields and q in {4, 8, 9, 16})."""
    p, m = prime_power(q)
    return FieldSpec(p, m)


# ---------------------------------------------------------------------------
# elements with operator overloading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def __post_init__(self) -> None:
        self.field.check(self.value)

    def _other(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


def _same_field(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, f.add(a.value, b.value))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, f.mul(a.value, b.value))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.neg(a.value))


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


# ---------------------------------------------------------------------------
# polynomials over GF(q), coefficient lists indexed by degree
# ---------------------------------------------------------------------------


def poly_trim(a: Sequence[int]) -> list[int]:
    return _trim(list(a))


def poly_mul(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _trim(out)


def poly_divmod(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(len(a) - len(b) + 1, 0)
    lead_inv = field.inv(b[-1])
    while len(a) >= len(b):
        coef = field.mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        quot[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(coef, c))
        _trim(a)
    return _trim(quot), a


def iter_vectors(field: FieldSpec, length: int) -> Iterator[tuple[int, ...]]:
    """All vectors of ``length`` in lexicographic order (first coordinate slowest)."""
    return itertools.product(range(field.q), repeat=length)

"""Exact arithmetic in GF(q) for prime-power q.

Elements are encoded as integers 0..q-1: for GF(p^e) the base-p digits of the
integer are the coefficients of a polynomial of degree < e over GF(p), with
the constant term in the least significant digit.  The reducing modulus is
the lexicographically smallest monic irreducible polynomial of degree e
(coefficients compared from the x^(e-1) term downward), so construction is
fully deterministic.  Note the encodings are therefore *not* Conway
compatible.

Extension fields of order up to 2^12 precompute discrete log / antilog
tables; larger fields fall back to per-operation polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, InvalidParams, NotPrimePower

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 1 << 12


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n <= 2^16 here)."""
    factors: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


# ---------------------------------------------------------------------------
# Polynomials over GF(p): tuples of coefficients, constant term first,
# trimmed of trailing zeros (the zero polynomial is the empty tuple).


def _trim(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return coeffs[:i]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(tuple(out))


def _poly_mod(a: tuple[int, ...], div: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a modulo a *monic* divisor."""
    rem = list(a)
    dd = len(div) - 1
    for top in range(len(rem) - 1, dd - 1, -1):
        c = rem[top]
        if c:
            for j in range(dd + 1):
                rem[top - dd + j] = (rem[top - dd + j] - c * div[j]) % p
    return _trim(tuple(rem))


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for idx in range(p**d):
            low = tuple((idx // p**j) % p for j in range(d))
            if not _poly_mod(poly, low + (1,), p):
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Candidates are swept so that higher-degree coefficients vary slowest,
    which makes integer order agree with high-degree-first lexicographic
    comparison.
    """
    if e == 1:
        return (0, 1)  # the polynomial x
    for idx in range(p**e):
        low = tuple((idx // p**j) % p for j in range(e))
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


class FiniteField:
    """The finite field GF(q), q = p^e; immutable and shareable.

    Use :func:`make_field` rather than constructing directly — it caches,
    so repeated requests return the identical object.
    """

    __slots__ = ("q", "p", "e", "modulus", "_exp", "_log")

    def __init__(self, q: int):
        if q < 2:
            raise InvalidParams(f"field order must be >= 2, got {q}")
        if q > MAX_ORDER:
            raise InvalidParams(f"field order {q} exceeds supported maximum {MAX_ORDER}")
        factors = factorize(q)
        if len(factors) != 1:
            raise NotPrimePower(f"{q} = {' * '.join(f'{p}^{e}' if e > 1 else str(p) for p, e in sorted(factors.items()))} is not a prime power")
        (self.p, self.e), = factors.items()
        self.q = q
        self.modulus = _smallest_irreducible(self.p, self.e)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.e > 1 and q <= _TABLE_LIMIT:
            self._build_log_tables()

    # -- encoding helpers ---------------------------------------------------

    def _decode(self, a: int) -> tuple[int, ...]:
        p = self.p
        return _trim(tuple((a // p**j) % p for j in range(self.e)))

    def _encode(self, poly: tuple[int, ...]) -> int:
        p = self.p
        val = 0
        for c in reversed(poly):
            val = val * p + c
        return val

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def _raw_pow(self, a: int, m: int) -> int:
        result, base = 1, a
        while m > 0:
            if m & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            m >>= 1
        return result

    def _build_log_tables(self) -> None:
        q = self.q
        group_factors = factorize(q - 1)
        gen = 1
        for g in range(1, q):
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in group_factors):
                gen = g
                break
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, gen)
        self._exp, self._log = exp, log

    def _check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise InvalidParams(f"{a!r} is not a canonical element of {self}")
        return a

    # -- arithmetic on canonical integer encodings --------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.e == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._raw_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        if a == 0:
            if m < 0:
                raise DivisionByZero(f"zero has no negative powers in {self}")
            return 1 if m == 0 else 0
        r = m % (self.q - 1)
        if self.e == 1:
            return pow(a, r, self.p)
        if self._exp is not None:
            return self._exp[(self._log[a] * r) % (self.q - 1)]
        return self._raw_pow(a, r)

    # -- element-level API ---------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self._check(value), self)

    def elements(self) -> list["FieldElement"]:
        """All q elements in canonical encoding order 0, 1, ..., q-1."""
        return [FieldElement(v, self) for v in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.q == self.q and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def make_field(q: int) -> FiniteField:
    """Return the field of order q (cached, so construction is deterministic).

    Raises NotPrimePower when q has two or more distinct prime factors.
    """
    return FiniteField(q)


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific FiniteField, supporting operator syntax.

    Mixing elements of different fields raises FieldMismatch.  Plain ints
    are accepted on either side and validated against the field.
    """

    value: int
    field: FiniteField

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field} elements")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field._check(other)
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, value: int) -> "FieldElement":
        return FieldElement(value, self.field)

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.div(v, self.value))

    def __pow__(self, m: int):
        return self._wrap(self.field.pow(self.value, m))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"GF({self.field.q}):{self.value}"

"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields F_p.

Scalars are plain Python objects (gmpy2.mpq for rationals, small ints for
prime fields); every arithmetic operation goes through a Field instance so
there is exactly one place where reduction and canonicalisation happen.
No floating point anywhere.
"""
from __future__ import annotations

from typing import Iterable

try:
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _rat


class FieldError(ValueError):
    """Invalid field construction or scalar parse."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common scalar interface; instances are stateless and hashable.

    Scalars are kept canonical (mpq in lowest terms, ints as least
    non-negative residues), so zero-tests may use plain truthiness.
    """

    kind: str
    zero = None  # set by subclasses
    one = None

    def __repr__(self):
        return f"Field({self.kind})"

    # -- subclass API -------------------------------------------------
    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    # -- shared helpers -----------------------------------------------
    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def eq(self, a, b) -> bool:
        return a == b

    def sum(self, items: Iterable):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total

    def to_str(self, a) -> str:
        return str(a)


class RationalField(Field):
    """Q with gmpy2.mpq scalars, always lowest terms, positive denominator."""

    kind = "rational"
    zero = _rat(0)
    one = _rat(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.kind)

    def from_int(self, n: int):
        return _rat(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / _rat(a)

    def parse(self, s: str):
        try:
            return _rat(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational scalar {s!r}") from exc


class PrimeField(Field):
    """F_p with int scalars stored as least non-negative residues."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"Field(F_{self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def parse(self, s: str):
        try:
            return int(s.strip(), 10) % self.p
        except ValueError as exc:
            raise FieldError(f"bad prime-field scalar {s!r}") from exc


def field_from_spec(spec) -> Field:
    """Build a field from its serialised form {"kind": ...}."""
    if not isinstance(spec, dict):
        raise FieldError(f"field spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "rational":
        return RationalField()
    if kind == "prime":
        try:
            modulus = int(spec["modulus"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(f"prime field needs an integer modulus: {exc}") from exc
        return PrimeField(modulus)
    raise FieldError(f"unknown field kind {kind!r}")


def field_to_spec(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"kind": "prime", "modulus": field.p}
    return {"kind": "rational"}

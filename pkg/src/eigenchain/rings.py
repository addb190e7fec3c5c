"""Exact coefficient rings and scalars.

Three rings are supported: the rationals, prime fields F_p, and the
integers.  Values are stored as plain Python objects (``Fraction`` for Q,
``int`` for Z and for F_p residues in ``[0, p)``), so all arithmetic is
exact and arbitrary precision.  Matrix code operates on these raw values
directly and calls ``ring.reduce`` after accumulating; the :class:`Scalar`
wrapper is the user-facing pairing of a value with its ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotInvertible, ParseError, RingMismatch, ValidationError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set covers all n < 3.3e24.
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Rationals:
    """The field Q; values are ``fractions.Fraction`` in lowest terms."""

    is_field = True
    needs_reduction = False

    def normalize(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise ParseError(f"cannot coerce {x!r} into Q")

    def reduce(self, x):
        return x

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero has no inverse in Q")
        return 1 / Fraction(a)

    def is_unit(self, a) -> bool:
        return a != 0

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from None

    def render(self, x) -> str:
        return str(Fraction(x))

    @property
    def json_tag(self):
        return "Q"

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; values are ``int`` residues in ``[0, p)``."""

    p: int

    is_field = True
    needs_reduction = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValidationError(f"{self.p} is not prime")

    def normalize(self, x) -> int:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ParseError(f"cannot coerce non-integer {x} into F_{self.p}")
            x = x.numerator
        if isinstance(x, int):
            return x % self.p
        raise ParseError(f"cannot coerce {x!r} into F_{self.p}")

    def reduce(self, x):
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        try:
            return pow(a, -1, self.p)
        except ValueError:
            raise NotInvertible(f"0 has no inverse in F_{self.p}") from None

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def parse(self, text: str) -> int:
        try:
            value = int(text.strip())
        except ValueError as exc:
            raise ParseError(f"bad residue {text!r}: {exc}") from None
        return value % self.p

    def render(self, x) -> str:
        return str(x % self.p)

    @property
    def json_tag(self):
        return {"Fp": self.p}

    def __str__(self):
        return f"F{self.p}"


@dataclass(frozen=True)
class Integers:
    """The ring Z; values are arbitrary-precision ``int``."""

    is_field = False
    needs_reduction = False

    def normalize(self, x) -> int:
        if isinstance(x, bool):
            raise ParseError("booleans are not integers")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ParseError(f"cannot coerce non-integer {x} into Z")
            return x.numerator
        if isinstance(x, str):
            return self.parse(x)
        raise ParseError(f"cannot coerce {x!r} into Z")

    def reduce(self, x):
        return x

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in Z")

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def parse(self, text: str) -> int:
        try:
            return int(text.strip())
        except ValueError as exc:
            raise ParseError(f"bad integer {text!r}: {exc}") from None

    def render(self, x) -> str:
        return str(x)

    @property
    def json_tag(self):
        return "Z"

    def __str__(self):
        return "Z"


Ring = Union[Rationals, PrimeField, Integers]

QQ = Rationals()
ZZ = Integers()


def GF(p: int) -> PrimeField:
    """Prime field of order ``p``."""
    return PrimeField(p)


def ring_from_tag(tag) -> Ring:
    """Inverse of ``ring.json_tag``."""
    if tag == "Q":
        return QQ
    if tag == "Z":
        return ZZ
    if isinstance(tag, dict) and set(tag) == {"Fp"}:
        return PrimeField(int(tag["Fp"]))
    raise ParseError(f"unknown ring tag {tag!r}")


@dataclass(frozen=True)
class Scalar:
    """An exact ring element paired with its ring.

    Arithmetic between scalars of different rings raises
    :class:`~eigenchain.errors.RingMismatch`; division/inversion outside
    the units raises :class:`~eigenchain.errors.NotInvertible`.
    """

    ring: Ring
    value: object

    @staticmethod
    def of(ring: Ring, value) -> "Scalar":
        return Scalar(ring, ring.normalize(value))

    def _coerced(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar.of(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring.add(self.value, self.ring.neg(other.value)))

    def __mul__(self, other):
        other = self._coerced(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def render(self) -> str:
        return self.ring.render(self.value)

    @staticmethod
    def parse(ring: Ring, text: str) -> "Scalar":
        return Scalar(ring, ring.parse(text))

    def __str__(self):
        return self.render()

"""Exact coefficient arithmetic over the rationals, the integers and Z/m.

A ring is described by a hashable RingSpec.  Elements are stored as plain
Python values (Fraction over Q, int over Z, canonical residue in [0, m) over
Z/m) and all arithmetic goes through the RingSpec so the polynomial layer can
stay representation-agnostic.  The Coefficient wrapper pairs a value with its
ring for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, RingMismatch

# Moduli must fit in a machine word.
MAX_MODULUS = 2**63 - 1

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of Q, Z, or Z/m, together with exact arithmetic on raw values.

    kind is "Q", "Z" or "Zmod"; modulus is set exactly for "Zmod".
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Q", "Z", "Zmod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod":
            m = self.modulus
            if not isinstance(m, int) or m < 2:
                raise ValueError("modulus must be an integer >= 2")
            if m > MAX_MODULUS:
                raise ValueError(f"modulus {m} exceeds the machine-word bound {MAX_MODULUS}")
        elif self.modulus is not None:
            raise ValueError(f"ring {self.kind} takes no modulus")

    # -- construction ------------------------------------------------------

    @staticmethod
    def rationals() -> "RingSpec":
        return RingSpec("Q")

    @staticmethod
    def integers() -> "RingSpec":
        return RingSpec("Z")

    @staticmethod
    def modular(m: int) -> "RingSpec":
        return RingSpec("Zmod", m)

    @staticmethod
    def parse(text: str) -> "RingSpec":
        """Parse a ring description: "Q", "Z" or "Z/<m>"."""
        t = text.strip()
        if t == "Q":
            return RingSpec.rationals()
        if t == "Z":
            return RingSpec.integers()
        m = re.fullmatch(r"Z/(\d+)", t)
        if m:
            try:
                return RingSpec.modular(int(m.group(1)))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown ring {text!r}; expected Q, Z or Z/<m>")

    def __str__(self) -> str:
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        return self.kind

    # -- structural properties --------------------------------------------

    @property
    def is_field(self) -> bool:
        if self.kind == "Q":
            return True
        if self.kind == "Z":
            return False
        return _is_prime(self.modulus)  # type: ignore[arg-type]

    @property
    def two_invertible(self) -> bool:
        """Whether 2 has a multiplicative inverse in this ring."""
        if self.kind == "Q":
            return True
        if self.kind == "Z":
            return False
        return self.modulus % 2 == 1  # type: ignore[operator]

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "Zmod" else 0  # type: ignore[return-value]

    # -- raw value arithmetic ----------------------------------------------
    #
    # Raw values: Fraction (Q), int (Z), int residue in [0, m) (Zmod).

    def normalize(self, value):
        """Coerce an int / Fraction into this ring's canonical raw form."""
        if self.kind == "Q":
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot interpret {value!r} as a rational")
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if not isinstance(value, int):
            raise TypeError(f"cannot interpret {value!r} over {self}")
        if self.kind == "Z":
            return value
        return value % self.modulus  # type: ignore[operator]

    def from_fraction(self, q: Fraction):
        """Map a rational into the ring; raises ValueError when impossible."""
        if self.kind == "Q":
            return q
        if q.denominator == 1:
            return self.normalize(q.numerator)
        if self.kind == "Z":
            raise ValueError(f"{q} is not an integer")
        inv = self.invert(q.denominator % self.modulus)  # type: ignore[operator]
        if inv is None:
            raise ValueError(f"denominator {q.denominator} is not invertible in {self}")
        return q.numerator * inv % self.modulus  # type: ignore[operator]

    def zero(self):
        return self.normalize(0)

    def one(self):
        return self.normalize(1)

    def add(self, a, b):
        if self.kind == "Zmod":
            return (a + b) % self.modulus  # type: ignore[operator]
        return a + b

    def sub(self, a, b):
        if self.kind == "Zmod":
            return (a - b) % self.modulus  # type: ignore[operator]
        return a - b

    def neg(self, a):
        if self.kind == "Zmod":
            return -a % self.modulus  # type: ignore[operator]
        return -a

    def mul(self, a, b):
        if self.kind == "Zmod":
            return a * b % self.modulus  # type: ignore[operator]
        return a * b

    def invert(self, a):
        """Multiplicative inverse, or None when the nonzero value has none.

        Inverting zero raises ZeroDivisionError; that is an error, whereas a
        None result is an ordinary answer (e.g. 2 over Z, 3 over Z/6).
        """
        if self.is_zero(a):
            raise ZeroDivisionError(f"0 is not invertible in {self}")
        if self.kind == "Q":
            return 1 / a
        if self.kind == "Z":
            return a if a in (1, -1) else None
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            return None

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return not self.is_zero(a) and self.invert(a) is not None

    def format_value(self, a) -> str:
        """Canonical text: integers as-is, rationals as n/d, residues in [0, m)."""
        if self.kind == "Q" and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a) if self.kind != "Q" else a.numerator)

    def parse_value(self, text: str):
        """Parse coefficient text: an integer like "-3" or a fraction "3/4"."""
        t = text.strip()
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", t)
        if not m:
            raise ParseError(f"malformed coefficient {text!r}")
        num = int(m.group(1))
        if m.group(2) is None:
            return self.normalize(num)
        den = int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        try:
            return self.from_fraction(Fraction(num, den))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


#: Shared ring instances for the two parameter-free rings.
QQ = RingSpec.rationals()
ZZ = RingSpec.integers()


@dataclass(frozen=True)
class Coefficient:
    """A ring element tagged with its ring.

    Arithmetic between coefficients of different rings raises RingMismatch;
    plain ints (and Fractions over Q) mix in freely.
    """

    ring: RingSpec
    value: object

    @staticmethod
    def of(ring: RingSpec, value) -> "Coefficient":
        return Coefficient(ring, ring.normalize(value))

    @staticmethod
    def parse(ring: RingSpec, text: str) -> "Coefficient":
        return Coefficient(ring, ring.parse_value(text))

    def _coerce(self, other) -> "Coefficient":
        if isinstance(other, Coefficient):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot mix {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Coefficient.of(self.ring, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Coefficient(self.ring, self.ring.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Coefficient(self.ring, self.ring.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Coefficient(self.ring, self.ring.sub(o.value, self.value))

    def __neg__(self):
        return Coefficient(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Coefficient(self.ring, self.ring.mul(self.value, o.value))

    __rmul__ = __mul__

    def invert(self) -> "Coefficient | None":
        inv = self.ring.invert(self.value)
        return None if inv is None else Coefficient(self.ring, inv)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_one(self) -> bool:
        return self.value == self.ring.one()

    def __str__(self) -> str:
        return self.ring.format_value(self.value)

    def __repr__(self) -> str:
        return f"Coefficient({self.ring}, {self})"

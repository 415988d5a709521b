"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples indexed by an ordered VarSet; a polynomial is a
dict from exponent tuple to a nonzero raw coefficient value.  The module also
defines the two supported monomial orders and the textual polynomial format
(parse_poly / str round-trip exactly).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .arith import Coefficient, RingSpec
from .errors import (
    ArityMismatch,
    ParseError,
    RingMismatch,
    UnknownVariable,
    VarSetMismatch,
)

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class VarSet:
    """An ordered tuple of distinct variable names.

    Names match [A-Za-z][A-Za-z0-9_]* so they survive the polynomial grammar.
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        for name in self.names:
            if not isinstance(name, str) or not _IDENT_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(self.names)) != len(self.names):
            dupes = sorted({n for n in self.names if self.names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(dupes)}")

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def suffixed(self, suffix: str) -> "VarSet":
        return VarSet(tuple(f"{n}{suffix}" for n in self.names))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._positions

    def __str__(self) -> str:
        return "(" + ", ".join(self.names) + ")"


class MonomialOrder(Enum):
    """Admissible monomial orders (both refine total degree ordering of 1)."""

    LEX = "lex"
    DEGREVLEX = "degrevlex"

    def key(self, exps: tuple[int, ...]):
        """Sort key; bigger key means bigger monomial."""
        if self is MonomialOrder.LEX:
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))

    @staticmethod
    def parse(text: str) -> "MonomialOrder":
        try:
            return MonomialOrder(text.strip().lower())
        except ValueError:
            raise ParseError(f"unknown monomial order {text!r}") from None


DEFAULT_ORDER = MonomialOrder.DEGREVLEX


# ---------------------------------------------------------------------------
# raw exponent-tuple helpers (shared with the ideal machinery)


def mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Whether the monomial with exponents a divides the one with exponents b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: tuple[int, ...]) -> int:
    return sum(a)


@dataclass(frozen=True)
class Monomial:
    """A single power product over a VarSet."""

    varset: VarSet
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(self.exps))
        if len(self.exps) != len(self.varset):
            raise ArityMismatch(
                f"{len(self.exps)} exponents for {len(self.varset)} variables"
            )
        if any(not isinstance(e, int) or e < 0 for e in self.exps):
            raise ValueError("exponents must be non-negative integers")

    @property
    def degree(self) -> int:
        return mono_degree(self.exps)

    def _check(self, other: "Monomial") -> None:
        if self.varset != other.varset:
            raise VarSetMismatch(f"{self.varset} vs {other.varset}")

    def mul(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.varset, mono_mul(self.exps, other.exps))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return mono_divides(self.exps, other.exps)

    def divide(self, other: "Monomial") -> "Monomial":
        """self / other; requires other to divide self."""
        self._check(other)
        if not mono_divides(other.exps, self.exps):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.varset, mono_div(self.exps, other.exps))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.varset, mono_lcm(self.exps, other.exps))

    def __str__(self) -> str:
        return format_monomial(self.varset, self.exps)


def compare(a: Monomial, b: Monomial, order: MonomialOrder = DEFAULT_ORDER) -> int:
    """Three-way comparison of monomials: -1, 0 or 1."""
    if a.varset != b.varset:
        raise VarSetMismatch(f"{a.varset} vs {b.varset}")
    ka, kb = order.key(a.exps), order.key(b.exps)
    return (ka > kb) - (ka < kb)


def format_monomial(varset: VarSet, exps: tuple[int, ...]) -> str:
    factors = []
    for name, e in zip(varset.names, exps):
        if e == 1:
            factors.append(name)
        elif e > 0:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


class Polynomial:
    """Immutable sparse polynomial over a VarSet and a RingSpec."""

    __slots__ = ("varset", "ring", "_terms", "_hash")

    def __init__(self, varset: VarSet, ring: RingSpec, terms=None):
        self.varset = varset
        self.ring = ring
        clean: dict[tuple[int, ...], object] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, value in items:
                exps = tuple(exps)
                if len(exps) != len(varset):
                    raise ArityMismatch(
                        f"{len(exps)} exponents for {len(varset)} variables"
                    )
                value = ring.normalize(value)
                if exps in clean:
                    value = ring.add(clean[exps], value)
                if ring.is_zero(value):
                    clean.pop(exps, None)
                else:
                    clean[exps] = value
        self._terms = clean
        self._hash: int | None = None

    # -- constructors --------------------------------------------------

    @classmethod
    def _raw(cls, varset, ring, terms: dict) -> "Polynomial":
        # trusted: terms already canonical (normalized, no zeros)
        p = object.__new__(cls)
        p.varset = varset
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, varset: VarSet, ring: RingSpec) -> "Polynomial":
        return cls._raw(varset, ring, {})

    @classmethod
    def constant(cls, varset: VarSet, ring: RingSpec, value) -> "Polynomial":
        v = ring.normalize(value)
        if ring.is_zero(v):
            return cls.zero(varset, ring)
        return cls._raw(varset, ring, {(0,) * len(varset): v})

    @classmethod
    def one(cls, varset: VarSet, ring: RingSpec) -> "Polynomial":
        return cls.constant(varset, ring, 1)

    @classmethod
    def variable(cls, varset: VarSet, ring: RingSpec, which: int | str) -> "Polynomial":
        i = varset.index(which) if isinstance(which, str) else which
        if not 0 <= i < len(varset):
            raise IndexError(f"variable index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(len(varset)))
        return cls._raw(varset, ring, {exps: ring.one()})

    @classmethod
    def variables(cls, varset: VarSet, ring: RingSpec) -> list["Polynomial"]:
        return [cls.variable(varset, ring, i) for i in range(len(varset))]

    @classmethod
    def from_monomial(cls, monomial: Monomial, ring: RingSpec, value=1) -> "Polynomial":
        v = ring.normalize(value)
        if ring.is_zero(v):
            return cls.zero(monomial.varset, ring)
        return cls._raw(monomial.varset, ring, {monomial.exps: v})

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Largest term degree; 0 for the zero polynomial."""
        return max(map(mono_degree, self._terms), default=0)

    def is_constant(self) -> bool:
        return all(mono_degree(e) == 0 for e in self._terms)

    def constant_value(self) -> Coefficient:
        zero = (0,) * len(self.varset)
        return Coefficient(self.ring, self._terms.get(zero, self.ring.zero()))

    def coefficient(self, monomial: Monomial) -> Coefficient:
        if monomial.varset != self.varset:
            raise VarSetMismatch(f"{monomial.varset} vs {self.varset}")
        return Coefficient(self.ring, self._terms.get(monomial.exps, self.ring.zero()))

    def sorted_terms(
        self, order: MonomialOrder = DEFAULT_ORDER, reverse: bool = True
    ) -> list[tuple[tuple[int, ...], object]]:
        """Internal terms as (exps, raw value), biggest monomial first."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def terms(self, order: MonomialOrder = DEFAULT_ORDER) -> list[tuple[Monomial, Coefficient]]:
        return [
            (Monomial(self.varset, e), Coefficient(self.ring, v))
            for e, v in self.sorted_terms(order)
        ]

    def monomials(self, order: MonomialOrder = DEFAULT_ORDER) -> list[Monomial]:
        return [Monomial(self.varset, e) for e, _ in self.sorted_terms(order)]

    def leading(self, order: MonomialOrder = DEFAULT_ORDER):
        """(exps, value) of the leading term, or None for the zero polynomial."""
        if not self._terms:
            return None
        exps = max(self._terms, key=order.key)
        return exps, self._terms[exps]

    def leading_term(self, order: MonomialOrder = DEFAULT_ORDER):
        lead = self.leading(order)
        if lead is None:
            return None
        exps, value = lead
        return Monomial(self.varset, exps), Coefficient(self.ring, value)

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.varset != other.varset:
            raise VarSetMismatch(f"{self.varset} vs {other.varset}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        if isinstance(other, Coefficient):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return Polynomial.constant(self.varset, self.ring, other.value)
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.varset, self.ring, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        terms = dict(self._terms)
        for exps, value in o._terms.items():
            s = ring.add(terms.get(exps, ring.zero()), value)
            if ring.is_zero(s):
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return Polynomial._raw(self.varset, ring, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> "Polynomial":
        ring = self.ring
        return Polynomial._raw(
            self.varset, ring, {e: ring.neg(v) for e, v in self._terms.items()}
        )

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        out: dict[tuple[int, ...], object] = {}
        for ea, va in self._terms.items():
            for eb, vb in o._terms.items():
                exps = mono_mul(ea, eb)
                s = ring.add(out.get(exps, ring.zero()), ring.mul(va, vb))
                if ring.is_zero(s):
                    out.pop(exps, None)
                else:
                    out[exps] = s
        return Polynomial._raw(self.varset, ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.varset, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def scale(self, value) -> "Polynomial":
        if isinstance(value, Coefficient):
            if value.ring != self.ring:
                raise RingMismatch(f"{value.ring} vs {self.ring}")
            value = value.value
        v = self.ring.normalize(value)
        ring = self.ring
        out = {}
        for exps, oldv in self._terms.items():
            s = ring.mul(oldv, v)
            if not ring.is_zero(s):
                out[exps] = s
        return Polynomial._raw(self.varset, ring, out)

    def times_term(self, exps: tuple[int, ...], value) -> "Polynomial":
        """Multiply by a single term given as raw exponents and raw value."""
        ring = self.ring
        v = ring.normalize(value)
        out = {}
        for e, old in self._terms.items():
            s = ring.mul(old, v)
            if not ring.is_zero(s):
                out[mono_mul(e, exps)] = s
        return Polynomial._raw(self.varset, ring, out)

    def substitute(
        self,
        images: Sequence["Polynomial"],
        varset: VarSet | None = None,
    ) -> "Polynomial":
        """Evaluate at images[i] in place of variable i.

        All images must share one varset and this polynomial's ring; the
        result lives over that varset (or over `varset` when there are no
        variables to substitute).
        """
        if len(images) != len(self.varset):
            raise ArityMismatch(
                f"{len(images)} images for {len(self.varset)} variables"
            )
        if images:
            target = images[0].varset
            for img in images:
                if img.ring != self.ring:
                    raise RingMismatch(f"{img.ring} vs {self.ring}")
                if img.varset != target:
                    raise VarSetMismatch("images must share one variable set")
            if varset is not None and varset != target:
                raise VarSetMismatch("explicit varset disagrees with the images")
        else:
            target = varset if varset is not None else self.varset
        ring = self.ring
        result = Polynomial.zero(target, ring)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            got = powers.get((i, e))
            if got is None:
                got = images[i] ** e
                powers[(i, e)] = got
            return got

        for exps, value in self._terms.items():
            term = Polynomial.constant(target, ring, value)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # -- equality, printing ------------------------------------------------

    def _key(self):
        return (self.varset, self.ring, frozenset(self._terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                o = self._coerce(other)
                return o is not None and self._terms == o._terms
            return NotImplemented
        return (
            self.varset == other.varset
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.ring}{self.varset}: {self})"


def format_poly(p: Polynomial) -> str:
    """Canonical text form: terms in descending DegRevLex, exact round-trip."""
    if p.is_zero():
        return "0"
    ring = p.ring
    pieces: list[str] = []
    for exps, value in p.sorted_terms(MonomialOrder.DEGREVLEX):
        negative = ring.kind != "Zmod" and value < 0
        magnitude = ring.format_value(ring.neg(value) if negative else value)
        if mono_degree(exps) == 0:
            body = magnitude
        elif magnitude == "1":
            body = format_monomial(p.varset, exps)
        else:
            body = f"{magnitude}*{format_monomial(p.varset, exps)}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parsing


class _Tokens:
    """Scanner for the polynomial grammar; tracks character positions."""

    _TOKEN_RE = re.compile(
        r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^]))"
    )

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.kind: str | None = None
        self.value: str = ""
        self.token_pos = 0
        self.advance()

    def advance(self) -> None:
        rest = self.text[self.pos :]
        stripped = rest.lstrip()
        if not stripped:
            self.token_pos = len(self.text)
            self.kind, self.value = None, ""
            self.pos = len(self.text)
            return
        m = self._TOKEN_RE.match(self.text, self.pos)
        if not m:
            bad_at = len(self.text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_at)
        self.token_pos = m.end() - len(m.group(m.lastgroup))  # type: ignore[arg-type]
        self.kind = m.lastgroup
        self.value = m.group(m.lastgroup)  # type: ignore[arg-type]
        self.pos = m.end()


def parse_poly(text: str, varset: VarSet, ring: RingSpec) -> Polynomial:
    """Parse the linear polynomial syntax.

    Grammar (whitespace insignificant)::

        poly    := ['-'] term { ('+'|'-') term }
        term    := coeff ['*' factors] | factors
        factors := varpow { '*' varpow }
        varpow  := ident ['^' nat]
        coeff   := nat ['/' nat]
    """
    toks = _Tokens(text)
    if toks.kind is None:
        raise ParseError("empty polynomial", toks.token_pos)
    ring_zero = ring.zero()
    n = len(varset)
    acc: dict[tuple[int, ...], object] = {}

    def parse_nat() -> int:
        if toks.kind != "nat":
            raise ParseError(
                f"expected a number, found {toks.value!r}" if toks.kind else "expected a number",
                toks.token_pos,
            )
        value = int(toks.value)
        toks.advance()
        return value

    def parse_varpow(exps: list[int]) -> None:
        name_pos = toks.token_pos
        name = toks.value
        toks.advance()
        if name not in varset:
            raise UnknownVariable(f"unknown variable {name!r}", name_pos)
        e = 1
        if toks.kind == "op" and toks.value == "^":
            toks.advance()
            e = parse_nat()
        exps[varset.index(name)] += e

    def parse_term():
        exps = [0] * n
        value = ring.one()
        coeff_pos = toks.token_pos
        if toks.kind == "nat":
            num = parse_nat()
            den = None
            if toks.kind == "op" and toks.value == "/":
                toks.advance()
                den = parse_nat()
                if den == 0:
                    raise ParseError("zero denominator", coeff_pos)
            try:
                value = (
                    ring.normalize(num)
                    if den is None
                    else ring.from_fraction(Fraction(num, den))
                )
            except ValueError as exc:
                raise ParseError(str(exc), coeff_pos) from None
            if toks.kind == "op" and toks.value == "*":
                toks.advance()
                if toks.kind != "ident":
                    raise ParseError("expected a variable after '*'", toks.token_pos)
                parse_varpow(exps)
            else:
                return tuple(exps), value
        elif toks.kind == "ident":
            parse_varpow(exps)
        else:
            raise ParseError(
                f"expected a term, found {toks.value!r}" if toks.kind else "expected a term",
                toks.token_pos,
            )
        while toks.kind == "op" and toks.value == "*":
            toks.advance()
            if toks.kind != "ident":
                raise ParseError("expected a variable after '*'", toks.token_pos)
            parse_varpow(exps)
        return tuple(exps), value

    def accumulate(exps: tuple[int, ...], value) -> None:
        s = ring.add(acc.get(exps, ring_zero), value)
        if ring.is_zero(s):
            acc.pop(exps, None)
        else:
            acc[exps] = s

    negate = False
    if toks.kind == "op" and toks.value == "-":
        negate = True
        toks.advance()
    exps, value = parse_term()
    accumulate(exps, ring.neg(value) if negate else value)
    while toks.kind is not None:
        if toks.kind != "op" or toks.value not in "+-":
            raise ParseError(f"expected '+' or '-', found {toks.value!r}", toks.token_pos)
        negate = toks.value == "-"
        toks.advance()
        exps, value = parse_term()
        accumulate(exps, ring.neg(value) if negate else value)
    return Polynomial._raw(varset, ring, acc)


def parse_poly_list(
    text: str, varset: VarSet, ring: RingSpec, sep: str = ","
) -> list[Polynomial]:
    """Parse a separated list of polynomials ("e1, e2" or "x ; y")."""
    parts = text.split(sep)
    return [parse_poly(part, varset, ring) for part in parts]

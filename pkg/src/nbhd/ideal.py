"""Ideal membership and normal forms.

Two reduction engines are provided.  Monomial ideals reduce by plain
divisibility deletion and work over any coefficient ring.  General ideals go
through Buchberger's algorithm, which requires field coefficients; the
computed basis is the reduced Groebner basis (monic, auto-reduced), which is
unique for a given ideal and monomial order, so results are deterministic
regardless of generator order.

A total-degree guard aborts runaway computations: if any intermediate
polynomial exceeds the cap, DegreeGuardExceeded is raised with the offending
degree in the message.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import RingSpec
from .errors import (
    DegreeGuardExceeded,
    NonFieldCoefficients,
    RingMismatch,
    VarSetMismatch,
)
from .poly import (
    DEFAULT_ORDER,
    Monomial,
    MonomialOrder,
    Polynomial,
    VarSet,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_DEGREE_CAP = 24


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal, stored as its nonzero generators."""

    varset: VarSet
    ring: RingSpec
    generators: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        kept = []
        for g in self.generators:
            if g.varset != self.varset:
                raise VarSetMismatch(f"{g.varset} vs {self.varset}")
            if g.ring != self.ring:
                raise RingMismatch(f"{g.ring} vs {self.ring}")
            if not g.is_zero():
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    def is_monomial(self) -> bool:
        """True when every generator is a single term with a unit coefficient."""
        return all(
            len(g) == 1 and self.ring.is_unit(next(iter(g._terms.values())))
            for g in self.generators
        )

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _monomial_exps(gens: Iterable, varset: VarSet) -> list[tuple[int, ...]]:
    exps = []
    for g in gens:
        if isinstance(g, Monomial):
            if g.varset != varset:
                raise VarSetMismatch(f"{g.varset} vs {varset}")
            exps.append(g.exps)
        else:
            e = tuple(g)
            if len(e) != len(varset):
                raise VarSetMismatch(
                    f"{len(e)} exponents for {len(varset)} variables"
                )
            exps.append(e)
    return exps


def monomial_reduce(p: Polynomial, gens: Iterable) -> Polynomial:
    """Delete every term divisible by one of the given monomials.

    This is the normal form modulo the monomial ideal they generate, valid
    over any coefficient ring.  Generators may be Monomial objects or raw
    exponent tuples.
    """
    divisors = _monomial_exps(gens, p.varset)
    kept = {
        exps: value
        for exps, value in p._terms.items()
        if not any(mono_divides(d, exps) for d in divisors)
    }
    return Polynomial._raw(p.varset, p.ring, kept)


def _reduce_once(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder):
    """One top-reduction step by the first basis element whose lead divides."""
    lead = p.leading(order)
    if lead is None:
        return None
    exps, value = lead
    for g in basis:
        g_exps, g_value = g.leading(order)  # basis polys are nonzero
        if mono_divides(g_exps, exps):
            ring = p.ring
            factor = ring.mul(value, ring.invert(g_value))
            return p - g.times_term(mono_div(exps, g_exps), factor)
    return None


def reduce_full(
    p: Polynomial,
    basis: Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> Polynomial:
    """Full remainder of p on division by basis (field coefficients).

    Every term of the result is outside the leading-term ideal of the basis.
    The divisor tried first is always the earliest one in the sequence, so
    the reduction path is deterministic.
    """
    cap = max(degree_cap, p.total_degree())
    ring = p.ring
    remainder_terms: dict[tuple[int, ...], object] = {}
    work = p
    while not work.is_zero():
        if work.total_degree() > cap:
            raise DegreeGuardExceeded(
                f"intermediate degree {work.total_degree()} exceeds cap {cap}"
            )
        reduced = _reduce_once(work, basis, order)
        if reduced is not None:
            work = reduced
            continue
        exps, value = work.leading(order)
        remainder_terms[exps] = value
        work = Polynomial._raw(
            work.varset, ring, {e: v for e, v in work._terms.items() if e != exps}
        )
    return Polynomial._raw(p.varset, p.ring, remainder_terms)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> Polynomial:
    """The classical S-polynomial, cancelling the two leading terms."""
    f_exps, f_value = f.leading(order)
    g_exps, g_value = g.leading(order)
    lcm = mono_lcm(f_exps, g_exps)
    ring = f.ring
    left = f.times_term(mono_div(lcm, f_exps), ring.invert(f_value))
    right = g.times_term(mono_div(lcm, g_exps), ring.invert(g_value))
    return left - right


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    _, value = p.leading(order)
    return p.scale(p.ring.invert(value))


def _interreduce(basis: list[Polynomial], order: MonomialOrder, cap: int) -> list[Polynomial]:
    """Minimalize then tail-reduce, producing the reduced basis."""
    by_lead = sorted(basis, key=lambda g: order.key(g.leading(order)[0]))
    minimal: list[Polynomial] = []
    for g in by_lead:
        g_exps = g.leading(order)[0]
        if not any(mono_divides(h.leading(order)[0], g_exps) for h in minimal):
            minimal.append(g)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            r = reduce_full(g, others, order, cap)
            if r != g:
                minimal[i] = _monic(r, order)
                changed = True
    minimal = [_monic(g, order) for g in minimal]
    minimal.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return minimal


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> "GroebnerBasis":
    """Compute the reduced Groebner basis of the ideal.

    Pairs are processed in increasing (lcm degree, creation index) order and
    reduction always picks the earliest matching divisor, so the run is fully
    deterministic; by uniqueness of the reduced basis the output does not
    depend on those choices anyway.
    """
    if not ideal.ring.is_field:
        raise NonFieldCoefficients(
            f"Groebner bases need field coefficients, got {ideal.ring}"
        )
    basis = [_monic(g, order) for g in ideal.generators]
    pairs: list[tuple[int, int, int]] = []
    for j in range(len(basis)):
        for i in range(j):
            lcm = mono_lcm(basis[i].leading(order)[0], basis[j].leading(order)[0])
            heapq.heappush(pairs, (mono_degree(lcm), i, j))
    while pairs:
        _, i, j = heapq.heappop(pairs)
        fi, fj = basis[i], basis[j]
        lead_i, lead_j = fi.leading(order)[0], fj.leading(order)[0]
        if mono_lcm(lead_i, lead_j) == mono_mul(lead_i, lead_j):
            continue  # coprime leads: S-polynomial reduces to zero
        s = s_polynomial(fi, fj, order)
        if s.total_degree() > degree_cap:
            raise DegreeGuardExceeded(
                f"intermediate degree {s.total_degree()} exceeds cap {degree_cap}"
            )
        r = reduce_full(s, basis, order, degree_cap)
        if r.is_zero():
            continue
        r = _monic(r, order)
        basis.append(r)
        k = len(basis) - 1
        for i in range(k):
            lcm = mono_lcm(basis[i].leading(order)[0], r.leading(order)[0])
            heapq.heappush(pairs, (mono_degree(lcm), i, k))
    if not basis:
        return GroebnerBasis(ideal.varset, ideal.ring, order, (), degree_cap)
    reduced = _interreduce(basis, order, degree_cap)
    return GroebnerBasis(ideal.varset, ideal.ring, order, tuple(reduced), degree_cap)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; normal forms against it are canonical."""

    varset: VarSet
    ring: RingSpec
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    degree_cap: int = DEFAULT_DEGREE_CAP

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.varset != self.varset:
            raise VarSetMismatch(f"{p.varset} vs {self.varset}")
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        return reduce_full(p, self.basis, self.order, self.degree_cap)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Canonical representative of p modulo the ideal of the basis."""
    return gb.normal_form(p)


def contains(
    ideal: Ideal,
    p: Polynomial,
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> bool:
    """Ideal membership test.

    Monomial ideals are decided by divisibility over any ring; everything
    else needs field coefficients and goes through a Groebner basis.
    """
    if p.varset != ideal.varset:
        raise VarSetMismatch(f"{p.varset} vs {ideal.varset}")
    if p.ring != ideal.ring:
        raise RingMismatch(f"{p.ring} vs {ideal.ring}")
    if ideal.is_monomial():
        gens = [next(iter(g._terms)) for g in ideal.generators]
        return monomial_reduce(p, gens).is_zero()
    return buchberger(ideal, order, degree_cap).contains(p)

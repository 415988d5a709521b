"""Finitely presented commutative algebras and their maps.

An FpAlgebra is a coefficient ring, an ordered variable set and a finite set
of relation polynomials, together with a normal-form strategy:

* "monomial": relations must be single terms with unit coefficients; normal
  forms delete divisible terms and work over any ring,
* "groebner": arbitrary relations over a field; normal forms reduce against
  the reduced Groebner basis of the relation ideal.

Elements always store their normal form, so equality of elements is equality
of representatives.  Maps are given by generator images and are validated at
construction: every relation of the domain must map to zero (the certificate
for well-definedness); violations raise IllDefinedMap.

The second half of the module builds tensor products (coproducts) and the
quotients by (squared) diagonal ideals which classify neighbouring pairs,
together with the classifying maps given by their universal property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Coefficient, RingSpec
from .errors import (
    ArityMismatch,
    CompositionMismatch,
    DomainMismatch,
    IllDefinedMap,
    NonFieldCoefficients,
    NonMonomialRelations,
    ParentMismatch,
    RingMismatch,
    VarSetMismatch,
)
from .ideal import DEFAULT_DEGREE_CAP, GroebnerBasis, Ideal, buchberger, monomial_reduce
from .poly import DEFAULT_ORDER, MonomialOrder, Polynomial, VarSet, parse_poly

STRATEGIES = ("monomial", "groebner")


def _embed_poly(p: Polynomial, target: VarSet, offset: int, ring: RingSpec) -> Polynomial:
    """Reinterpret p over a larger varset, shifting its variables by offset."""
    width = len(target)
    pad_left = offset
    pad_right = width - offset - len(p.varset)
    terms = {
        (0,) * pad_left + exps + (0,) * pad_right: value
        for exps, value in p._terms.items()
    }
    return Polynomial._raw(target, ring, terms)


class FpAlgebra:
    """A finitely presented commutative algebra with a normal-form engine."""

    __slots__ = (
        "ring",
        "varset",
        "relations",
        "strategy",
        "order",
        "degree_cap",
        "_monomial_gens",
        "_gb",
        "_signature",
        "_hash",
    )

    def __init__(
        self,
        ring: RingSpec,
        varset: VarSet | Sequence[str],
        relations: Iterable = (),
        strategy: str = "monomial",
        order: MonomialOrder = DEFAULT_ORDER,
        degree_cap: int = DEFAULT_DEGREE_CAP,
    ):
        if not isinstance(varset, VarSet):
            varset = VarSet(tuple(varset))
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        self.ring = ring
        self.varset = varset
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_poly(r, varset, ring)
            if not isinstance(r, Polynomial):
                raise TypeError(f"relation {r!r} is not a polynomial")
            if r.varset != varset:
                raise VarSetMismatch(f"{r.varset} vs {varset}")
            if r.ring != ring:
                raise RingMismatch(f"{r.ring} vs {ring}")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self.strategy = strategy
        self.order = order
        self.degree_cap = degree_cap
        self._monomial_gens: tuple[tuple[int, ...], ...] | None = None
        self._gb: GroebnerBasis | None = None
        if strategy == "monomial":
            gens = []
            for r in self.relations:
                if len(r) != 1:
                    raise NonMonomialRelations(
                        f"relation {r} is not a single term; use the groebner strategy"
                    )
                exps, value = next(iter(r._terms.items()))
                if not ring.is_unit(value):
                    raise NonMonomialRelations(
                        f"relation {r} has a non-unit coefficient over {ring}"
                    )
                gens.append(exps)
            self._monomial_gens = tuple(gens)
        else:
            if not ring.is_field:
                raise NonFieldCoefficients(
                    f"the groebner strategy needs a field, got {ring}"
                )
            self._gb = buchberger(Ideal(varset, ring, self.relations), order, degree_cap)
        self._signature = (
            ring,
            varset.names,
            frozenset(self.relations),
            strategy,
            order,
        )
        self._hash = hash(self._signature)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FpAlgebra):
            return NotImplemented
        return self._hash == other._hash and self._signature == other._signature

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rels = "; ".join(str(r) for r in self.relations)
        quotient = f" / ({rels})" if rels else ""
        return f"{self.ring}[{', '.join(self.varset.names)}]{quotient}"

    # -- normal forms and elements ------------------------------------------

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.varset != self.varset:
            raise VarSetMismatch(f"{p.varset} vs {self.varset}")
        if p.ring != self.ring:
            raise RingMismatch(f"{p.ring} vs {self.ring}")
        if self._monomial_gens is not None:
            return monomial_reduce(p, self._monomial_gens)
        return self._gb.normal_form(p)  # type: ignore[union-attr]

    def element(self, value) -> "AlgebraElement":
        if isinstance(value, AlgebraElement):
            if value.parent != self:
                raise ParentMismatch(f"element of {value.parent!r} used in {self!r}")
            return value
        if isinstance(value, str):
            value = parse_poly(value, self.varset, self.ring)
        elif isinstance(value, Coefficient):
            if value.ring != self.ring:
                raise RingMismatch(f"{value.ring} vs {self.ring}")
            value = Polynomial.constant(self.varset, self.ring, value.value)
        elif isinstance(value, (int, Fraction)):
            value = Polynomial.constant(self.varset, self.ring, value)
        if not isinstance(value, Polynomial):
            raise TypeError(f"cannot interpret {value!r} as an element")
        return AlgebraElement(self, self.normal_form(value))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, Polynomial.zero(self.varset, self.ring))

    def one(self) -> "AlgebraElement":
        return self.element(1)

    def generator(self, which: int | str) -> "AlgebraElement":
        return self.element(Polynomial.variable(self.varset, self.ring, which))

    def generators(self) -> list["AlgebraElement"]:
        return [self.generator(i) for i in range(len(self.varset))]

    @property
    def is_free(self) -> bool:
        return not self.relations


def free_algebra(ring: RingSpec, names: Sequence[str]) -> FpAlgebra:
    """The polynomial algebra on the given variables (no relations)."""
    return FpAlgebra(ring, VarSet(tuple(names)))


class AlgebraElement:
    """An element of an FpAlgebra, stored as its normal form."""

    __slots__ = ("parent", "rep")

    def __init__(self, parent: FpAlgebra, rep: Polynomial):
        self.parent = parent
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent is self.parent or other.parent == self.parent:
                return other
            raise ParentMismatch(
                f"cannot combine elements of {self.parent!r} and {other.parent!r}"
            )
        if isinstance(other, Polynomial):
            return self.parent.element(other)
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.parent.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.parent, self.parent.normal_form(self.rep + o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.parent, self.parent.normal_form(self.rep - o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraElement(self.parent, -self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.parent, self.parent.normal_form(self.rep * o.rep))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.parent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self) -> bool:
        return not self.rep.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Coefficient, Polynomial)):
            o = self._coerce(other)
            return self.rep == o.rep
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.parent == other.parent and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.parent, self.rep))

    def __str__(self) -> str:
        return str(self.rep)

    def __repr__(self) -> str:
        return f"<{self.rep} in {self.parent!r}>"


class AlgebraMap:
    """An algebra map given by generator images, validated on construction.

    The certificate: substituting the images into every relation of the
    domain must give zero in the codomain.  By linearity and
    multiplicativity this pins down a unique well-defined algebra map.
    """

    __slots__ = ("domain", "codomain", "images")

    def __init__(self, domain: FpAlgebra, codomain: FpAlgebra, images: Sequence):
        if len(images) != len(domain.varset):
            raise ArityMismatch(
                f"{len(images)} images for {len(domain.varset)} generators"
            )
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(codomain.element(im) for im in images)
        image_reps = [im.rep for im in self.images]
        for relation in domain.relations:
            value = relation.substitute(image_reps, varset=codomain.varset)
            if not codomain.normal_form(value).is_zero():
                raise IllDefinedMap(
                    f"relation {relation} maps to {codomain.element(value)}, not zero"
                )

    def apply(self, x) -> AlgebraElement:
        x = self.domain.element(x)
        value = x.rep.substitute(
            [im.rep for im in self.images], varset=self.codomain.varset
        )
        return self.codomain.element(value)

    __call__ = apply

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.images))

    def __repr__(self) -> str:
        arrows = ", ".join(
            f"{name} -> {im}" for name, im in zip(self.domain.varset.names, self.images)
        )
        return f"AlgebraMap({arrows or 'constants only'})"


def identity_map(algebra: FpAlgebra) -> AlgebraMap:
    return AlgebraMap(algebra, algebra, algebra.generators())


def compose(after: AlgebraMap, before: AlgebraMap) -> AlgebraMap:
    """compose(g, f) is g after f; the codomain of f must be the domain of g."""
    if before.codomain != after.domain:
        raise CompositionMismatch(
            f"codomain {before.codomain!r} differs from domain {after.domain!r}"
        )
    return AlgebraMap(
        before.domain, after.codomain, [after.apply(im) for im in before.images]
    )


# ---------------------------------------------------------------------------
# tensor products


def _merge_strategy(parts: Sequence[FpAlgebra]) -> tuple[str, MonomialOrder, int]:
    strategy = "monomial"
    order = parts[0].order
    cap = max(p.degree_cap for p in parts)
    for p in parts:
        if p.strategy == "groebner":
            strategy = "groebner"
            order = p.order
    return strategy, order, cap


def tensor_power(
    algebra: FpAlgebra, count: int
) -> tuple[FpAlgebra, tuple[AlgebraMap, ...]]:
    """The coproduct of `count` copies, with variables renamed by copy index.

    Generator g of copy r becomes "g_r".  Returns the tensor algebra and the
    inclusion of each copy.
    """
    if count < 1:
        raise ValueError("need at least one tensor factor")
    return _tensor_many([algebra] * count)


def tensor(
    a: FpAlgebra, b: FpAlgebra
) -> tuple[FpAlgebra, AlgebraMap, AlgebraMap]:
    """The coproduct of two algebras; variables get suffixes _0 and _1."""
    t, inclusions = _tensor_many([a, b])
    return t, inclusions[0], inclusions[1]


def _tensor_many(parts: Sequence[FpAlgebra]) -> tuple[FpAlgebra, tuple[AlgebraMap, ...]]:
    ring = parts[0].ring
    for p in parts:
        if p.ring != ring:
            raise RingMismatch(f"{p.ring} vs {ring}")
    names: list[str] = []
    for r, part in enumerate(parts):
        names.extend(part.varset.suffixed(f"_{r}").names)
    try:
        varset = VarSet(tuple(names))
    except ValueError as exc:
        raise VarSetMismatch(f"renaming collision in tensor product: {exc}") from None
    relations: list[Polynomial] = []
    offset = 0
    for part in parts:
        for rel in part.relations:
            relations.append(_embed_poly(rel, varset, offset, ring))
        offset += len(part.varset)
    strategy, order, cap = _merge_strategy(parts)
    t = FpAlgebra(ring, varset, relations, strategy, order, cap)
    inclusions = []
    offset = 0
    for part in parts:
        images = [t.generator(offset + i) for i in range(len(part.varset))]
        inclusions.append(AlgebraMap(part, t, images))
        offset += len(part.varset)
    return t, tuple(inclusions)


def multiplication_map(algebra: FpAlgebra) -> AlgebraMap:
    """The codiagonal from the two-fold tensor power back to the algebra.

    Both renamed copies of a generator map to the original generator, so the
    map sends a tensor a (x) b to the product a*b.
    """
    t, _, _ = tensor(algebra, algebra)
    gens = algebra.generators()
    return AlgebraMap(t, algebra, gens + gens)


def diagonal_ideal(algebra: FpAlgebra, power: int = 1) -> Ideal:
    """The kernel ideal of the multiplication map, or its square.

    power=1 gives the generators g_1 - g_0 (one per generator of the
    algebra); power=2 gives all pairwise products of those differences.  For
    a presented algebra the embedded relation polynomials of both copies are
    included, which presents the same ideal of the tensor algebra pulled back
    along the presentation.
    """
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    t, _, _ = tensor(algebra, algebra)
    ring = algebra.ring
    n = len(algebra.varset)
    variables = Polynomial.variables(t.varset, ring)
    diffs = [variables[n + i] - variables[i] for i in range(n)]
    if power == 1:
        gens = list(diffs)
    else:
        gens = [diffs[i] * diffs[j] for i in range(n) for j in range(i, n)]
    gens.extend(t.relations)
    return Ideal(t.varset, ring, tuple(gens))


def multi_diagonal_ideal(algebra: FpAlgebra, p: int) -> Ideal:
    """Sum over all copy pairs r < s of the squared diagonal ideal between
    copies r and s, inside the (p+1)-fold tensor power."""
    if p < 1:
        raise ValueError("p must be at least 1")
    t, _ = tensor_power(algebra, p + 1)
    ring = algebra.ring
    n = len(algebra.varset)
    variables = Polynomial.variables(t.varset, ring)
    gens: list[Polynomial] = []
    for r in range(p + 1):
        for s in range(r + 1, p + 1):
            diffs = [variables[s * n + i] - variables[r * n + i] for i in range(n)]
            gens.extend(
                diffs[i] * diffs[j] for i in range(n) for j in range(i, n)
            )
    gens.extend(t.relations)
    return Ideal(t.varset, ring, tuple(gens))


@dataclass(frozen=True)
class UniversalSimplex:
    """A quotient of a tensor power classifying tuples of mutual neighbours.

    `maps` are the compositions (projection after r-th inclusion); any two of
    them are neighbours, and the construction is universal with that
    property (see classifying_map).  `representation` records how the
    quotient is presented: "difference" uses displacement variables d_* on
    top of the base variables, "tensor" quotients the renamed tensor algebra
    directly.
    """

    base: FpAlgebra
    algebra: FpAlgebra
    projection: AlgebraMap
    maps: tuple[AlgebraMap, ...]
    representation: str

    @property
    def p(self) -> int:
        return len(self.maps) - 1


def _difference_names(base: FpAlgebra, p: int) -> list[str]:
    names = list(base.varset.names)
    if p == 1:
        names.extend(f"d_{g}" for g in base.varset.names)
    else:
        for r in range(1, p + 1):
            names.extend(f"d_{g}_{r}" for g in base.varset.names)
    return names


def _difference_representation(
    base: FpAlgebra, p: int, order: MonomialOrder, cap: int
) -> UniversalSimplex:
    ring = base.ring
    n = len(base.varset)
    try:
        varset = VarSet(tuple(_difference_names(base, p)))
    except ValueError as exc:
        raise VarSetMismatch(f"displacement naming collision: {exc}") from None
    variables = Polynomial.variables(varset, ring)
    base_vars = variables[:n]
    blocks = [variables[n + (r - 1) * n : n + r * n] for r in range(1, p + 1)]

    relations: list[Polynomial] = []
    for block in blocks:
        relations.extend(block[i] * block[j] for i in range(n) for j in range(i, n))
    for r in range(len(blocks)):
        for s in range(r + 1, len(blocks)):
            diffs = [blocks[s][i] - blocks[r][i] for i in range(n)]
            relations.extend(
                diffs[i] * diffs[j] for i in range(n) for j in range(i, n)
            )
    if p == 1:
        quotient = FpAlgebra(ring, varset, relations, "monomial", order, cap)
    else:
        if not ring.is_field:
            raise NonFieldCoefficients(
                f"simplices with p >= 2 need field coefficients, got {ring}"
            )
        quotient = FpAlgebra(ring, varset, relations, "groebner", order, cap)

    t, inclusions = tensor_power(base, p + 1)
    proj_images = []
    proj_images.extend(quotient.element(v) for v in base_vars)
    for block in blocks:
        proj_images.extend(quotient.element(base_vars[i] + block[i]) for i in range(n))
    projection = AlgebraMap(t, quotient, proj_images)
    maps = tuple(compose(projection, inc) for inc in inclusions)
    return UniversalSimplex(base, quotient, projection, maps, "difference")


def _tensor_representation(
    base: FpAlgebra, p: int, order: MonomialOrder, cap: int
) -> UniversalSimplex:
    ring = base.ring
    if not ring.is_field:
        raise NonFieldCoefficients(
            f"the tensor representation needs field coefficients, got {ring}"
        )
    squared = multi_diagonal_ideal(base, p)
    t, inclusions = tensor_power(base, p + 1)
    quotient = FpAlgebra(ring, t.varset, squared.generators, "groebner", order, cap)
    projection = AlgebraMap(
        t, quotient, Polynomial.variables(t.varset, ring)
    )
    maps = tuple(compose(projection, inc) for inc in inclusions)
    return UniversalSimplex(base, quotient, projection, maps, "tensor")


def universal_simplex(
    base: FpAlgebra,
    p: int = 1,
    representation: str = "auto",
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> UniversalSimplex:
    """The universal (p+1)-tuple of mutually neighbouring maps out of `base`.

    The quotient of the (p+1)-fold tensor power by the sum of all pairwise
    squared diagonal ideals.  For a free base algebra the "difference"
    representation rewrites copy r of generator g as g + d_g_r, which needs
    no Groebner machinery at p=1 and therefore works over any ring there;
    all other cases require field coefficients.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if representation == "auto":
        representation = "difference" if base.is_free else "tensor"
    if representation == "difference":
        if not base.is_free:
            raise ValueError("the difference representation needs a free base algebra")
        return _difference_representation(base, p, order, degree_cap)
    if representation == "tensor":
        return _tensor_representation(base, p, order, degree_cap)
    raise ValueError(f"unknown representation {representation!r}")


def neighbourhood_of_diagonal(
    base: FpAlgebra,
    representation: str = "auto",
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> UniversalSimplex:
    """The universal neighbouring pair: the two-fold tensor power modulo the
    squared diagonal ideal (the p = 1 simplex)."""
    return universal_simplex(base, 1, representation, order, degree_cap)


def classifying_map(simplex: UniversalSimplex, maps: Sequence[AlgebraMap]) -> AlgebraMap:
    """The unique map out of the simplex algebra hitting the given tuple.

    Requires len(maps) == p + 1, all sharing the simplex base as domain and a
    common codomain.  Construction succeeds exactly when the maps are
    mutually neighbouring: the relations of the simplex algebra turn into
    the products of differences, so IllDefinedMap is raised otherwise.
    """
    if len(maps) != simplex.p + 1:
        raise ArityMismatch(f"{len(maps)} maps for a p={simplex.p} simplex")
    codomain = maps[0].codomain
    for f in maps:
        if f.domain != simplex.base:
            raise DomainMismatch(f"map domain {f.domain!r} is not the simplex base")
        if f.codomain != codomain:
            raise DomainMismatch("maps must share a codomain")
    if simplex.representation == "difference":
        images = list(maps[0].images)
        for r in range(1, simplex.p + 1):
            images.extend(
                maps[r].images[i] - maps[0].images[i]
                for i in range(len(simplex.base.varset))
            )
    else:
        images = [im for f in maps for im in f.images]
    factored = AlgebraMap(simplex.algebra, codomain, images)
    return factored


def adjoin_variables(
    algebra: FpAlgebra, names: Sequence[str]
) -> tuple[FpAlgebra, AlgebraMap]:
    """Freely adjoin new variables (tensor with a polynomial algebra).

    Returns the extended algebra and the inclusion.  Name clashes with
    existing variables are rejected.
    """
    try:
        varset = VarSet(algebra.varset.names + tuple(names))
    except ValueError as exc:
        raise VarSetMismatch(f"cannot adjoin variables: {exc}") from None
    relations = [
        _embed_poly(r, varset, 0, algebra.ring) for r in algebra.relations
    ]
    extended = FpAlgebra(
        algebra.ring,
        varset,
        relations,
        algebra.strategy,
        algebra.order,
        algebra.degree_cap,
    )
    inclusion = AlgebraMap(
        algebra, extended, [extended.generator(i) for i in range(len(algebra.varset))]
    )
    return extended, inclusion


def pairing_map(f: AlgebraMap, g: AlgebraMap) -> AlgebraMap:
    """The map out of the two-fold tensor power acting as f on copy 0 and as
    g on copy 1 (the coproduct pairing)."""
    if f.domain != g.domain:
        raise DomainMismatch("the two maps must share a domain")
    if f.codomain != g.codomain:
        raise DomainMismatch("the two maps must share a codomain")
    t, _, _ = tensor(f.domain, f.domain)
    return AlgebraMap(t, f.codomain, list(f.images) + list(g.images))

"""The first-order neighbour relation and its calculus.

Two algebra maps f, g with a common presented domain are neighbours when all
products (g(a) - f(a)) * (g(b) - f(b)) vanish.  It is enough to test the
finitely many pairs of generator differences; precomposing with the
presentation surjection of the domain shows the generator-level test is
sound and complete for presented domains as well.

On top of the pair decision the module provides: matrices of mutual
neighbours (infinitesimal simplices), the zero-anchored difference matrices
with their cross-product and row-product equations, affine combinations of
mutual neighbours, the rewriting of multiplication-kernel elements in terms
of the standard kernel generators, the generic affine combination with
formal coefficients, and row extensions of difference matrices.

Decision functions return a CheckResult, which is truthy on success and
carries an explicit nonzero witness on failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .arith import RingSpec
from .errors import (
    ArityMismatch,
    CoefficientsNotAffine,
    DomainMismatch,
    NonFieldCoefficients,
    NotInDtilde,
    NotInKernel,
    NotNeighbours,
    ShapeMismatch,
)
from .algebra import (
    AlgebraElement,
    AlgebraMap,
    FpAlgebra,
    UniversalSimplex,
    adjoin_variables,
    compose,
    free_algebra,
    multiplication_map,
    tensor,
    universal_simplex,
)
from .ideal import DEFAULT_DEGREE_CAP
from .poly import DEFAULT_ORDER, MonomialOrder, Polynomial, VarSet


@dataclass(frozen=True)
class Witness:
    """A concrete nonzero element violating an equation, with its location."""

    indices: tuple[int, ...]
    value: AlgebraElement
    label: str = ""

    def __str__(self) -> str:
        where = ", ".join(str(i) for i in self.indices)
        prefix = f"{self.label} " if self.label else ""
        return f"{prefix}at ({where}): {self.value}"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a decision procedure; truthy iff the property holds."""

    ok: bool
    witness: Witness | None = None
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "true"
        return f"false ({self.witness})"


def _require_parallel(f: AlgebraMap, g: AlgebraMap) -> None:
    if f.domain != g.domain:
        raise DomainMismatch(f"domains differ: {f.domain!r} vs {g.domain!r}")
    if f.codomain != g.codomain:
        raise DomainMismatch(f"codomains differ: {f.codomain!r} vs {g.codomain!r}")


def _difference_violation(
    deltas: Sequence[AlgebraElement], label: str
) -> Witness | None:
    """First nonzero pairwise product delta_i * delta_j (i <= j), 1-based."""
    for i in range(len(deltas)):
        for j in range(i, len(deltas)):
            product = deltas[i] * deltas[j]
            if not product.is_zero():
                return Witness((i + 1, j + 1), product, label)
    return None


def is_neighbour(f: AlgebraMap, g: AlgebraMap) -> CheckResult:
    """Decide the neighbour relation on generator images.

    f ~ g iff every product of two differences (g - f on a generator)
    vanishes in the codomain.  The relation is reflexive and symmetric but
    not transitive.
    """
    _require_parallel(f, g)
    deltas = [gi - fi for fi, gi in zip(f.images, g.images)]
    witness = _difference_violation(deltas, "difference product")
    return CheckResult(witness is None, witness)


def is_neighbour_product_form(f: AlgebraMap, g: AlgebraMap) -> CheckResult:
    """The subtraction-free form of the neighbour condition.

    Checks f(a)g(b) + g(a)f(b) = f(ab) + g(ab) on all generator pairs; this
    is equivalent to is_neighbour over every ring, and meaningful even when
    the ring has no subtraction-free presentation issues at all (it is kept
    as an independent implementation for cross-checking).
    """
    _require_parallel(f, g)
    gens = f.domain.generators()
    for i, a in enumerate(gens):
        for j in range(i, len(gens)):
            b = gens[j]
            ab = a * b
            lhs = f.images[i] * g.images[j] + g.images[i] * f.images[j]
            rhs = f.apply(ab) + g.apply(ab)
            diff = lhs - rhs
            if not diff.is_zero():
                return CheckResult(
                    False, Witness((i + 1, j + 1), diff, "product form defect")
                )
    return CheckResult(True)


def is_square_zero_pair(f: AlgebraMap, g: AlgebraMap) -> CheckResult:
    """Test squares of generator differences and of their two-term sums.

    When 2 is invertible this is equivalent to the neighbour relation (a
    polarization argument turns the vanishing of all squares into the
    vanishing of all products).  When 2 is not invertible it is a strictly
    weaker, bounded test and the result carries a note saying so.
    """
    _require_parallel(f, g)
    deltas = [gi - fi for fi, gi in zip(f.images, g.images)]
    ring = f.codomain.ring
    if ring.two_invertible:
        notes = ("equivalent to the neighbour relation since 2 is invertible",)
    else:
        notes = (
            "bounded square test only: 2 is not invertible over "
            f"{ring}, so vanishing squares need not imply the neighbour relation",
        )
    for i, d in enumerate(deltas):
        square = d * d
        if not square.is_zero():
            return CheckResult(
                False, Witness((i + 1,), square, "difference square"), notes
            )
    for i in range(len(deltas)):
        for j in range(i + 1, len(deltas)):
            square = (deltas[i] + deltas[j]) ** 2
            if not square.is_zero():
                return CheckResult(
                    False,
                    Witness((i + 1, j + 1), square, "square of difference sum"),
                    notes,
                )
    return CheckResult(True, None, notes)


def vectors_neighbour(
    a: Sequence[AlgebraElement], b: Sequence[AlgebraElement]
) -> CheckResult:
    """Neighbour test for coordinate vectors (rows of a would-be simplex)."""
    if len(a) != len(b):
        raise ShapeMismatch(f"vector lengths {len(a)} vs {len(b)}")
    deltas = [bi - ai for ai, bi in zip(a, b)]
    witness = _difference_violation(deltas, "difference product")
    return CheckResult(witness is None, witness)


class SimplexMatrix:
    """A rectangular matrix of elements of one algebra.

    Rows play the role of coordinate vectors of maps into the algebra; the
    same container serves both (p+1)-row simplices and p-row zero-anchored
    difference matrices.
    """

    __slots__ = ("codomain", "entries")

    def __init__(self, codomain: FpAlgebra, rows: Sequence[Sequence]):
        if not rows:
            raise ShapeMismatch("a matrix needs at least one row")
        entries = tuple(tuple(codomain.element(x) for x in row) for row in rows)
        width = len(entries[0])
        if width == 0:
            raise ShapeMismatch("a matrix needs at least one column")
        if any(len(row) != width for row in entries):
            raise ShapeMismatch("rows have unequal lengths")
        self.codomain = codomain
        self.entries = entries

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple[AlgebraElement, ...]:
        return self.entries[i]

    def entry(self, i: int, j: int) -> AlgebraElement:
        return self.entries[i][j]

    def transpose(self) -> "SimplexMatrix":
        return SimplexMatrix(self.codomain, tuple(zip(*self.entries)))

    def prepend_zero_row(self) -> "SimplexMatrix":
        zero_row = tuple(self.codomain.zero() for _ in range(self.cols))
        return SimplexMatrix(self.codomain, (zero_row,) + self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplexMatrix):
            return NotImplemented
        return self.codomain == other.codomain and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.codomain, self.entries))

    def __iter__(self) -> Iterator[tuple[AlgebraElement, ...]]:
        return iter(self.entries)

    def __str__(self) -> str:
        return "\n".join(", ".join(str(x) for x in row) for row in self.entries)

    def __repr__(self) -> str:
        return f"SimplexMatrix({self.rows}x{self.cols} over {self.codomain!r})"


def matrix_of_maps(maps: Sequence[AlgebraMap]) -> SimplexMatrix:
    """Stack the generator images of parallel maps as matrix rows."""
    if not maps:
        raise ShapeMismatch("need at least one map")
    for f in maps[1:]:
        _require_parallel(maps[0], f)
    return SimplexMatrix(maps[0].codomain, [list(f.images) for f in maps])


def maps_of_matrix(
    matrix: SimplexMatrix, domain: FpAlgebra | None = None
) -> list[AlgebraMap]:
    """Read matrix rows back as maps from a free domain (default k[X1..Xn])."""
    if domain is None:
        domain = free_algebra(
            matrix.codomain.ring, [f"X{j + 1}" for j in range(matrix.cols)]
        )
    elif len(domain.varset) != matrix.cols:
        raise ShapeMismatch(
            f"domain has {len(domain.varset)} generators, matrix has {matrix.cols} columns"
        )
    return [AlgebraMap(domain, matrix.codomain, row) for row in matrix.entries]


def is_simplex(matrix: SimplexMatrix) -> CheckResult:
    """Whether all rows are pairwise neighbours as coordinate vectors.

    The witness on failure names rows (r, s) and columns (i, j), 1-based.
    """
    for r in range(matrix.rows):
        for s in range(r + 1, matrix.rows):
            deltas = [
                matrix.entry(s, i) - matrix.entry(r, i) for i in range(matrix.cols)
            ]
            for i in range(matrix.cols):
                for j in range(i, matrix.cols):
                    product = deltas[i] * deltas[j]
                    if not product.is_zero():
                        return CheckResult(
                            False,
                            Witness(
                                (r + 1, s + 1, i + 1, j + 1),
                                product,
                                "rows r,s columns i,j",
                            ),
                        )
    return CheckResult(True)


def in_dtilde(matrix: SimplexMatrix) -> CheckResult:
    """Membership in the zero-anchored difference variety.

    Checks the cross-product equations (for rows r < s and columns i <= j:
    a_ri * a_sj + a_si * a_rj = 0) and the row-product equations (within a
    row: a_ri * a_rj = 0).  Equivalent to: prepending a zero row yields a
    simplex.  When 2 is invertible the row products already follow from the
    cross products; they are checked regardless and a note records the
    implication.
    """
    notes: tuple[str, ...] = ()
    if matrix.codomain.ring.two_invertible:
        notes = (
            "row-product equations are implied by the cross-product equations "
            "here (2 is invertible); both families checked anyway",
        )
    for r in range(matrix.rows):
        for s in range(r + 1, matrix.rows):
            for i in range(matrix.cols):
                for j in range(i, matrix.cols):
                    value = (
                        matrix.entry(r, i) * matrix.entry(s, j)
                        + matrix.entry(s, i) * matrix.entry(r, j)
                    )
                    if not value.is_zero():
                        return CheckResult(
                            False,
                            Witness(
                                (r + 1, s + 1, i + 1, j + 1),
                                value,
                                "cross products, rows r,s columns i,j",
                            ),
                            notes,
                        )
    for r in range(matrix.rows):
        for i in range(matrix.cols):
            for j in range(i, matrix.cols):
                value = matrix.entry(r, i) * matrix.entry(r, j)
                if not value.is_zero():
                    return CheckResult(
                        False,
                        Witness(
                            (r + 1, i + 1, j + 1),
                            value,
                            "row products, row r columns i,j",
                        ),
                        notes,
                    )
    return CheckResult(True, None, notes)


class CoefficientVector:
    """A tuple of weights in an algebra, used for (affine) combinations."""

    __slots__ = ("codomain", "entries")

    def __init__(self, codomain: FpAlgebra, entries: Sequence):
        self.codomain = codomain
        self.entries = tuple(codomain.element(x) for x in entries)
        if not self.entries:
            raise ShapeMismatch("need at least one coefficient")

    def total(self) -> AlgebraElement:
        total = self.codomain.zero()
        for x in self.entries:
            total = total + x
        return total

    def is_affine(self) -> bool:
        return self.total() == self.codomain.one()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[AlgebraElement]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> AlgebraElement:
        return self.entries[i]

    def __str__(self) -> str:
        return ", ".join(str(x) for x in self.entries)


def _require_mutual_neighbours(maps: Sequence[AlgebraMap]) -> None:
    for r in range(len(maps)):
        for s in range(r + 1, len(maps)):
            verdict = is_neighbour(maps[r], maps[s])
            if not verdict:
                raise NotNeighbours(
                    f"maps {r + 1} and {s + 1} are not neighbours: {verdict.witness}"
                )


def affine_combination(
    maps: Sequence[AlgebraMap], coefficients
) -> AlgebraMap:
    """Sum of t_r * f_r for mutually neighbouring maps and weights summing to 1.

    The result is again an algebra map (not just a module map); its
    construction validates the certificate, and the preconditions are
    checked explicitly first: NotNeighbours carries a witness pair, and
    CoefficientsNotAffine reports a weight sum different from 1.
    """
    if not maps:
        raise ShapeMismatch("need at least one map")
    codomain = maps[0].codomain
    for f in maps[1:]:
        _require_parallel(maps[0], f)
    if not isinstance(coefficients, CoefficientVector):
        coefficients = CoefficientVector(codomain, coefficients)
    elif coefficients.codomain != codomain:
        raise DomainMismatch("coefficients live in a different algebra")
    if len(coefficients) != len(maps):
        raise ArityMismatch(f"{len(coefficients)} weights for {len(maps)} maps")
    _require_mutual_neighbours(maps)
    if not coefficients.is_affine():
        raise CoefficientsNotAffine(f"weights sum to {coefficients.total()}, not 1")
    images = []
    for i in range(len(maps[0].images)):
        acc = codomain.zero()
        for t, f in zip(coefficients, maps):
            acc = acc + t * f.images[i]
        images.append(acc)
    return AlgebraMap(maps[0].domain, codomain, images)


def affine_combination_rows(matrix: SimplexMatrix, coefficients) -> tuple[AlgebraElement, ...]:
    """The same combination at the level of coordinate vectors.

    Rows must be pairwise neighbouring vectors and the weights must sum
    to 1; returns the combined row.
    """
    codomain = matrix.codomain
    if not isinstance(coefficients, CoefficientVector):
        coefficients = CoefficientVector(codomain, coefficients)
    elif coefficients.codomain != codomain:
        raise DomainMismatch("coefficients live in a different algebra")
    if len(coefficients) != matrix.rows:
        raise ArityMismatch(f"{len(coefficients)} weights for {matrix.rows} rows")
    for r in range(matrix.rows):
        for s in range(r + 1, matrix.rows):
            verdict = vectors_neighbour(matrix.row(r), matrix.row(s))
            if not verdict:
                raise NotNeighbours(
                    f"rows {r + 1} and {s + 1} are not neighbours: {verdict.witness}"
                )
    if not coefficients.is_affine():
        raise CoefficientsNotAffine(f"weights sum to {coefficients.total()}, not 1")
    combined = []
    for j in range(matrix.cols):
        acc = codomain.zero()
        for t, row in zip(coefficients, matrix.entries):
            acc = acc + t * row[j]
        combined.append(acc)
    return tuple(combined)


# ---------------------------------------------------------------------------
# difference decomposition and kernel rewriting


def pair_varset(varset: VarSet) -> VarSet:
    """Two renamed copies side by side: (v_0 for all v, then v_1 for all v)."""
    return VarSet(varset.suffixed("_0").names + varset.suffixed("_1").names)


def decompose_difference(p: Polynomial) -> tuple[Polynomial, ...]:
    """Write P(copy 1) - P(copy 0) as sum of Q_i * (v_i_1 - v_i_0).

    Works over any coefficient ring.  The Q_i live over pair_varset(P's
    variables) and are produced by a fixed induction: split off powers of
    the first variable via the telescoping identity

        Z^s - Y^s = (Z - Y) * (Z^(s-1) + Z^(s-2)*Y + ... + Y^(s-1)),

    then recurse on the remaining variables.  The expansion is re-checked
    before returning, so the output is self-verifying.
    """
    n = len(p.varset)
    pvs = pair_varset(p.varset)
    ring = p.ring
    copy0 = [Polynomial.variable(pvs, ring, i) for i in range(n)]
    copy1 = [Polynomial.variable(pvs, ring, n + i) for i in range(n)]
    qs = [Polynomial.zero(pvs, ring) for _ in range(n)]

    def embed_copy1(terms: dict) -> Polynomial:
        return Polynomial._raw(
            pvs, ring, {(0,) * n + exps: value for exps, value in terms.items()}
        )

    def telescope(k: int, s: int) -> Polynomial:
        acc = Polynomial.zero(pvs, ring)
        for u in range(s):
            acc = acc + copy1[k] ** u * copy0[k] ** (s - 1 - u)
        return acc

    def recurse(terms: dict, k: int, prefix: Polynomial) -> None:
        if not terms or k == n:
            return
        groups: dict[int, dict] = {}
        for exps, value in terms.items():
            rest = exps[:k] + (0,) + exps[k + 1 :]
            groups.setdefault(exps[k], {})[rest] = value
        for s in sorted(groups):
            sub = groups[s]
            if s >= 1:
                qs[k] = qs[k] + prefix * embed_copy1(sub) * telescope(k, s)
            recurse(sub, k + 1, prefix * copy0[k] ** s)

    recurse(dict(p._terms), 0, Polynomial.one(pvs, ring))

    expected = p.substitute(copy1) - p.substitute(copy0)
    actual = Polynomial.zero(pvs, ring)
    for i in range(n):
        actual = actual + qs[i] * (copy1[i] - copy0[i])
    assert actual == expected, "difference decomposition failed to re-expand"
    return tuple(qs)


def rewrite_kernel_element(
    base: FpAlgebra, element
) -> list[tuple[AlgebraElement, AlgebraElement]]:
    """Express a multiplication-kernel element via the standard generators.

    Input: an element t of the two-fold tensor power of `base` with
    multiplication image zero (otherwise NotInKernel, carrying the image).
    Output: pairs (c, k) with k of the form (copy1 - copy0 of a monomial b)
    and c supported on copy 0, such that t equals the sum of c * k.  The
    construction splits every term a (x) b into a*b (x) 1 plus
    (a (x) 1) * (1 (x) b - b (x) 1) and groups by b; the reconstruction is
    re-checked before returning.
    """
    tensor_algebra, include0, include1 = tensor(base, base)
    t = tensor_algebra.element(element)
    mult = multiplication_map(base)
    image = mult.apply(t)
    if not image.is_zero():
        raise NotInKernel(f"multiplication image is {image}, not zero")
    ring = base.ring
    n = len(base.varset)
    groups: dict[tuple[int, ...], dict] = {}
    for exps, value in t.rep._terms.items():
        left, right = exps[:n], exps[n:]
        if all(e == 0 for e in right):
            continue  # pure copy-0 terms are absorbed by the a*b (x) 1 parts
        groups.setdefault(right, {})[left + (0,) * n] = value
    pairs: list[tuple[AlgebraElement, AlgebraElement]] = []
    order_key = DEFAULT_ORDER.key
    for right in sorted(groups, key=order_key, reverse=True):
        coefficient = AlgebraElement(
            tensor_algebra, Polynomial._raw(tensor_algebra.varset, ring, groups[right])
        )
        monomial = Polynomial._raw(base.varset, ring, {right: ring.one()})
        b = base.element(monomial)
        generator = include1.apply(b) - include0.apply(b)
        pairs.append((coefficient, generator))
    total = tensor_algebra.zero()
    for coefficient, generator in pairs:
        total = total + coefficient * generator
    assert total == t, "kernel rewriting failed to re-expand"
    return pairs


# ---------------------------------------------------------------------------
# generic affine combinations


def generic_coefficients(
    simplex: UniversalSimplex, prefix: str = "t"
) -> tuple[FpAlgebra, AlgebraMap, CoefficientVector, tuple[AlgebraMap, ...]]:
    """Adjoin formal weights to a universal simplex.

    Adds fresh variables t (p = 1) or t1..tp, sets the zeroth weight to
    1 - (t1 + ... + tp) so the tuple is affine by construction, and lifts
    the simplex maps along the inclusion.  Returns (extended algebra,
    inclusion, weights, lifted maps).
    """
    p = simplex.p
    names = (prefix,) if p == 1 else tuple(f"{prefix}{r}" for r in range(1, p + 1))
    extended, inclusion = adjoin_variables(simplex.algebra, names)
    offset = len(simplex.algebra.varset)
    formal = [extended.generator(offset + k) for k in range(p)]
    head = extended.one()
    for v in formal:
        head = head - v
    weights = CoefficientVector(extended, [head, *formal])
    lifted = tuple(compose(inclusion, f) for f in simplex.maps)
    return extended, inclusion, weights, lifted


def canonical_map(
    base: FpAlgebra,
    p: int = 1,
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> AlgebraMap:
    """The generic affine combination of the universal simplex maps.

    For the universal p-simplex on `base`, adjoin formal weights and form
    the affine combination with weight 1 - sum on the zeroth map.  For a
    free base at p = 1 this is the map  g  ->  g + t * d_g.  Well-definedness
    is re-validated during construction.
    """
    simplex = universal_simplex(base, p, order=order, degree_cap=degree_cap)
    _, _, weights, lifted = generic_coefficients(simplex)
    return affine_combination(lifted, weights)


# ---------------------------------------------------------------------------
# zero-anchored difference matrices


def extend_matrix(matrix: SimplexMatrix, coefficients) -> SimplexMatrix:
    """Append the weighted row sum to a difference matrix.

    The input must satisfy in_dtilde (otherwise NotInDtilde, carrying the
    witness); the weights are arbitrary elements, one per existing row.
    The extended matrix satisfies in_dtilde again, which is what makes the
    difference variety stable under taking affine combinations of the
    anchored points.
    """
    verdict = in_dtilde(matrix)
    if not verdict:
        raise NotInDtilde(str(verdict.witness))
    codomain = matrix.codomain
    weights = [codomain.element(c) for c in coefficients]
    if len(weights) != matrix.rows:
        raise ArityMismatch(f"{len(weights)} weights for {matrix.rows} rows")
    new_row = []
    for j in range(matrix.cols):
        acc = codomain.zero()
        for c, row in zip(weights, matrix.entries):
            acc = acc + c * row[j]
        new_row.append(acc)
    return SimplexMatrix(codomain, matrix.entries + (tuple(new_row),))


def transpose(matrix: SimplexMatrix) -> SimplexMatrix:
    """Matrix transpose; membership in the difference variety is preserved
    because the defining equation families are swap-symmetric."""
    return matrix.transpose()


def universal_dtilde(
    p: int,
    n: int,
    ring: RingSpec,
    order: MonomialOrder = DEFAULT_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> tuple[FpAlgebra, SimplexMatrix]:
    """The generic p x n difference matrix and its coordinate algebra.

    The algebra has one generator per matrix entry and is presented by the
    cross-product and row-product equations; the returned matrix of
    generators therefore satisfies in_dtilde tautologically, and any
    difference matrix over any algebra arises from it by specialization.
    Needs field coefficients (the equations are not monomials).
    """
    if p < 1 or n < 1:
        raise ValueError("matrix dimensions must be at least 1 x 1")
    if not ring.is_field:
        raise NonFieldCoefficients(
            f"the generic difference matrix needs field coefficients, got {ring}"
        )
    compact = p <= 9 and n <= 9
    names = tuple(
        f"a{i + 1}{j + 1}" if compact else f"a{i + 1}_{j + 1}"
        for i in range(p)
        for j in range(n)
    )
    varset = VarSet(names)
    variables = Polynomial.variables(varset, ring)

    def entry(i: int, j: int) -> Polynomial:
        return variables[i * n + j]

    relations: list[Polynomial] = []
    for r in range(p):
        for s in range(r + 1, p):
            for i in range(n):
                for j in range(i, n):
                    relations.append(entry(r, i) * entry(s, j) + entry(s, i) * entry(r, j))
    for r in range(p):
        for i in range(n):
            for j in range(i, n):
                relations.append(entry(r, i) * entry(r, j))
    algebra = FpAlgebra(ring, varset, relations, "groebner", order, degree_cap)
    rows = [
        [algebra.generator(i * n + j) for j in range(n)] for i in range(p)
    ]
    return algebra, SimplexMatrix(algebra, rows)

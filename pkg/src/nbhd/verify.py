"""Randomized plus exhaustive verification of the neighbour calculus.

The suite is a registry of named checks.  Each check either proves a small
universal instance exactly (generic matrices, formal weights) or samples a
deterministic corpus of algebras and map pairs driven entirely by the
configured seed, so a report is reproducible byte for byte from its
configuration.

Vacuousness guard: run_suite(config, sabotage=True) rebuilds the corpus with
one relation knocked out of the pinned square-zero algebra.  At least one
check must flip to "fail" under sabotage; fail_injection_flips packages that
comparison.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .arith import RingSpec
from .errors import IllDefinedMap, NbhdError, NotInKernel, UnknownFormat
from .algebra import (
    AlgebraMap,
    FpAlgebra,
    adjoin_variables,
    classifying_map,
    compose,
    diagonal_ideal,
    free_algebra,
    multiplication_map,
    tensor,
    universal_simplex,
)
from .neighbour import (
    CoefficientVector,
    SimplexMatrix,
    affine_combination,
    canonical_map,
    decompose_difference,
    extend_matrix,
    generic_coefficients,
    in_dtilde,
    is_neighbour,
    is_neighbour_product_form,
    is_simplex,
    is_square_zero_pair,
    matrix_of_maps,
    rewrite_kernel_element,
    universal_dtilde,
    vectors_neighbour,
)
from .poly import Polynomial, VarSet

ALLOWED_RINGS = ("Q", "Z", "Z/2", "Z/3", "Z/5")


@dataclass(frozen=True)
class SuiteConfig:
    """Parameters of a verification run; defaults give the desk-scale suite."""

    seed: int = 0
    p_max: int = 2
    n_max: int = 3
    degree_bound: int = 3
    rings: tuple[str, ...] = ALLOWED_RINGS
    case_count: int = 200

    def __post_init__(self) -> None:
        if self.p_max < 1:
            raise ValueError("p_max must be at least 1")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.degree_bound < 2:
            raise ValueError("degree_bound must be at least 2")
        if self.case_count < 1:
            raise ValueError("case_count must be at least 1")
        object.__setattr__(self, "rings", tuple(self.rings))
        if not self.rings:
            raise ValueError("need at least one ring")
        unknown = [r for r in self.rings if r not in ALLOWED_RINGS]
        if unknown:
            raise ValueError(f"unsupported rings {unknown}; allowed: {ALLOWED_RINGS}")
        if len(set(self.rings)) != len(self.rings):
            raise ValueError("duplicate ring names")

    def ring_specs(self) -> list[RingSpec]:
        return [RingSpec.parse(name) for name in self.rings]

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "p_max": self.p_max,
            "n_max": self.n_max,
            "degree_bound": self.degree_bound,
            "rings": list(self.rings),
            "case_count": self.case_count,
            "version": __version__,
        }


# ---------------------------------------------------------------------------
# deterministic corpus


def _rng(config: SuiteConfig, label: str) -> random.Random:
    # string seeding hashes via sha512, stable across runs and platforms
    return random.Random(f"{config.seed}:{label}")


def _random_value(rng: random.Random, ring: RingSpec):
    if ring.kind == "Q":
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    if ring.kind == "Z":
        return rng.randint(-4, 4)
    return rng.randint(0, ring.modulus - 1)  # type: ignore[operator]


def _random_poly(
    rng: random.Random,
    varset: VarSet,
    ring: RingSpec,
    max_degree: int,
    max_terms: int = 3,
    min_degree: int = 0,
) -> Polynomial:
    n = len(varset)
    terms: list[tuple[tuple[int, ...], object]] = []
    count = rng.randint(0 if min_degree == 0 else 1, max_terms)
    for _ in range(count):
        degree = rng.randint(min_degree, max_degree) if n else 0
        exps = [0] * n
        for _ in range(degree):
            exps[rng.randrange(n)] += 1
        terms.append((tuple(exps), _random_value(rng, ring)))
    return Polynomial(varset, ring, terms)


def square_zero_names(n: int) -> list[str]:
    return [f"e{i + 1}" for i in range(n)]


def square_zero_full(ring: RingSpec, n: int, drop_cross: bool = False) -> FpAlgebra:
    """k[e1..en] modulo all products of two generators.

    drop_cross removes the e1*e2 relation; that is the sabotage hook used by
    the fail-injection self-test and nothing else.
    """
    varset = VarSet(tuple(square_zero_names(n)))
    variables = Polynomial.variables(varset, ring)
    relations = []
    for i in range(n):
        for j in range(i, n):
            if drop_cross and (i, j) == (0, 1):
                continue
            relations.append(variables[i] * variables[j])
    return FpAlgebra(ring, varset, relations)


def squares_only(ring: RingSpec, n: int) -> FpAlgebra:
    """k[e1..en] modulo the squares of the generators (cross terms survive)."""
    varset = VarSet(tuple(square_zero_names(n)))
    variables = Polynomial.variables(varset, ring)
    return FpAlgebra(ring, varset, [v * v for v in variables])


def _mixed_weil_algebra(rng: random.Random, ring: RingSpec, n: int) -> FpAlgebra:
    """A random monomial quotient with nilpotent generators.

    Generator 1 always squares to zero (several corpus families lean on
    that); the others square or cube to zero, and each cross product is
    present with probability one half.
    """
    varset = VarSet(tuple(square_zero_names(n)))
    variables = Polynomial.variables(varset, ring)
    relations = []
    caps = [2] + [rng.choice([2, 3]) for _ in range(n - 1)]
    for i, cap in enumerate(caps):
        relations.append(variables[i] ** cap)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                relations.append(variables[i] * variables[j])
    return FpAlgebra(ring, varset, relations)


WEIL_PATTERNS = ("square-zero-full", "squares-only", "random-monomial")


def random_weil_algebra(
    seed: int, ring: RingSpec, n_vars: int, pattern: str
) -> FpAlgebra:
    """A deterministic Weil-style test algebra on e1..en.

    pattern selects the relation family: "square-zero-full" kills every
    product of two generators, "squares-only" kills only the squares, and
    "random-monomial" draws nilpotency degrees 2..3 plus a random subset of
    cross products from the seed.  Same (seed, ring, n_vars, pattern) always
    gives the same algebra.
    """
    if n_vars < 1:
        raise ValueError("need at least one generator")
    if pattern == "square-zero-full":
        return square_zero_full(ring, n_vars)
    if pattern == "squares-only":
        return squares_only(ring, n_vars)
    if pattern == "random-monomial":
        rng = random.Random(f"{seed}:weil-pattern:{ring}:{n_vars}")
        return _mixed_weil_algebra(rng, ring, n_vars)
    raise ValueError(f"unknown pattern {pattern!r}; expected one of {WEIL_PATTERNS}")


@dataclass(frozen=True)
class PairCase:
    """One corpus case: two parallel maps from a free domain into a Weil-type
    algebra, with the designed verdict when one exists."""

    index: int
    ring_name: str
    domain: FpAlgebra
    codomain: FpAlgebra
    f: AlgebraMap
    g: AlgebraMap
    expected: bool | None
    tag: str


@dataclass
class Corpus:
    config: SuiteConfig
    sabotaged: bool
    algebras: dict[tuple[str, str, int], FpAlgebra] = field(default_factory=dict)
    pairs: list[PairCase] = field(default_factory=list)

    def weil(self, ring_name: str, pattern: str, n: int) -> FpAlgebra:
        return self.algebras[(ring_name, pattern, n)]


def _free_domain(ring: RingSpec, n: int) -> FpAlgebra:
    return free_algebra(ring, [f"X{i + 1}" for i in range(n)])


def _augmentation_delta(
    rng: random.Random, codomain: FpAlgebra, general: bool
):
    """A difference vector making any translate a neighbour pair.

    general=True: arbitrary constant-free elements (valid in the full
    square-zero algebra, where all products of two such vanish).
    general=False: all coordinates proportional to the first generator,
    whose square is a relation in every corpus pattern.
    """
    n = len(codomain.varset)
    ring = codomain.ring
    deltas = []
    for _ in range(n):
        if general:
            poly = _random_poly(rng, codomain.varset, ring, 2, max_terms=2, min_degree=1)
            if poly.is_zero():
                poly = Polynomial.variable(codomain.varset, ring, 0)
            deltas.append(codomain.element(poly))
        else:
            scale = _random_value(rng, ring)
            deltas.append(
                codomain.element(
                    Polynomial.variable(codomain.varset, ring, 0).scale(scale)
                )
            )
    return deltas


def build_corpus(config: SuiteConfig, sabotage: bool = False) -> Corpus:
    corpus = Corpus(config, sabotage)
    specs = config.ring_specs()
    # the row-extension and combination-pair checks deliberately reach n = 3
    # even under smaller configured bounds, so stock algebras up to there
    for name, ring in zip(config.rings, specs):
        for n in range(1, max(config.n_max, 3) + 1):
            rng = _rng(config, f"weil:{name}:{n}")
            drop = sabotage and name == config.rings[0] and n == 2
            corpus.algebras[(name, "full", n)] = square_zero_full(ring, n, drop_cross=drop)
            corpus.algebras[(name, "squares", n)] = squares_only(ring, n)
            corpus.algebras[(name, "mixed", n)] = _mixed_weil_algebra(rng, ring, n)

    # pinned case: (0,...) vs the generators in the full square-zero algebra;
    # exactly the case the sabotage hook breaks
    first_name = config.rings[0]
    first_ring = specs[0]
    pinned_codomain = corpus.weil(first_name, "full", 2)
    pinned_domain = _free_domain(first_ring, 2)
    zero = pinned_codomain.zero()
    gens = pinned_codomain.generators()
    corpus.pairs.append(
        PairCase(
            0,
            first_name,
            pinned_domain,
            pinned_codomain,
            AlgebraMap(pinned_domain, pinned_codomain, [zero, zero]),
            AlgebraMap(pinned_domain, pinned_codomain, gens),
            True,
            "constructed",
        )
    )

    rng = _rng(config, "pairs")
    patterns = ("full", "squares", "mixed")
    for idx in range(1, config.case_count + 1):
        name = config.rings[(idx - 1) % len(config.rings)]
        ring = specs[(idx - 1) % len(specs)]
        kind = ("constructed", "random", "constructed", "random", "separated")[
            (idx - 1) // len(config.rings) % 5
        ]
        if kind == "separated" and config.n_max < 2:
            kind = "random"
        if kind == "separated":
            codomain = corpus.weil(name, "squares", 2)
            domain = _free_domain(ring, 2)
            base = [
                codomain.element(_random_poly(rng, codomain.varset, ring, 1))
                for _ in range(2)
            ]
            f = AlgebraMap(domain, codomain, [base[i] + codomain.generator(i) for i in range(2)])
            g = AlgebraMap(domain, codomain, base)
            corpus.pairs.append(
                PairCase(idx, name, domain, codomain, f, g, False, "separated")
            )
            continue
        n = rng.randint(1, config.n_max)
        pattern = patterns[idx % len(patterns)]
        codomain = corpus.weil(name, pattern, n)
        domain = _free_domain(ring, n)
        f_images = [
            codomain.element(_random_poly(rng, codomain.varset, ring, 2))
            for _ in range(n)
        ]
        f = AlgebraMap(domain, codomain, f_images)
        if kind == "constructed":
            deltas = _augmentation_delta(rng, codomain, general=(pattern == "full"))
            g = AlgebraMap(
                domain, codomain, [fi + di for fi, di in zip(f_images, deltas)]
            )
            corpus.pairs.append(
                PairCase(idx, name, domain, codomain, f, g, True, "constructed")
            )
        else:
            g_images = [
                codomain.element(_random_poly(rng, codomain.varset, ring, 2))
                for _ in range(n)
            ]
            g = AlgebraMap(domain, codomain, g_images)
            corpus.pairs.append(
                PairCase(idx, name, domain, codomain, f, g, None, "random")
            )
    return corpus


# ---------------------------------------------------------------------------
# witness shrinking


def shrink_failing_pair(case: PairCase) -> tuple[int, str]:
    """Smallest prefix of coordinates on which the pair already fails.

    Returns (width, witness text).  Used when a constructed neighbour pair
    unexpectedly fails, to report a minimal counterexample.
    """
    n = len(case.f.images)
    for width in range(1, n + 1):
        domain = _free_domain(case.codomain.ring, width)
        f = AlgebraMap(domain, case.codomain, case.f.images[:width])
        g = AlgebraMap(domain, case.codomain, case.g.images[:width])
        verdict = is_neighbour(f, g)
        if not verdict:
            f_text = ", ".join(str(x) for x in f.images)
            g_text = ", ".join(str(x) for x in g.images)
            return width, f"width {width}: f = ({f_text}), g = ({g_text}); {verdict.witness}"
    return n, "failure vanished while shrinking (unstable case)"


def shrink_failing_matrix(
    matrix: SimplexMatrix, fails: Callable[[SimplexMatrix], bool]
) -> SimplexMatrix:
    """Greedily drop trailing rows, then columns, keeping the failure alive."""
    current = matrix
    while current.rows > 1:
        candidate = SimplexMatrix(current.codomain, current.entries[:-1])
        if fails(candidate):
            current = candidate
        else:
            break
    while current.cols > 1:
        candidate = SimplexMatrix(
            current.codomain, [row[:-1] for row in current.entries]
        )
        if fails(candidate):
            current = candidate
        else:
            break
    return current


# ---------------------------------------------------------------------------
# check registry


@dataclass
class CheckOutcome:
    verdict: str  # "pass" | "fail" | "skipped"
    witness: str | None = None
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    ref: str
    fn: Callable[[SuiteConfig, Corpus], CheckOutcome]


def _fields(config: SuiteConfig) -> list[tuple[str, RingSpec]]:
    return [
        (name, ring)
        for name, ring in zip(config.rings, config.ring_specs())
        if ring.is_field
    ]


def _primary_field(config: SuiteConfig) -> tuple[str, RingSpec] | None:
    """The first configured field with 2 invertible (Q preferred by order)."""
    for name, ring in _fields(config):
        if ring.two_invertible:
            return name, ring
    return None


def check_corpus_sanity(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    checked = 0
    for case in corpus.pairs:
        if case.expected is None:
            continue
        checked += 1
        verdict = is_neighbour(case.f, case.g)
        if verdict.ok != case.expected:
            if case.expected:
                _, text = shrink_failing_pair(case)
            else:
                text = "expected a separation but the maps are neighbours"
            return CheckOutcome(
                "fail",
                f"case {case.index} over {case.ring_name} ({case.tag}): {text}",
                {"checked": checked},
            )
    return CheckOutcome("pass", None, {"checked": checked, "cases": len(corpus.pairs)})


def check_criteria_agreement(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    for case in corpus.pairs:
        direct = is_neighbour(case.f, case.g)
        product_form = is_neighbour_product_form(case.f, case.g)
        symmetric = is_neighbour(case.g, case.f)
        if not (direct.ok == product_form.ok == symmetric.ok):
            return CheckOutcome(
                "fail",
                f"case {case.index}: difference test {direct.ok}, "
                f"product form {product_form.ok}, swapped {symmetric.ok}",
            )
        if not is_neighbour(case.f, case.f):
            return CheckOutcome("fail", f"case {case.index}: reflexivity broken")
    return CheckOutcome("pass", None, {"pairs": len(corpus.pairs)})


def check_square_zero_agreement(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    eligible = [
        case
        for case in corpus.pairs
        if RingSpec.parse(case.ring_name).two_invertible
    ]
    if not eligible:
        return CheckOutcome("skipped", "no configured ring has 2 invertible")
    for case in eligible:
        squares = is_square_zero_pair(case.f, case.g)
        direct = is_neighbour(case.f, case.g)
        if squares.ok != direct.ok:
            return CheckOutcome(
                "fail",
                f"case {case.index} over {case.ring_name}: square test {squares.ok} "
                f"vs neighbour test {direct.ok}",
            )
    return CheckOutcome("pass", None, {"pairs": len(eligible)})


def check_char_two_separation(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    if "Z/2" not in config.rings:
        return CheckOutcome("skipped", "Z/2 not configured")
    ring = RingSpec.modular(2)
    codomain = squares_only(ring, 2)
    domain = _free_domain(ring, 2)
    f = AlgebraMap(domain, codomain, [codomain.zero(), codomain.zero()])
    g = AlgebraMap(domain, codomain, codomain.generators())
    squares = is_square_zero_pair(f, g)
    direct = is_neighbour(f, g)
    if not squares.ok:
        return CheckOutcome("fail", f"square test rejected the pair: {squares.witness}")
    if direct.ok:
        return CheckOutcome("fail", "the pair must not be neighbours over Z/2")
    witness = direct.witness
    assert witness is not None
    expected = codomain.generator(0) * codomain.generator(1)
    if witness.value != expected:
        return CheckOutcome("fail", f"unexpected witness {witness.value}")
    return CheckOutcome(
        "pass", None, {"witness": str(witness.value), "note": "bounded square test diverges"}
    )


def check_precomposition(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "precomposition")
    budget = min(len(corpus.pairs), 60)
    checked = 0
    for case in corpus.pairs[:budget]:
        n = len(case.domain.varset)
        wide = _free_domain(case.codomain.ring, n + 1)
        # surjective: keep the generators, send the extra one anywhere
        images = [case.domain.generator(i) for i in range(n)]
        images.append(
            case.domain.element(
                _random_poly(rng, case.domain.varset, case.codomain.ring, 2)
            )
        )
        onto = AlgebraMap(wide, case.domain, images)
        before = is_neighbour(case.f, case.g).ok
        after = is_neighbour(compose(case.f, onto), compose(case.g, onto)).ok
        if before != after:
            return CheckOutcome(
                "fail",
                f"case {case.index}: verdict changed along a surjection "
                f"({before} -> {after})",
            )
        checked += 1
        if before:
            # arbitrary (not necessarily onto) precomposition preserves it
            narrow = _free_domain(case.codomain.ring, max(1, n - 1))
            arbitrary = AlgebraMap(
                narrow,
                case.domain,
                [
                    case.domain.element(
                        _random_poly(rng, case.domain.varset, case.codomain.ring, 2)
                    )
                    for _ in range(len(narrow.varset))
                ],
            )
            if not is_neighbour(compose(case.f, arbitrary), compose(case.g, arbitrary)):
                return CheckOutcome(
                    "fail", f"case {case.index}: lost neighbours under precomposition"
                )
    return CheckOutcome("pass", None, {"cases": checked})


def check_postcomposition(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "postcomposition")
    checked = 0
    for case in corpus.pairs:
        if not is_neighbour(case.f, case.g):
            continue
        codomain = case.codomain
        ring = codomain.ring
        n = len(codomain.varset)
        # diagonal rescaling is a valid endomorphism of every monomial quotient
        scalars = [_random_value(rng, ring) for _ in range(n)]
        endo = AlgebraMap(
            codomain,
            codomain,
            [codomain.generator(i) * codomain.element(scalars[i]) for i in range(n)],
        )
        if not is_neighbour(compose(endo, case.f), compose(endo, case.g)):
            return CheckOutcome(
                "fail", f"case {case.index}: rescaling endomorphism broke the relation"
            )
        # collapsing into the full square-zero algebra also works
        collapse_target = corpus.weil(case.ring_name, "full", n)
        collapse = AlgebraMap(codomain, collapse_target, collapse_target.generators())
        if not is_neighbour(compose(collapse, case.f), compose(collapse, case.g)):
            return CheckOutcome(
                "fail", f"case {case.index}: collapse map broke the relation"
            )
        checked += 1
    return CheckOutcome("pass", None, {"neighbour_cases": checked})


def check_kernel_rewriting(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "kernel")
    specs = list(zip(config.rings, config.ring_specs()))
    done = 0
    for i in range(config.case_count):
        name, ring = specs[i % len(specs)]
        n = rng.randint(1, config.n_max)
        presented = rng.random() < 0.25
        base = corpus.weil(name, "squares", n) if presented else _free_domain(ring, n)
        t_algebra, include0, include1 = tensor(base, base)
        total = t_algebra.zero()
        for _ in range(rng.randint(1, 2)):
            a = base.element(_random_poly(rng, base.varset, ring, 2))
            b = base.element(_random_poly(rng, base.varset, ring, 2))
            total = total + include0.apply(a) * (include1.apply(b) - include0.apply(b))
        pairs = rewrite_kernel_element(base, total)
        rebuilt = t_algebra.zero()
        for coeff, generator in pairs:
            rebuilt = rebuilt + coeff * generator
        if rebuilt != total:
            return CheckOutcome("fail", f"re-expansion mismatch on case {i}")
        done += 1
    # non-kernel elements must be rejected with their multiplication image
    ring = config.ring_specs()[0]
    base = _free_domain(ring, 1)
    _, include0, _ = tensor(base, base)
    try:
        rewrite_kernel_element(base, include0.apply(base.generator(0)))
        return CheckOutcome("fail", "a non-kernel element was accepted")
    except NotInKernel:
        pass
    return CheckOutcome("pass", None, {"cases": done})


def check_diagonal_ideal_kernel(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    checked = 0
    for name, ring in zip(config.rings, config.ring_specs()):
        for n in range(1, config.n_max + 1):
            for base in (_free_domain(ring, n), corpus.weil(name, "mixed", n)):
                mult = multiplication_map(base)
                for gen in diagonal_ideal(base, 1).generators:
                    image = mult.apply(gen)
                    if not image.is_zero():
                        return CheckOutcome(
                            "fail",
                            f"generator {gen} of the diagonal ideal of {base!r} "
                            f"maps to {image}",
                        )
                    checked += 1
    return CheckOutcome("pass", None, {"generators": checked})


def check_difference_decomposition(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "decompose")
    specs = list(zip(config.rings, config.ring_specs()))
    done = 0
    max_width = 0
    for i in range(config.case_count):
        _, ring = specs[i % len(specs)]
        n = rng.randint(1, config.n_max)
        varset = VarSet(tuple(f"X{k + 1}" for k in range(n)))
        p = _random_poly(rng, varset, ring, 4, max_terms=4)
        qs = decompose_difference(p)  # re-expansion asserted inside
        if len(qs) != n:
            return CheckOutcome("fail", f"case {i}: expected {n} cofactors, got {len(qs)}")
        max_width = max(max_width, n)
        done += 1
    return CheckOutcome("pass", None, {"cases": done, "max_vars": max_width})


def check_universal_property(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    factored = 0
    rejected = 0
    for case in corpus.pairs:
        simplex = universal_simplex(case.domain, 1)
        expected = is_neighbour(case.f, case.g).ok
        try:
            mediating = classifying_map(simplex, [case.f, case.g])
        except IllDefinedMap:
            mediating = None
        if (mediating is not None) != expected:
            return CheckOutcome(
                "fail",
                f"case {case.index}: factorization "
                f"{'succeeded' if mediating else 'failed'} but the pair is "
                f"{'neighbours' if expected else 'not neighbours'}",
            )
        if mediating is None:
            rejected += 1
            continue
        for vertex, original in zip(simplex.maps, (case.f, case.g)):
            if compose(mediating, vertex) != original:
                return CheckOutcome(
                    "fail", f"case {case.index}: composite does not restore the map"
                )
        factored += 1
    return CheckOutcome("pass", None, {"factored": factored, "rejected": rejected})


def check_universal_simplex_neighbours(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    # p = 1 works over every configured ring, including non-fields
    for _, ring in zip(config.rings, config.ring_specs()):
        for n in range(1, config.n_max + 1):
            simplex = universal_simplex(_free_domain(ring, n), 1)
            if not is_neighbour(simplex.maps[0], simplex.maps[1]):
                return CheckOutcome("fail", f"p=1 universal pair fails over {ring}, n={n}")
            instances += 1
    for _, ring in _fields(config):
        for p in range(2, config.p_max + 1):
            for n in range(1, config.n_max + 1):
                simplex = universal_simplex(_free_domain(ring, n), p)
                for r in range(p + 1):
                    for s in range(r + 1, p + 1):
                        if not is_neighbour(simplex.maps[r], simplex.maps[s]):
                            return CheckOutcome(
                                "fail",
                                f"universal simplex p={p}, n={n} over {ring}: "
                                f"maps {r},{s}",
                            )
                instances += 1
        # presented base, tensor representation
        base = squares_only(ring, 2)
        simplex = universal_simplex(base, 1)
        if not is_neighbour(simplex.maps[0], simplex.maps[1]):
            return CheckOutcome(
                "fail",
                f"tensor-representation pair is not a neighbour pair over {ring}",
            )
        instances += 1
    primary = _primary_field(config)
    if primary is not None:
        _, ring = primary
        # the two representations of the free-base neighbourhood are isomorphic:
        # each factors through the other, and the composites restore the maps
        free_base = _free_domain(ring, 2)
        diff_rep = universal_simplex(free_base, 1, representation="difference")
        tens_rep = universal_simplex(free_base, 1, representation="tensor")
        to_diff = classifying_map(tens_rep, list(diff_rep.maps))
        to_tens = classifying_map(diff_rep, list(tens_rep.maps))
        for r in range(2):
            if compose(to_diff, tens_rep.maps[r]) != diff_rep.maps[r]:
                return CheckOutcome("fail", "representation comparison broke (to difference)")
            if compose(to_tens, diff_rep.maps[r]) != tens_rep.maps[r]:
                return CheckOutcome("fail", "representation comparison broke (to tensor)")
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def check_simplex_matrix_criterion(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    checked = 0
    for case in corpus.pairs:
        matrix = matrix_of_maps([case.f, case.g])
        by_matrix = is_simplex(matrix).ok
        by_maps = is_neighbour(case.f, case.g).ok
        by_vectors = vectors_neighbour(case.f.images, case.g.images).ok
        if not (by_matrix == by_maps == by_vectors):
            return CheckOutcome(
                "fail",
                f"case {case.index}: matrix {by_matrix}, maps {by_maps}, vectors {by_vectors}",
            )
        checked += 1
    return CheckOutcome("pass", None, {"matrices": checked})


def check_squares_insufficient(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    results = {}
    for name, ring in zip(config.rings, config.ring_specs()):
        codomain = squares_only(ring, 2)
        domain = _free_domain(ring, 2)
        f = AlgebraMap(domain, codomain, [codomain.zero(), codomain.zero()])
        g = AlgebraMap(domain, codomain, codomain.generators())
        deltas = [gi - fi for fi, gi in zip(f.images, g.images)]
        squares_vanish = all((d * d).is_zero() for d in deltas)
        verdict = is_neighbour(f, g)
        if not squares_vanish:
            return CheckOutcome("fail", f"a generator square survived over {name}")
        if verdict.ok:
            return CheckOutcome("fail", f"pair must not be neighbours over {name}")
        witness = verdict.witness
        assert witness is not None
        if witness.value != codomain.generator(0) * codomain.generator(1):
            return CheckOutcome("fail", f"unexpected witness {witness.value} over {name}")
        results[name] = str(witness.value)
    return CheckOutcome("pass", None, {"witness": results})


def check_not_transitive(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    for name, ring in zip(config.rings, config.ring_specs()):
        codomain = squares_only(ring, 2)
        domain = _free_domain(ring, 2)
        zero = codomain.zero()
        e1, e2 = codomain.generators()
        f = AlgebraMap(domain, codomain, [zero, zero])
        g = AlgebraMap(domain, codomain, [e1, zero])
        h = AlgebraMap(domain, codomain, [e1, e2])
        if not (is_neighbour(f, g) and is_neighbour(g, h)):
            return CheckOutcome("fail", f"chain links must be neighbours over {name}")
        if is_neighbour(f, h):
            return CheckOutcome("fail", f"transitivity unexpectedly holds over {name}")
    return CheckOutcome("pass", None, {"rings": list(config.rings)})


def _monomial_pairs(base: FpAlgebra, degree_bound: int):
    """All monomial pairs (u, v) with deg u + deg v <= bound, u, v nonconstant
    allowed to be constant too; exhaustive but tiny at desk scale."""
    n = len(base.varset)

    def monomials_up_to(d: int):
        out = [[0] * n]
        frontier = [[0] * n]
        for _ in range(d):
            new_front = []
            for exps in frontier:
                start = next((i for i, e in enumerate(exps) if e), n - 1) if any(exps) else n - 1
                for i in range(start + 1):
                    cand = list(exps)
                    cand[i] += 1
                    new_front.append(cand)
            # deduplicate deterministically
            seen = set()
            frontier = []
            for cand in new_front:
                key = tuple(cand)
                if key not in seen:
                    seen.add(key)
                    frontier.append(cand)
            out.extend(frontier)
        return [tuple(e) for e in out]

    everything = monomials_up_to(degree_bound)
    for u in everything:
        for v in everything:
            if sum(u) + sum(v) <= degree_bound:
                yield (
                    Polynomial(base.varset, base.ring, {u: 1}),
                    Polynomial(base.varset, base.ring, {v: 1}),
                )


def _pointwise_combination(
    maps: Sequence[AlgebraMap], weights: CoefficientVector, element
):
    total = weights.codomain.zero()
    for w, f in zip(weights, maps):
        total = total + w * f.apply(element)
    return total


def _neighbour_tuple(
    rng: random.Random,
    corpus: Corpus,
    ring_name: str,
    ring: RingSpec,
    p: int,
    n: int,
) -> tuple[FpAlgebra, FpAlgebra, list[AlgebraMap]]:
    """p+1 mutually neighbouring maps into a corpus Weil algebra."""
    pattern = "full" if rng.random() < 0.5 else "squares"
    codomain = corpus.weil(ring_name, pattern, n)
    domain = _free_domain(ring, n)
    base_images = [
        codomain.element(_random_poly(rng, codomain.varset, ring, 2)) for _ in range(n)
    ]
    maps = [AlgebraMap(domain, codomain, base_images)]
    for _ in range(p):
        deltas = _augmentation_delta(rng, codomain, general=(pattern == "full"))
        maps.append(
            AlgebraMap(
                domain,
                codomain,
                [b + d for b, d in zip(base_images, deltas)],
            )
        )
    return domain, codomain, maps


def _random_affine_weights(
    rng: random.Random, codomain: FpAlgebra, count: int
) -> CoefficientVector:
    tail = [
        codomain.element(_random_value(rng, codomain.ring)) for _ in range(count - 1)
    ]
    head = codomain.one()
    for t in tail:
        head = head - t
    return CoefficientVector(codomain, [head, *tail])


def check_affine_multiplicative(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    primary = _primary_field(config)
    if primary is not None:
        _, ring = primary
        for p in range(1, config.p_max + 1):
            for n in range(1, config.n_max + 1):
                base = _free_domain(ring, n)
                simplex = universal_simplex(base, p)
                _, _, weights, lifted = generic_coefficients(simplex)
                combined = affine_combination(lifted, weights)
                for u, v in _monomial_pairs(base, config.degree_bound):
                    left = _pointwise_combination(lifted, weights, base.element(u))
                    right = _pointwise_combination(lifted, weights, base.element(v))
                    both = _pointwise_combination(lifted, weights, base.element(u * v))
                    if left * right != both:
                        return CheckOutcome(
                            "fail",
                            f"universal p={p}, n={n}: pointwise combination is not "
                            f"multiplicative on {u}, {v}",
                        )
                    if combined.apply(base.element(u)) != left:
                        return CheckOutcome(
                            "fail",
                            f"universal p={p}, n={n}: map disagrees with the pointwise "
                            f"combination on {u}",
                        )
                instances += 1
    rng = _rng(config, "affine-multiplicative")
    budget = min(config.case_count, 40)
    for i in range(budget):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        p = rng.randint(1, config.p_max)
        n = rng.randint(1, config.n_max)
        domain, codomain, maps = _neighbour_tuple(rng, corpus, name, ring, p, n)
        weights = _random_affine_weights(rng, codomain, p + 1)
        combined = affine_combination(maps, weights)
        for _ in range(2):
            a = domain.element(_random_poly(rng, domain.varset, ring, 2))
            b = domain.element(_random_poly(rng, domain.varset, ring, 2))
            lhs = _pointwise_combination(maps, weights, a * b)
            rhs = _pointwise_combination(maps, weights, a) * _pointwise_combination(
                maps, weights, b
            )
            if lhs != rhs:
                return CheckOutcome(
                    "fail", f"corpus instance {i}: pointwise combination not multiplicative"
                )
            if combined.apply(a) != _pointwise_combination(maps, weights, a):
                return CheckOutcome(
                    "fail", f"corpus instance {i}: map disagrees with pointwise values"
                )
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def check_affine_postcomposition(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "affine-post")
    budget = min(config.case_count, 30)
    done = 0
    for i in range(budget):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        p = rng.randint(1, config.p_max)
        n = rng.randint(1, config.n_max)
        _, codomain, maps = _neighbour_tuple(rng, corpus, name, ring, p, n)
        weights = _random_affine_weights(rng, codomain, p + 1)
        combined = affine_combination(maps, weights)
        target = corpus.weil(name, "full", n)
        post = AlgebraMap(codomain, target, target.generators())
        lhs = compose(post, combined)
        pushed_weights = CoefficientVector(target, [post.apply(w) for w in weights])
        pushed_maps = [compose(post, f) for f in maps]
        rhs = affine_combination(pushed_maps, pushed_weights)
        if lhs != rhs:
            return CheckOutcome("fail", f"instance {i}: postcomposition does not distribute")
        done += 1
    return CheckOutcome("pass", None, {"instances": done})


def check_bracket_identity(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    primary = _primary_field(config)
    if primary is not None:
        _, ring = primary
        p = min(config.p_max, 2)
        n = min(config.n_max, 2)
        base = _free_domain(ring, n)
        simplex = universal_simplex(base, p)
        for r in range(p + 1):
            for s in range(r + 1, p + 1):
                fr, fs = simplex.maps[r], simplex.maps[s]
                for u, v in _monomial_pairs(base, config.degree_bound):
                    ue, ve = base.element(u), base.element(v)
                    lhs = fr.apply(ue) * fs.apply(ve) + fs.apply(ue) * fr.apply(ve)
                    rhs = fr.apply(ue * ve) + fs.apply(ue * ve)
                    if lhs != rhs:
                        return CheckOutcome(
                            "fail", f"universal bracket identity fails on {u}, {v}"
                        )
                instances += 1
    rng = _rng(config, "bracket")
    for i in range(min(config.case_count, 30)):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        n = rng.randint(1, config.n_max)
        domain, _, maps = _neighbour_tuple(rng, corpus, name, ring, 1, n)
        f, g = maps[0], maps[1]
        a = domain.element(_random_poly(rng, domain.varset, ring, 2))
        b = domain.element(_random_poly(rng, domain.varset, ring, 2))
        lhs = f.apply(a) * g.apply(b) + g.apply(a) * f.apply(b)
        rhs = f.apply(a * b) + g.apply(a * b)
        if lhs != rhs:
            return CheckOutcome("fail", f"corpus bracket identity fails on instance {i}")
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def _two_generic_combinations(simplex) -> tuple[AlgebraMap, AlgebraMap]:
    """F = sum t_r f_r and G = sum s_r f_r with independent formal weights."""
    extended, _, t_weights, lifted = generic_coefficients(simplex, "t")
    p = simplex.p
    s_names = ("s",) if p == 1 else tuple(f"s{r}" for r in range(1, p + 1))
    wider, inclusion = adjoin_variables(extended, s_names)
    lifted2 = tuple(compose(inclusion, f) for f in lifted)
    t_weights2 = CoefficientVector(wider, [inclusion.apply(w) for w in t_weights])
    offset = len(extended.varset)
    s_tail = [wider.generator(offset + k) for k in range(p)]
    s_head = wider.one()
    for v in s_tail:
        s_head = s_head - v
    s_weights = CoefficientVector(wider, [s_head, *s_tail])
    return (
        affine_combination(lifted2, t_weights2),
        affine_combination(lifted2, s_weights),
    )


def check_combinations_neighbours(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    primary = _primary_field(config)
    if primary is not None:
        _, ring = primary
        for p in range(1, config.p_max + 1):
            for n in range(1, config.n_max + 1):
                simplex = universal_simplex(_free_domain(ring, n), p)
                first, second = _two_generic_combinations(simplex)
                verdict = is_neighbour(first, second)
                if not verdict:
                    return CheckOutcome(
                        "fail", f"universal p={p}, n={n}: {verdict.witness}"
                    )
                instances += 1
    rng = _rng(config, "combo-pairs")
    p_top = max(config.p_max, 3)
    n_top = max(config.n_max, 3)
    for p in range(1, p_top + 1):
        for n in range(1, n_top + 1):
            for i in range(config.case_count):
                name = config.rings[i % len(config.rings)]
                ring = config.ring_specs()[i % len(config.rings)]
                _, codomain, maps = _neighbour_tuple(rng, corpus, name, ring, p, n)
                w1 = _random_affine_weights(rng, codomain, p + 1)
                w2 = _random_affine_weights(rng, codomain, p + 1)
                first = affine_combination(maps, w1)
                second = affine_combination(maps, w2)
                if not is_neighbour(first, second):
                    return CheckOutcome(
                        "fail", f"corpus combination pair fails at p={p}, n={n}, case {i}"
                    )
                instances += 1
    return CheckOutcome(
        "pass", None, {"instances": instances, "p_max": p_top, "n_max": n_top}
    )


def check_combination_of_combinations(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    primary = _primary_field(config)
    if primary is not None:
        _, ring = primary
        n = min(config.n_max, 2)
        simplex = universal_simplex(_free_domain(ring, n), 1)
        extended, _, _, lifted = generic_coefficients(simplex, "u")
        wider, inclusion = adjoin_variables(extended, ("v", "w"))
        maps = tuple(compose(inclusion, f) for f in lifted)
        u = wider.generator(len(simplex.algebra.varset))
        v = wider.generator(len(extended.varset))
        w = wider.generator(len(extended.varset) + 1)
        one = wider.one()
        g0 = affine_combination(maps, CoefficientVector(wider, [one - u, u]))
        g1 = affine_combination(maps, CoefficientVector(wider, [one - v, v]))
        outer = affine_combination([g0, g1], CoefficientVector(wider, [one - w, w]))
        inner_weight = (one - w) * u + w * v
        direct = affine_combination(
            maps, CoefficientVector(wider, [one - inner_weight, inner_weight])
        )
        if outer != direct:
            return CheckOutcome("fail", "universal composed weights disagree")
        instances += 1
    rng = _rng(config, "combo-combo")
    for i in range(min(config.case_count, 25)):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        p = rng.randint(1, config.p_max)
        n = rng.randint(1, config.n_max)
        _, codomain, maps = _neighbour_tuple(rng, corpus, name, ring, p, n)
        rows = [_random_affine_weights(rng, codomain, p + 1) for _ in range(2)]
        combos = [affine_combination(maps, row) for row in rows]
        outer_weights = _random_affine_weights(rng, codomain, 2)
        lhs = affine_combination(combos, outer_weights)
        merged = []
        for r in range(p + 1):
            acc = codomain.zero()
            for l in range(2):
                acc = acc + outer_weights[l] * rows[l][r]
            merged.append(acc)
        rhs = affine_combination(maps, CoefficientVector(codomain, merged))
        if lhs != rhs:
            return CheckOutcome("fail", f"instance {i}: composed weights disagree")
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def check_generic_classifier(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    instances = 0
    # p = 1 on a free base works over every ring, and has a known shape
    for _, ring in zip(config.rings, config.ring_specs()):
        base = _free_domain(ring, min(config.n_max, 2))
        generic = canonical_map(base, 1)
        expected_names = [f"d_{v}" for v in base.varset.names]
        codomain = generic.codomain
        t = codomain.generator("t")
        for i, name in enumerate(base.varset.names):
            image = generic.images[i]
            shaped = codomain.generator(name) + t * codomain.generator(expected_names[i])
            if image != shaped:
                return CheckOutcome(
                    "fail", f"generic image over {ring} is {image}, wanted {shaped}"
                )
        instances += 1
    for _, ring in _fields(config):
        for p in range(1, config.p_max + 1):
            canonical_map(_free_domain(ring, config.n_max), p)  # IllDefinedMap = bug
            instances += 1
        canonical_map(squares_only(ring, 2), 1)
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def _random_dtilde_matrix(
    rng: random.Random, corpus: Corpus, name: str, ring: RingSpec, p: int, n: int
) -> SimplexMatrix:
    """A member of the difference variety: anchored differences of a simplex."""
    _, codomain, maps = _neighbour_tuple(rng, corpus, name, ring, p, n)
    rows = []
    for r in range(1, p + 1):
        rows.append(
            [maps[r].images[j] - maps[0].images[j] for j in range(n)]
        )
    return SimplexMatrix(codomain, rows)


def check_zero_anchored_criterion(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    # universal instances: the generic matrix is a member by construction,
    # and prepending a zero row must give a simplex (exact normal forms)
    universal = 0
    for _, ring in _fields(config):
        for p, n in ((2, 2), (1, 2)):
            _, matrix = universal_dtilde(p, n, ring)
            if not in_dtilde(matrix).ok:
                return CheckOutcome(
                    "fail", f"generic {p}x{n} matrix rejected over {ring}"
                )
            if not is_simplex(matrix.prepend_zero_row()).ok:
                return CheckOutcome(
                    "fail", f"anchored generic {p}x{n} matrix fails over {ring}"
                )
            universal += 1
    rng = _rng(config, "anchored")
    members = 0
    others = 0
    for i in range(min(config.case_count, 80)):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        p = rng.randint(1, config.p_max)
        n = rng.randint(1, config.n_max)
        if i % 2 == 0:
            matrix = _random_dtilde_matrix(rng, corpus, name, ring, p, n)
        else:
            codomain = corpus.weil(name, "mixed", n)
            matrix = SimplexMatrix(
                codomain,
                [
                    [
                        codomain.element(_random_poly(rng, codomain.varset, ring, 2))
                        for _ in range(n)
                    ]
                    for _ in range(p)
                ],
            )
        direct = in_dtilde(matrix).ok
        anchored = is_simplex(matrix.prepend_zero_row()).ok
        if direct != anchored:
            bad = shrink_failing_matrix(
                matrix,
                lambda m: in_dtilde(m).ok != is_simplex(m.prepend_zero_row()).ok,
            )
            return CheckOutcome(
                "fail",
                f"instance {i}: membership {direct} but anchored simplex {anchored}; "
                f"minimal matrix:\n{bad}",
            )
        if direct and i % 2 == 0:
            members += 1
        else:
            others += 1
    if members == 0:
        return CheckOutcome("fail", "no constructed member exercised the criterion")
    return CheckOutcome(
        "pass", None, {"members": members, "others": others, "universal": universal}
    )


def check_determinant_identity(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    primary = _primary_field(config)
    if primary is None:
        return CheckOutcome("skipped", "no configured field has 2 invertible")
    name, ring = primary
    algebra, matrix = universal_dtilde(2, 2, ring)
    det = matrix.entry(0, 0) * matrix.entry(1, 1) - matrix.entry(0, 1) * matrix.entry(1, 0)
    doubled = matrix.entry(0, 0) * matrix.entry(1, 1) * algebra.element(2)
    if det != doubled:
        return CheckOutcome("fail", f"determinant is {det}, not {doubled}")
    if det.is_zero():
        return CheckOutcome("fail", "determinant collapsed to zero (vacuous identity)")
    if "Z/2" in config.rings:
        algebra2, matrix2 = universal_dtilde(2, 2, RingSpec.modular(2))
        det2 = (
            matrix2.entry(0, 0) * matrix2.entry(1, 1)
            - matrix2.entry(0, 1) * matrix2.entry(1, 0)
        )
        if not det2.is_zero():
            return CheckOutcome(
                "fail", f"over Z/2 the determinant must vanish, got {det2}"
            )
    return CheckOutcome("pass", None, {"field": name, "determinant": str(det)})


def check_transposition(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    primary = _primary_field(config)
    instances = 0
    if primary is not None:
        _, ring = primary
        shapes = [(2, 2)] + [(1, n) for n in range(1, config.n_max + 1)] + [
            (n, 1) for n in range(2, config.n_max + 1)
        ]
        for p, n in shapes:
            _, matrix = universal_dtilde(p, n, ring)
            verdict = in_dtilde(matrix.transpose())
            if not verdict:
                return CheckOutcome(
                    "fail", f"universal {p}x{n} transpose fails: {verdict.witness}"
                )
            instances += 1
    rng = _rng(config, "transpose")
    for i in range(min(config.case_count, 40)):
        name = config.rings[i % len(config.rings)]
        ring = config.ring_specs()[i % len(config.rings)]
        p = rng.randint(1, config.p_max)
        n = rng.randint(1, config.n_max)
        if i % 2 == 0:
            matrix = _random_dtilde_matrix(rng, corpus, name, ring, p, n)
        else:
            codomain = corpus.weil(name, "mixed", n)
            matrix = SimplexMatrix(
                codomain,
                [
                    [
                        codomain.element(_random_poly(rng, codomain.varset, ring, 2))
                        for _ in range(n)
                    ]
                    for _ in range(p)
                ],
            )
        if in_dtilde(matrix).ok != in_dtilde(matrix.transpose()).ok:
            return CheckOutcome("fail", f"instance {i}: transpose changed the verdict")
        instances += 1
    return CheckOutcome("pass", None, {"instances": instances})


def check_row_extension(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    rng = _rng(config, "extension")
    p_top = max(config.p_max, 3)
    n_top = max(config.n_max, 3)
    instances = 0
    for p in range(1, p_top + 1):
        for n in range(1, n_top + 1):
            for i in range(config.case_count):
                name = config.rings[i % len(config.rings)]
                ring = config.ring_specs()[i % len(config.rings)]
                matrix = _random_dtilde_matrix(rng, corpus, name, ring, p, n)
                weights = [
                    matrix.codomain.element(
                        _random_poly(rng, matrix.codomain.varset, ring, 1)
                    )
                    for _ in range(p)
                ]
                extended = extend_matrix(matrix, weights)
                verdict = in_dtilde(extended)
                if not verdict:
                    bad = shrink_failing_matrix(
                        extended, lambda m: not in_dtilde(m).ok
                    )
                    return CheckOutcome(
                        "fail",
                        f"extension failed at p={p}, n={n}, case {i}: "
                        f"{verdict.witness}; minimal matrix:\n{bad}",
                    )
                instances += 1
    primary = _primary_field(config)
    if primary is not None:
        # fully generic instance: extend the universal 2x2 matrix by formal weights
        _, ring = primary
        algebra, matrix = universal_dtilde(2, 2, ring)
        wider, inclusion = adjoin_variables(algebra, ("c1", "c2"))
        lifted = SimplexMatrix(
            wider, [[inclusion.apply(x) for x in row] for row in matrix.entries]
        )
        weights = [wider.generator("c1"), wider.generator("c2")]
        verdict = in_dtilde(extend_matrix(lifted, weights))
        if not verdict:
            return CheckOutcome("fail", f"generic extension fails: {verdict.witness}")
        instances += 1
    return CheckOutcome(
        "pass", None, {"instances": instances, "p_max": p_top, "n_max": n_top}
    )


def check_meta(config: SuiteConfig, corpus: Corpus) -> CheckOutcome:
    ids = [spec.check_id for spec in CHECKS]
    if len(set(ids)) != len(ids):
        return CheckOutcome("fail", "duplicate check ids in the registry")
    return CheckOutcome("pass", None, {"registered": len(ids)})


CHECKS: tuple[CheckSpec, ...] = (
    CheckSpec(
        "corpus-construction-sanity",
        "pinned corpus families have their designed neighbour verdicts",
        check_corpus_sanity,
    ),
    CheckSpec(
        "neighbour-criteria-agreement",
        "the difference-product and subtraction-free neighbour tests agree, "
        "and the relation is symmetric and reflexive",
        check_criteria_agreement,
    ),
    CheckSpec(
        "square-zero-agreement-when-two-invertible",
        "vanishing squares of differences is equivalent to the neighbour "
        "relation when 2 is invertible",
        check_square_zero_agreement,
    ),
    CheckSpec(
        "square-zero-char-two-separation",
        "over a characteristic-2 field the bounded square test is strictly "
        "weaker than the neighbour relation",
        check_char_two_separation,
    ),
    CheckSpec(
        "precomposition-and-reflection",
        "the neighbour verdict is preserved by precomposition and reflected "
        "along surjections",
        check_precomposition,
    ),
    CheckSpec(
        "postcomposition-stability",
        "the neighbour relation is stable under postcomposition",
        check_postcomposition,
    ),
    CheckSpec(
        "kernel-rewriting-reconstruction",
        "multiplication-kernel elements decompose over the standard kernel "
        "generators with copy-0 coefficients",
        check_kernel_rewriting,
    ),
    CheckSpec(
        "diagonal-ideal-inside-kernel",
        "every generator of the diagonal ideal is killed by the "
        "multiplication map",
        check_diagonal_ideal_kernel,
    ),
    CheckSpec(
        "difference-decomposition-reexpansion",
        "the difference of the two renamed copies of a polynomial expands "
        "over the variable differences with computed cofactors",
        check_difference_decomposition,
    ),
    CheckSpec(
        "first-neighbourhood-universal-property",
        "neighbour pairs factor through the first neighbourhood of the "
        "diagonal and non-neighbour pairs do not",
        check_universal_property,
    ),
    CheckSpec(
        "universal-simplex-mutual-neighbours",
        "the universal simplex maps are mutually neighbouring, in both "
        "representations, which factor through each other",
        check_universal_simplex_neighbours,
    ),
    CheckSpec(
        "simplex-matrix-criterion",
        "a matrix is an infinitesimal simplex exactly when its rows are "
        "pairwise neighbouring vectors (equivalently, its row maps are "
        "mutual neighbours)",
        check_simplex_matrix_criterion,
    ),
    CheckSpec(
        "per-generator-squares-insufficient",
        "vanishing per-generator squares do not imply the neighbour relation "
        "(two square-zero variables, witness is the cross product)",
        check_squares_insufficient,
    ),
    CheckSpec(
        "neighbour-not-transitive",
        "the neighbour relation is not transitive",
        check_not_transitive,
    ),
    CheckSpec(
        "affine-combination-multiplicative",
        "affine combinations of mutual neighbours act multiplicatively, so "
        "they are algebra maps",
        check_affine_multiplicative,
    ),
    CheckSpec(
        "affine-combination-postcomposition",
        "postcomposition distributes over affine combinations",
        check_affine_postcomposition,
    ),
    CheckSpec(
        "pairwise-bracket-identity",
        "mutual neighbours satisfy the symmetric product identity on all "
        "monomial pairs",
        check_bracket_identity,
    ),
    CheckSpec(
        "affine-combinations-pairwise-neighbours",
        "any two affine combinations of the same mutual neighbours are "
        "neighbours",
        check_combinations_neighbours,
    ),
    CheckSpec(
        "combination-of-combinations",
        "an affine combination of affine combinations is the affine "
        "combination with composed weights",
        check_combination_of_combinations,
    ),
    CheckSpec(
        "generic-affine-classifier",
        "the generic affine combination with formal weights is a well-defined "
        "map of the expected shape",
        check_generic_classifier,
    ),
    CheckSpec(
        "zero-anchored-criterion",
        "a matrix satisfies the difference-variety equations exactly when "
        "prepending a zero row yields a simplex",
        check_zero_anchored_criterion,
    ),
    CheckSpec(
        "dtilde-determinant-identity",
        "the generic 2x2 difference matrix has determinant equal to twice "
        "its diagonal product",
        check_determinant_identity,
    ),
    CheckSpec(
        "dtilde-transposition-stability",
        "the difference-variety equations are stable under transposition",
        check_transposition,
    ),
    CheckSpec(
        "dtilde-row-extension",
        "appending any weighted sum of rows preserves the difference-variety "
        "equations",
        check_row_extension,
    ),
    CheckSpec(
        "verification-meta",
        "the registry is well formed and every check reported a verdict",
        check_meta,
    ),
)


# ---------------------------------------------------------------------------
# running and reporting


@dataclass
class CheckRecord:
    check_id: str
    ref: str
    params: dict
    verdict: str
    witness: str | None
    ms: int


@dataclass
class VerificationReport:
    config: SuiteConfig
    records: list[CheckRecord]
    sabotaged: bool = False

    def passed(self) -> bool:
        return all(r.verdict != "fail" for r in self.records)

    def verdicts(self) -> dict[str, str]:
        return {r.check_id: r.verdict for r in self.records}

    def record(self, check_id: str) -> CheckRecord:
        for r in self.records:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)


def run_suite(config: SuiteConfig, sabotage: bool = False) -> VerificationReport:
    """Run every registered check against a fresh deterministic corpus."""
    corpus = build_corpus(config, sabotage)
    records = []
    for spec in CHECKS:
        started = time.perf_counter()
        try:
            outcome = spec.fn(config, corpus)
        except NbhdError as exc:
            outcome = CheckOutcome("fail", f"{type(exc).__name__}: {exc}")
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        records.append(
            CheckRecord(
                spec.check_id,
                spec.ref,
                outcome.params,
                outcome.verdict,
                outcome.witness,
                elapsed_ms,
            )
        )
    records.sort(key=lambda r: r.check_id)
    return VerificationReport(config, records, sabotage)


def emit_report(
    report: VerificationReport, format: str = "json", timings: bool = False
) -> str:
    """Render a report.

    JSON output zeroes the per-check milliseconds unless timings=True, so
    that two runs with the same configuration agree byte for byte; the text
    format is for humans and always shows wall-clock times.
    """
    if format == "json":
        checks = []
        for r in report.records:
            entry: dict = {
                "id": r.check_id,
                "paper_ref": r.ref,
                "params": r.params,
                "verdict": r.verdict,
                "ms": r.ms if timings else 0,
            }
            if r.witness is not None:
                entry["witness"] = r.witness
            checks.append(entry)
        doc = {"config": report.config.as_dict(), "checks": checks}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "text":
        lines = []
        width = max(len(r.check_id) for r in report.records)
        for r in report.records:
            line = (
                f"[{r.verdict:>7}] {r.check_id:<{width}}  {r.ms:>6} ms  -- {r.ref}"
            )
            if r.witness:
                line += f"\n          {r.witness}"
            lines.append(line)
        failed = sum(1 for r in report.records if r.verdict == "fail")
        skipped = sum(1 for r in report.records if r.verdict == "skipped")
        passed = len(report.records) - failed - skipped
        lines.append(
            f"{passed} passed, {failed} failed, {skipped} skipped"
            + (" [sabotaged corpus]" if report.sabotaged else "")
        )
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown report format {format!r}; expected json or text")


def fail_injection_flips(config: SuiteConfig) -> tuple[bool, list[str]]:
    """Self-test: knocking a relation out of the pinned corpus algebra must
    flip at least one verdict to fail.  Returns (flipped?, which ids)."""
    honest = run_suite(config).verdicts()
    sabotaged = run_suite(config, sabotage=True).verdicts()
    flipped = sorted(
        check_id
        for check_id, verdict in sabotaged.items()
        if verdict == "fail" and honest.get(check_id) != "fail"
    )
    return bool(flipped), flipped

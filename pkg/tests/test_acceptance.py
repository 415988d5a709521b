"""Acceptance gate: nine end-to-end criteria with pinned scales and budgets.

Each test prints one pass/fail line (bypassing capture) so the gate's
verdicts are visible in the plain pytest output.  Tolerances are exact —
every equality below is an equality of normal forms — and the only numeric
budgets are wall-clock ceilings on the three heavyweight criteria.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from nbhd.algebra import (
    AlgebraMap,
    classifying_map,
    compose,
    free_algebra,
    multiplication_map,
    tensor,
    universal_simplex,
)
from nbhd.arith import RingSpec
from nbhd.errors import IllDefinedMap
from nbhd.neighbour import (
    affine_combination,
    decompose_difference,
    generic_coefficients,
    in_dtilde,
    is_neighbour,
    is_neighbour_product_form,
    is_square_zero_pair,
    pair_varset,
    rewrite_kernel_element,
    universal_dtilde,
)
from nbhd.poly import Polynomial, VarSet
from nbhd.verify import (
    SuiteConfig,
    build_corpus,
    check_combinations_neighbours,
    check_row_extension,
    emit_report,
    fail_injection_flips,
    run_suite,
    squares_only,
)

QQ = RingSpec.rationals()
ZZ = RingSpec.integers()


@pytest.fixture
def announce(capsys):
    """One visible pass/fail line per criterion, printed outside capture."""

    @contextmanager
    def run(number, summary):
        started = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"[acceptance] criterion {number}: FAIL - {summary}", flush=True)
            raise
        elapsed = time.perf_counter() - started
        with capsys.disabled():
            print(
                f"[acceptance] criterion {number}: PASS - {summary} ({elapsed:.1f}s)",
                flush=True,
            )

    return run


def _free_domain(ring, n):
    return free_algebra(ring, tuple(f"X{i + 1}" for i in range(n)))


def _random_value(rng, ring):
    if ring.kind == "Q":
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    if ring.kind == "Z":
        return rng.randint(-4, 4)
    return rng.randint(0, ring.modulus - 1)


def _random_poly(rng, varset, ring, max_degree, max_terms):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        exps = [0] * len(varset)
        for _ in range(degree):
            exps[rng.randrange(len(varset))] += 1
        terms.append((tuple(exps), _random_value(rng, ring)))
    return Polynomial(varset, ring, terms)


# -- criterion 1 -------------------------------------------------------------


def test_criterion_1_cross_product_witness_under_one_second(announce):
    with announce(1, "square-zero generators vs zero rejected with cross-product witness"):
        started = time.perf_counter()
        codomain = squares_only(QQ, 2)
        domain = _free_domain(QQ, 2)
        e1, e2 = codomain.generators()
        f = AlgebraMap(domain, codomain, [e1, e2])
        g = AlgebraMap(domain, codomain, [codomain.zero(), codomain.zero()])
        verdict = is_neighbour(f, g)
        assert not verdict.ok
        assert verdict.witness is not None
        assert verdict.witness.indices == (1, 2)
        assert verdict.witness.value == e1 * e2
        assert not verdict.witness.value.is_zero()
        # each per-generator difference squares to zero on its own
        for delta in (e1, e2):
            assert (delta * delta).is_zero()
        assert time.perf_counter() - started < 1.0


# -- criterion 2 -------------------------------------------------------------


def test_criterion_2_difference_and_product_forms_agree(announce):
    with announce(2, "difference-product and product-form tests agree on 200+ pairs"):
        config = SuiteConfig(seed=2, case_count=200)
        corpus = build_corpus(config)
        assert len(corpus.pairs) >= 200
        rings_seen = set()
        disagreements = 0
        for case in corpus.pairs:
            rings_seen.add(case.ring_name)
            direct = is_neighbour(case.f, case.g)
            product = is_neighbour_product_form(case.f, case.g)
            if direct.ok != product.ok:
                disagreements += 1
        assert disagreements == 0
        assert rings_seen == set(config.rings)


# -- criterion 3 -------------------------------------------------------------


def test_criterion_3_square_test_equivalence_and_char_two_divergence(announce):
    with announce(3, "square test matches neighbours over Q, diverges over Z/2"):
        config = SuiteConfig(seed=3, rings=("Q",), case_count=200)
        corpus = build_corpus(config)
        neighbours = 0
        rejections = 0
        for case in corpus.pairs:
            squares = is_square_zero_pair(case.f, case.g)
            direct = is_neighbour(case.f, case.g)
            assert squares.ok == direct.ok
            if direct.ok:
                neighbours += 1
            else:
                rejections += 1
        # both answers must actually occur or the equivalence is vacuous
        assert neighbours > 0
        assert rejections > 0

        two = RingSpec.modular(2)
        codomain = squares_only(two, 2)
        domain = _free_domain(two, 2)
        f = AlgebraMap(domain, codomain, [codomain.zero(), codomain.zero()])
        g = AlgebraMap(domain, codomain, list(codomain.generators()))
        squares = is_square_zero_pair(f, g)
        direct = is_neighbour(f, g)
        assert squares.ok and not direct.ok
        assert direct.witness.value == codomain.generator(0) * codomain.generator(1)


# -- criterion 4 -------------------------------------------------------------


def test_criterion_4_factorization_exactly_for_neighbour_pairs(announce):
    with announce(4, "pairs factor through the first neighbourhood iff neighbours"):
        config = SuiteConfig(seed=4, case_count=200)
        corpus = build_corpus(config)
        factored = 0
        rejected = 0
        for case in corpus.pairs:
            expected = is_neighbour(case.f, case.g).ok
            simplex = universal_simplex(case.domain, 1)
            try:
                mediating = classifying_map(simplex, [case.f, case.g])
            except IllDefinedMap:
                mediating = None
            assert (mediating is not None) == expected
            if mediating is None:
                rejected += 1
                continue
            for vertex, original in zip(simplex.maps, (case.f, case.g)):
                assert compose(mediating, vertex) == original
            factored += 1
        assert factored > 0
        assert rejected > 0
        assert factored + rejected == len(corpus.pairs)


# -- criterion 5 -------------------------------------------------------------


def _monomials_up_to(varset, ring, bound):
    out = []
    frontier = [(0,) * len(varset)]
    out.extend(frontier)
    for _ in range(bound):
        grown = []
        for exps in frontier:
            for i in range(len(varset)):
                cand = list(exps)
                cand[i] += 1
                grown.append(tuple(cand))
        frontier = sorted(set(grown))
        out.extend(frontier)
    return [Polynomial(varset, ring, {exps: 1}) for exps in out]


def test_criterion_5_generic_combination_multiplicative_exhaustively(announce):
    with announce(5, "generic affine combinations multiplicative on all small monomial pairs"):
        started = time.perf_counter()
        pairs_checked = 0
        for p in (1, 2):
            for n in (1, 2, 3):
                base = _free_domain(QQ, n)
                simplex = universal_simplex(base, p)
                _, _, weights, lifted = generic_coefficients(simplex)
                combined = affine_combination(lifted, weights)
                target = weights.codomain

                def pointwise(poly):
                    total = target.zero()
                    for w, m in zip(weights, lifted):
                        total = total + w * m.apply(base.element(poly))
                    return total

                monomials = _monomials_up_to(base.varset, QQ, 3)
                for u in monomials:
                    for v in monomials:
                        if u.total_degree() + v.total_degree() > 3:
                            continue
                        left = pointwise(u)
                        right = pointwise(v)
                        assert left * right == pointwise(u * v)
                        assert combined.apply(base.element(u)) == left
                        pairs_checked += 1
        # ordered monomial pairs with total degree <= 3: 10 for n=1 (four
        # monomials 1,X,X^2,X^3 -> pairs with a+b<=3), 35 for n=2, 84 for n=3;
        # each counted once per p in {1, 2}
        assert pairs_checked == 2 * (10 + 35 + 84)
        assert time.perf_counter() - started < 120.0


# -- criterion 6 -------------------------------------------------------------


def test_criterion_6_combination_pairs_and_row_extension_at_scale(announce):
    with announce(6, "combination pairs neighbours + row extension, 200 cases per shape"):
        config = SuiteConfig(seed=6, rings=("Q", "Z", "Z/3"), case_count=200)
        corpus = build_corpus(config)

        combos = check_combinations_neighbours(config, corpus)
        assert combos.verdict == "pass", combos.witness
        # 200 corpus cases for every shape (p, n) in [1,3] x [1,3]
        assert combos.params["instances"] >= 9 * 200
        assert combos.params["p_max"] == 3 and combos.params["n_max"] == 3

        extension = check_row_extension(config, corpus)
        assert extension.verdict == "pass", extension.witness
        assert extension.params["instances"] >= 9 * 200
        assert extension.params["p_max"] == 3 and extension.params["n_max"] == 3


# -- criterion 7 -------------------------------------------------------------


def test_criterion_7_determinant_identity_and_transposition(announce):
    with announce(7, "generic 2x2 determinant equals twice the diagonal product"):
        algebra, matrix = universal_dtilde(2, 2, QQ)
        a11 = matrix.entry(0, 0)
        a12 = matrix.entry(0, 1)
        a21 = matrix.entry(1, 0)
        a22 = matrix.entry(1, 1)
        det = a11 * a22 - a12 * a21
        assert (det - algebra.element(2) * a11 * a22).is_zero()
        assert not det.is_zero()
        assert in_dtilde(matrix.transpose()).ok


# -- criterion 8 -------------------------------------------------------------


def test_criterion_8_constructive_rewriting_reexpands(announce):
    with announce(8, "difference decomposition and kernel rewriting re-expand exactly"):
        rng = random.Random("acceptance:constructive")
        rings = (QQ, ZZ)

        decomposed = 0
        for i in range(500):
            ring = rings[i % 2]
            n = rng.randint(1, 3)
            varset = VarSet(tuple(f"X{k + 1}" for k in range(n)))
            p = _random_poly(rng, varset, ring, 4, 4)
            cofactors = decompose_difference(p)
            assert len(cofactors) == n
            pvs = pair_varset(varset)
            copy0 = [Polynomial.variable(pvs, ring, k) for k in range(n)]
            copy1 = [Polynomial.variable(pvs, ring, n + k) for k in range(n)]
            rebuilt = Polynomial.zero(pvs, ring)
            for k in range(n):
                rebuilt = rebuilt + cofactors[k] * (copy1[k] - copy0[k])
            assert rebuilt == p.substitute(copy1) - p.substitute(copy0)
            decomposed += 1
        assert decomposed == 500

        rewritten = 0
        for i in range(500):
            ring = rings[i % 2]
            n = rng.randint(1, 3)
            base = _free_domain(ring, n)
            tensor_algebra, include0, include1 = tensor(base, base)
            element = tensor_algebra.zero()
            for _ in range(rng.randint(1, 2)):
                a = base.element(_random_poly(rng, base.varset, ring, 4, 3))
                b = base.element(_random_poly(rng, base.varset, ring, 4, 3))
                element = element + include0.apply(a) * (
                    include1.apply(b) - include0.apply(b)
                )
            assert multiplication_map(base).apply(element).is_zero()
            pairs = rewrite_kernel_element(base, element)
            rebuilt = tensor_algebra.zero()
            for coefficient, generator in pairs:
                rebuilt = rebuilt + coefficient * generator
            assert rebuilt == element
            rewritten += 1
        assert rewritten == 500


# -- criterion 9 -------------------------------------------------------------


def test_criterion_9_harness_integrity(announce):
    with announce(9, "fail injection flips a verdict; default run deterministic, <5min"):
        config = SuiteConfig()

        started = time.perf_counter()
        first = run_suite(config)
        elapsed = time.perf_counter() - started
        assert elapsed < 300.0
        assert first.passed()
        assert all(r.verdict == "pass" for r in first.records)

        second = run_suite(config)
        assert emit_report(first, "json") == emit_report(second, "json")

        flipped, which = fail_injection_flips(config)
        assert flipped
        assert "corpus-construction-sanity" in which

from __future__ import annotations

import itertools
import random

import pytest

import oracles as O
from tcx import (
    SearchBudget,
    inequality_suite,
    is_categorical,
    is_farber,
    is_strongly_collapsible,
    normalize,
    power,
    scat,
    tc,
    verify_cover,
)
from tcx.complex import generated_subcomplex, subcomplex
from tcx.errors import InconsistencyError, NotAPower, PreconditionViolated
from tcx.invariants import BoundResult, is_farber_by_definition, leq
from tcx.product import diagonal

FAST = SearchBudget(max_states=100_000, max_millis=20_000)
QUICK_FIXTURES = ["point", "edge", "full_triangle", "hollow_triangle", "cone",
                  "hollow_triangle_expanded", "full_triangle_expanded"]


def facet_subsets(K, max_size):
    for r in range(1, max_size + 1):
        yield from itertools.combinations(K.facets, r)


class TestOracles:
    def test_categorical_examples(self, hollow):
        path = generated_subcomplex(hollow, [hollow.simplex("ab"), hollow.simplex("ac")])
        assert is_categorical(path, FAST).yes
        assert is_categorical(generated_subcomplex(hollow, hollow.facets), FAST).no
        assert is_categorical(subcomplex(hollow, [hollow.simplex("b")]), FAST).yes

    def test_farber_examples(self, hollow, full):
        P = power(hollow, 2)
        diag = subcomplex(P.underlying, [diagonal(hollow, 2).image_mask(f) for f in hollow.facets])
        assert is_farber(diag, P, FAST).yes
        assert is_farber(generated_subcomplex(P.underlying, P.underlying.facets), P, FAST).verdict == "no"
        Q = power(full, 2)
        assert is_farber(generated_subcomplex(Q.underlying, Q.underlying.facets), Q, FAST).yes

    def test_farber_by_definition_examples(self, hollow):
        P = power(hollow, 2)
        diag = subcomplex(P.underlying, [diagonal(hollow, 2).image_mask(f) for f in hollow.facets])
        assert is_farber_by_definition(diag, P, FAST).yes
        assert is_farber_by_definition(generated_subcomplex(P.underlying, P.underlying.facets), P, FAST).no

    def test_farber_needs_power(self, hollow):
        with pytest.raises(NotAPower):
            is_farber(generated_subcomplex(hollow, hollow.facets), power(hollow, 2), FAST)

    @pytest.mark.parametrize("name", ["hollow_triangle", "cone", "hollow_triangle_expanded"])
    def test_categorical_matches_brute_force(self, corpus, name):
        K = corpus[name]
        nK = O.Naive.from_tcx(K)
        for gens in facet_subsets(K, len(K.facets)):
            omega = generated_subcomplex(K, gens)
            expected = O.categorical(O.generated(K.names(g) for g in gens), nK)
            assert is_categorical(omega, FAST).yes == expected

    def test_farber_matches_brute_force(self, hollow):
        P = power(hollow, 2)
        nK = O.Naive.from_tcx(hollow)
        U = P.underlying
        tuples = {U.labels[v]: tuple(hollow.labels[i] for i in P.vertex_tuples[v]) for v in range(U.n_vertices)}
        for gens in facet_subsets(U, 2):
            omega = generated_subcomplex(U, gens)
            naive = O.generated({tuples[x] for x in U.names(g)} for g in gens)
            assert is_farber(omega, P, FAST).yes == O.farber(naive, nK, 2)

    @pytest.mark.parametrize("kind", ["categorical", "farber"])
    def test_downward_closed(self, hollow, figure1, kind):
        rng = random.Random(11)
        if kind == "categorical":
            K = figure1
            feasible = lambda gens: is_categorical(generated_subcomplex(K, gens), FAST).yes  # noqa: E731
        else:
            P = power(hollow, 2)
            K = P.underlying
            feasible = lambda gens: is_farber(generated_subcomplex(K, gens), P, FAST).yes  # noqa: E731
        found = 0
        for _ in range(200):
            gens = rng.sample(K.facets, rng.randint(2, 4))
            if not feasible(gens):
                continue
            found += 1
            for r in range(1, len(gens)):
                for sub in itertools.combinations(gens, r):
                    assert feasible(list(sub))
        assert found >= 5


class TestScat:
    @pytest.mark.parametrize("name", QUICK_FIXTURES)
    def test_matches_brute_force(self, corpus, name):
        K = corpus[name]
        r = scat(K, FAST)
        assert r.exact
        assert r.value == O.scat(O.Naive.from_tcx(K))

    def test_values(self, hollow, full):
        assert scat(full, FAST).value == 0
        r = scat(hollow, FAST)
        assert r.value == 1 and len(r.certificate.elements) == 2

    def test_disconnected(self):
        K = normalize([["a"], ["b"]])
        r = scat(K, FAST)
        assert r.value == 1
        assert r.warnings


class TestTC:
    def test_hollow_triangle_matches_brute_force(self, hollow):
        r = tc(hollow, 2, FAST)
        assert r.exact and r.value == O.tc(O.Naive.from_tcx(hollow), 2) == 2

    @pytest.mark.parametrize("name", ["point", "edge", "cone"])
    def test_collapsible_zero(self, corpus, name):
        for n in (2, 3):
            assert tc(corpus[name], n, FAST).value == 0

    def test_edge_brute_force(self, corpus):
        assert O.tc(O.Naive.from_tcx(corpus["edge"]), 3) == 0

    def test_tightening_raises_lower(self, figure1):
        quick = SearchBudget(max_states=2_000, max_millis=3_000)
        below = BoundResult("scat(K)", 1, 1)
        r = tc(figure1, 2, quick, scat_below=below)
        assert r.lower >= 1

    def test_cross_check(self, hollow):
        with pytest.raises(InconsistencyError):
            tc(hollow, 2, FAST, scat_below=BoundResult("scat(K)", 5, 5))
        with pytest.raises(InconsistencyError):
            tc(hollow, 2, FAST, scat_above=BoundResult("scat(K^2)", 0, 1))

    def test_rejects_small_n(self, hollow):
        with pytest.raises(ValueError):
            tc(hollow, 1)

    def test_order_independent(self, hollow):
        rng = random.Random(5)
        for _ in range(3):
            facets = [hollow.names(f) for f in hollow.facets]
            rng.shuffle(facets)
            K = normalize([rng.sample(f, len(f)) for f in facets])
            assert tc(K, 2, FAST).value == 2


class TestCertificates:
    @pytest.mark.parametrize("name", QUICK_FIXTURES)
    def test_every_result_certified(self, corpus, name):
        K = corpus[name]
        for mode, r in (("scat", scat(K, FAST)), (2, tc(K, 2, FAST))):
            assert r.certificate is not None
            assert len(r.certificate.elements) == r.upper + 1
            assert verify_cover(K, mode, r.certificate)
            if r.exact and r.lower > 0:
                assert r.refutation.get("method") not in (None, "trivial")

    def test_mode_mismatch(self, hollow):
        r = scat(hollow, FAST)
        assert not verify_cover(hollow, 2, r.certificate)


class TestSuite:
    def test_full_triangle(self, full):
        rep = inequality_suite(full, 3, FAST)
        assert rep.holds and rep.all_exact
        assert all(q.value == 0 for q in rep.quantities.values())

    def test_hollow_triangle(self, hollow):
        rep = inequality_suite(hollow, 2, FAST)
        assert rep.holds and rep.all_exact
        q = rep.quantities
        assert q["scat(K)"].value <= q["TC_2(K)"].value <= q["scat(K^2)"].value
        assert (q["scat(K)"].value, q["TC_2(K)"].value, q["scat(K^2)"].value) == (1, 2, 2)

    def test_disconnected_rejected(self):
        with pytest.raises(PreconditionViolated):
            inequality_suite(normalize([["a"], ["b"]]), 2, FAST)

    def test_interval_semantics(self):
        assert leq("x", (1, 3), (2, 2)).holds
        assert not leq("x", (3, 3), (1, 2)).holds
        assert leq("x", (0, float("inf")), (0, 0)).holds

    def test_zero_iff_collapsible(self, corpus):
        for name in QUICK_FIXTURES:
            K = corpus[name]
            r = tc(K, 2, FAST)
            assert r.exact
            assert (r.value == 0) == is_strongly_collapsible(K)


@pytest.mark.slow
def test_figure1_scat_matches_brute_force(figure1):
    # exhaustive over all 127 facet subsets; takes a few minutes
    assert O.scat(O.Naive.from_tcx(figure1)) == scat(figure1, FAST).value == 1

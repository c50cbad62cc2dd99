"""Acceptance gate: one test per criterion; the terminal summary prints a line each."""

import time
from fractions import Fraction as Q

import pytest

import oracles as O
from pseudohoops import (
    SearchQuery,
    builtin,
    chain,
    enumerate_algebras,
    enumerate_filters,
    enumerate_state_morphisms,
    enumerate_state_operators,
    extend_morphism,
    fantastic_filters,
    find_counterexample,
    involutive_filters,
    is_isomorphic,
    is_simple,
    bosbach_polytope,
    normal_filters,
)
from pseudohoops.checks import CLAIMS, standard_corpus, sweep
from pseudohoops.classify import boolean_filters
from pseudohoops.oracle import naive_classes
from pseudohoops.checks import _naive_algebra
from pseudohoops.canonical import certificate
from pseudohoops.realstates import GRID, grid_agreement, kernel, measure_polytope
from pseudohoops.states import inv_subalgebra

GODEL_FILTERS = [{"1"}, {"c", "1"}, {"a", "c", "1"}, {"b", "c", "1"}, {"a", "b", "c", "1"}, set("0abc1")]
GODEL_INVOLUTIVE = GODEL_FILTERS[1:]
GODEL_MAPS = {1: "00111", 2: "0abc1", 3: "0ab11", 4: "01011", 5: "aa111", 6: "b1b11", 7: "11111"}
GODEL_KERNELS = {1: "bc1", 2: "1", 3: "c1", 4: "ac1", 5: "bc1", 6: "ac1", 7: "0abc1"}


def sets(A, family):
    return {frozenset(A.index(x) for x in s) for s in family}


def maps(A, ids):
    return {tuple(A.index(c) for c in GODEL_MAPS[i]) for i in ids}


def members(found):
    return {F.members for F in found}


@pytest.mark.criterion(1)
@pytest.mark.xfail(strict=True, reason="{a,b,c,1} is listed as a filter but a.b = 0 leaves it")
def test_ac1_godel_filters(godel):
    start = time.perf_counter()
    found = enumerate_filters(godel)
    inv, fan = involutive_filters(godel), fantastic_filters(godel)
    normal = normal_filters(godel)
    assert time.perf_counter() - start < 1.0
    assert members(normal) == members(found)
    assert members(inv) == members(fan)
    assert members(found) == sets(godel, GODEL_FILTERS)
    assert members(inv) == sets(godel, GODEL_INVOLUTIVE)


@pytest.mark.criterion(2)
def test_ac2_wajsberg_filters(wajsberg):
    A = wajsberg
    assert members(enumerate_filters(A)) == {frozenset({A.one}), frozenset(A.elements)}
    assert members(boolean_filters(A)) == {frozenset(A.elements)}
    assert is_simple(A)
    assert is_isomorphic(chain(4), A)


@pytest.mark.criterion(3)
def test_ac3_godel_state_operators(godel):
    A = godel
    start = time.perf_counter()
    got = {k: {m.images for m in enumerate_state_operators(A, k)} for k in ("I", "II", "III")}
    assert time.perf_counter() - start < 5.0
    assert got["I"] == got["III"] == maps(A, range(1, 8))
    assert got["II"] == maps(A, [1, 3, 4, 5, 6, 7])
    fixing = {k: {m for m in v if m[A.zero] == A.zero} for k, v in got.items()}
    assert fixing["I"] == fixing["III"] == maps(A, [1, 2, 3, 4])
    assert fixing["II"] == maps(A, [1, 3, 4])
    for i, ker in GODEL_KERNELS.items():
        (mu,) = maps(A, [i])
        assert frozenset(x for x in A.elements if mu[x] == A.one) == sets(A, [ker]).pop()
    assert got["I"] == {tuple(m) for m in O.operators(A, "I")}


@pytest.mark.criterion(4)
def test_ac4_wajsberg_state_operators(wajsberg):
    A = wajsberg
    expected = {tuple(A.one for _ in A.elements), tuple(A.elements)}
    for kind in ("I", "II", "III"):
        assert {m.images for m in enumerate_state_operators(A, kind)} == expected
    assert {m.images for m in enumerate_state_morphisms(A)} == expected


@pytest.mark.criterion(5)
def test_ac5_godel_state_morphisms(godel):
    A = godel
    sm = {m.images for m in enumerate_state_morphisms(A)}
    assert sm == maps(A, range(1, 8))
    assert {m for m in sm if m[A.zero] == A.zero} == maps(A, [1, 2, 3, 4])
    sub, _ = inv_subalgebra(A)
    assert extend_morphism(A, tuple(sub.elements)).images == maps(A, [3]).pop()


@pytest.mark.criterion(6)
def test_ac6_theorem_sweep(corpus):
    start = time.perf_counter()
    claims = [c for c in CLAIMS if c.criterion == 6]
    results = sweep(corpus, claims)
    elapsed = time.perf_counter() - start
    assert len(corpus) == 11 and "operator-structural-properties" in {c.id for c in claims}
    failures = {r.claim.id: r.outcome.witness for r in results if r.outcome.status == "fail"}
    assert failures == {}
    assert all(r.counts.get("pass", 0) > 0 for r in results)
    assert elapsed < 120


@pytest.mark.criterion(7)
def test_ac7_exact_states(godel, wajsberg, corpus):
    P = bosbach_polytope(wajsberg)
    want = tuple(Q(k, 4) for k in range(5))
    assert P.dimension == 0
    assert [tuple(v[wajsberg.index(lab)] for lab in "0abc1") for v in P.vertices] == [want]
    G = bosbach_polytope(godel)
    assert G.dimension == 1
    a, b, c = (godel.index(x) for x in "abc")
    assert sorted((v[a], v[b]) for v in G.vertices) == [(0, 1), (1, 0)]
    assert all(v[c] == 1 for v in G.vertices)
    for A in corpus:
        for role, poly in (("bosbach", bosbach_polytope(A)), ("measure", measure_polytope(A))):
            if role == "bosbach" and A.zero != A.one:
                for v in poly.vertices:
                    assert O.is_involutive_filter(A, kernel(v).members)
            if A.n <= 5:
                assert grid_agreement(poly, GRID) is None, (A.name, role)


@pytest.mark.criterion(8)
def test_ac8_generation(small_corpus):
    for n, classes in ((2, 1), (3, 2)):
        naive = sorted(certificate(_naive_algebra(n, T)) for T in naive_classes(n))
        generated = sorted(certificate(A) for A in enumerate_algebras(n))
        assert len(naive) == classes
        assert naive == generated
    assert find_counterexample(SearchQuery(range(1, 5), "not hoop")) is None

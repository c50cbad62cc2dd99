import itertools
from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudohoops import Algebra, bosbach_polytope, measure_polytope, one_element, validate
from pseudohoops.checks import standard_corpus
from pseudohoops.classify import is_involutive_filter
from pseudohoops.errors import AxiomsNotSatisfied, DimensionTooLarge, NotBounded, PreconditionError
from pseudohoops.realstates import (
    BOSBACH,
    GRID,
    MEASURE,
    compose_state,
    compose_state_tilde,
    format_fraction,
    grid_agreement,
    grid_points,
    is_monotone,
    kernel,
    parse_fraction,
    solution_polytope,
    valuation,
    valuation_violation,
)
from pseudohoops.search import enumerate_algebras
from pseudohoops.states import enumerate_state_morphisms, inv_subalgebra

import oracles

CORPUS = standard_corpus() + [one_element()]
IDS = [A.name for A in CORPUS]
SMALL = [A for A in CORPUS + enumerate_algebras(5) if A.n <= 5]
SMALL_IDS = [A.name for A in SMALL]


def at(A, **vals):
    v = [None] * A.n
    for lab, q in vals.items():
        v[A.index("1" if lab == "one" else ("0" if lab == "zero" else lab))] = Q(q)
    return tuple(v)


def test_wajsberg_bosbach_point(wajsberg):
    P = bosbach_polytope(wajsberg)
    assert P.dimension == 0
    assert [v.values for v in P.vertices] == [at(wajsberg, zero=0, a="1/4", b="1/2", c="3/4", one=1)]


def test_wajsberg_measure_point(wajsberg):
    P = measure_polytope(wajsberg)
    assert [v.values for v in P.vertices] == [at(wajsberg, zero=1, a="3/4", b="1/2", c="1/4", one=0)]


def test_godel_bosbach_segment(godel):
    P = bosbach_polytope(godel)
    assert P.dimension == 1
    g = godel.index
    assert sorted((v[g("a")], v[g("b")]) for v in P.vertices) == [(0, 1), (1, 0)]
    assert all(v[g("c")] == 1 for v in P.vertices)


def test_godel_measure_matches_symbolic_solve(godel):
    P = measure_polytope(godel)
    assert {v.values for v in P.vertices} == oracles.polytope_vertices(godel, MEASURE)
    assert P.dimension == 1


def test_one_element_degenerate():
    A = one_element()
    assert [v.values for v in bosbach_polytope(A).vertices] == [(Q(1),)]
    assert [v.values for v in measure_polytope(A).vertices] == [(Q(0),)]
    assert kernel(bosbach_polytope(A).vertices[0]).members == {A.one}


def test_unbounded_rejected():
    U = validate(Algebra("u2", ("e", "1"), 1, None, [[0, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [0, 1]]))
    with pytest.raises(NotBounded):
        bosbach_polytope(U)


def test_dimension_bound(diamond):
    from pseudohoops import product, chain

    P = product(diamond, product(chain(1), chain(1)))
    # states of the 16-element Boolean algebra: probability vectors on 4 atoms
    assert bosbach_polytope(P).dimension == 3
    with pytest.raises(DimensionTooLarge):
        solution_polytope(P, BOSBACH, max_dimension=2)


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
@pytest.mark.parametrize("role", [BOSBACH, MEASURE])
def test_vertices_match_sympy(A, role):
    P = solution_polytope(A, role)
    want = oracles.polytope_vertices(A, role)
    assert {v.values for v in P.vertices} == want
    assert P.dimension == oracles.affine_dimension(want)
    assert P.empty == (not want)


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
def test_bosbach_vertex_consequences(A):
    if A.zero == A.one:
        return
    d = A.ops
    for v in bosbach_polytope(A).vertices:
        assert is_monotone(v)
        for x in A.elements:
            assert v[d.minus(x)] == v[d.tilde(x)] == 1 - v[x]
            assert v[d.minus_tilde(x)] == v[x]


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
def test_measure_vertex_consequences(A):
    d = A.ops
    for v in measure_polytope(A).vertices:
        assert is_monotone(v) and v[A.one] == 0
        for x, y in itertools.product(A.elements, repeat=2):
            assert v[d.vee1[x][y]] == v[d.vee1[y][x]]
            assert v[A.to[x][y]] == v[A.squig[x][y]]


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
def test_vertex_kernels(A):
    for role in (BOSBACH, MEASURE):
        for v in solution_polytope(A, role).vertices:
            K = kernel(v)
            assert oracles.is_filter(A, K.members)
            assert is_involutive_filter(A, K)
            if role == MEASURE:
                assert oracles.is_normal(A, K.members)


def test_kernel_examples(godel, wajsberg):
    g = godel.index
    (v,) = [v for v in bosbach_polytope(godel).vertices if v[g("a")] == 1]
    assert kernel(v).labels() == ["a", "c", "1"]
    assert kernel(bosbach_polytope(wajsberg).vertices[0]).labels() == ["1"]


def test_kernel_rejects_non_state(godel):
    from pseudohoops.realstates import RationalValuation

    bad = RationalValuation(tuple(Q(1, 2) for _ in godel.elements), BOSBACH, godel)
    with pytest.raises(AxiomsNotSatisfied):
        kernel(bad)
    with pytest.raises(AxiomsNotSatisfied):
        valuation(godel, bad.values, BOSBACH)


@pytest.mark.parametrize("A", SMALL, ids=SMALL_IDS)
def test_grid_oracle_agrees(A):
    for role in (BOSBACH, MEASURE):
        P = solution_polytope(A, role)
        assert grid_agreement(P) is None
        inside = [p for p in grid_points(A, role) if valuation_violation(A, p, role) is None]
        assert all(P.contains(p) for p in inside)


def test_grid_denominators():
    assert sorted(GRID) == sorted({Q(p, q) for q in range(1, 5) for p in range(q + 1)})


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
def test_hull_rejects_off_normalisation(A):
    if A.zero == A.one:
        return
    P = bosbach_polytope(A)
    for v in P.vertices:
        moved = list(v.values)
        moved[A.zero] = Q(1, 2)
        assert not P.contains(moved)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from([BOSBACH, MEASURE]), st.data())
def test_convex_combinations_satisfy_axioms(A, role, data):
    P = solution_polytope(A, role)
    weights = [Q(data.draw(st.integers(0, 6))) for _ in P.vertices]
    if not any(weights):
        weights[0] = Q(1)
    total = sum(weights)
    point = [sum(w * v[x] for w, v in zip(weights, P.vertices)) / total for x in A.elements]
    assert valuation_violation(A, point, role) is None
    assert P.contains(point)


def test_godel_composition(godel):
    g = godel.index
    (s,) = [v for v in bosbach_polytope(godel).vertices if v[g("a")] == 0]
    mu1 = tuple(g(ch) for ch in "00111")
    assert compose_state(s, mu1).values == tuple(Q(int(ch)) for ch in "00111")


@pytest.mark.parametrize("A", CORPUS, ids=IDS)
def test_compositions_are_states(A):
    sm1 = [u.images for u in enumerate_state_morphisms(A) if u.fixes_zero]
    for s in bosbach_polytope(A).vertices:
        assert compose_state(s, tuple(A.elements)).values == s.values
        for m in sm1:
            compose_state(s, m)


def test_composition_preconditions(godel):
    s = bosbach_polytope(godel).vertices[0]
    with pytest.raises(PreconditionError):
        compose_state(s, tuple(godel.one for _ in godel.elements))


def test_tilde_composition(godel, wajsberg):
    sub, emb = inv_subalgebra(godel)
    sm1 = [u.images for u in enumerate_state_morphisms(godel) if u.fixes_zero]
    for s in bosbach_polytope(sub).vertices:
        for m in sm1:
            try:
                compose_state_tilde(godel, s, emb, m)
            except PreconditionError:
                assert any(m[x] not in emb for x in emb)
    sub, emb = inv_subalgebra(wajsberg)
    s = bosbach_polytope(sub).vertices[0]
    ident = tuple(wajsberg.elements)
    assert compose_state_tilde(wajsberg, s, emb, ident).values == compose_state(
        bosbach_polytope(wajsberg).vertices[0], ident
    ).values


def test_fraction_format():
    assert format_fraction(Q(0)) == "0/1" and format_fraction(Q(3, 4)) == "3/4"
    assert parse_fraction("3/4") == Q(3, 4)
    assert sympy.Rational(format_fraction(Q(2, 3))) == sympy.Rational(2, 3)

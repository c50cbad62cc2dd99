"""Registry of checkable claims, run per algebra or across the generated corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import Callable, Iterable, Optional

from .algebra import Algebra, is_hoop, least_element, predicates
from .canonical import certificate, isomorphism
from .classify import boolean_filters, is_fantastic_filter, is_involutive_filter
from .constructors import builtin, chain, product
from .filters import enumerate_filters, filter_violation, is_simple, quotient
from .oracle import MAX_ORDER as NAIVE_MAX_ORDER
from .oracle import naive_classes
from .realstates import BOSBACH, MEASURE, bosbach_polytope, grid_agreement, kernel, measure_polytope
from .search import DEFAULT_ORDER_BOUND, SearchQuery, enumerate_algebras, find_counterexample
from .states import KINDS, extend_morphism, inv_subalgebra, operator_property_failures, state_sets

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass(frozen=True)
class Outcome:
    status: str
    witness: Optional[object] = None

    def as_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness}


OK = Outcome(PASS)
SKIP = Outcome(NA)


def _verdict(failure) -> Outcome:
    return OK if failure is None else Outcome(FAIL, failure)


class Context:
    """Per-algebra cache of the expensive derived objects."""

    def __init__(self, A: Algebra):
        self.A = A

    @cached_property
    def report(self):
        return predicates(self.A)

    @cached_property
    def filters(self):
        return enumerate_filters(self.A)

    @cached_property
    def states(self):
        return state_sets(self.A)

    @cached_property
    def polytopes(self):
        if self.A.zero is None:
            return {}
        return {BOSBACH: bosbach_polytope(self.A), MEASURE: measure_polytope(self.A)}

    def labels(self, members) -> list[str]:
        return self.A.label_set(members)

    def map_labels(self, mu) -> list[str]:
        return [self.A.labels[v] for v in mu]


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    criterion: int
    instance: Optional[Callable[[Context], Outcome]] = None
    corpus: Optional[Callable[[], Outcome]] = field(default=None)


# ---------------------------------------------------------------------------
# worked examples


def _against_builtin(name: str, body: Callable[[Context, dict], Outcome]):
    """Run ``body`` when the algebra is isomorphic to a built-in example.

    ``body`` receives a translation from built-in labels to elements of the
    algebra under test.
    """
    ref = builtin(name)

    def run(ctx: Context) -> Outcome:
        f = isomorphism(ref, ctx.A)
        if f is None:
            return SKIP
        tr = {ref.labels[i]: f[i] for i in ref.elements}
        return body(ctx, tr)

    return run


def _set(tr, labels) -> frozenset[int]:
    return frozenset(tr[x] for x in labels)


def _map(tr, images) -> tuple[int, ...]:
    """Images listed on 0, a, b, c, 1 of the built-in, moved to the algebra under test."""
    out = [0] * len(images)
    for src, dst in zip("0abc1", images):
        out[tr[src]] = tr[dst]
    return tuple(out)


GODEL_FILTERS = ["1", "c1", "ac1", "bc1", "abc1", "0abc1"]
GODEL_INVOLUTIVE = ["c1", "ac1", "bc1", "abc1", "0abc1"]
GODEL_MAPS = {
    1: "00111",
    2: "0abc1",
    3: "0ab11",
    4: "01011",
    5: "aa111",
    6: "b1b11",
    7: "11111",
}
GODEL_KERNELS = {1: "bc1", 2: "1", 3: "c1", 4: "ac1", 5: "bc1", 6: "ac1", 7: "0abc1"}


def _compare_sets(ctx, got: Iterable[frozenset], expected: Iterable[frozenset], what: str):
    got, expected = set(got), set(expected)
    if got == expected:
        return None
    missing = sorted(expected - got, key=sorted)
    witness = {
        "set": what,
        "missing": [ctx.labels(s) for s in missing],
        "extra": [ctx.labels(s) for s in sorted(got - expected, key=sorted)],
    }
    reasons = {}
    for s in missing:
        w = filter_violation(ctx.A, s) if what.endswith("filters") else None
        if w is not None and w[0] in ("F1", "F2"):
            rel = "product" if w[0] == "F1" else "upper bound"
            reasons[",".join(ctx.labels(s))] = (
                f"{rel} of {ctx.A.labels[w[1]]} and {ctx.A.labels[w[2]]} leaves the set"
                if w[0] == "F1"
                else f"{ctx.A.labels[w[2]]} is above {ctx.A.labels[w[1]]} but missing"
            )
    if reasons:
        witness["notFilters"] = reasons
    return witness


def _godel_filters(ctx: Context, tr) -> Outcome:
    got = [F.members for F in ctx.filters]
    w = _compare_sets(ctx, got, [_set(tr, s) for s in GODEL_FILTERS], "filters")
    if w is not None:
        return Outcome(FAIL, w)
    if not all(F.normal for F in ctx.filters):
        return Outcome(FAIL, {"notNormal": [F.labels() for F in ctx.filters if not F.normal]})
    A = ctx.A
    expect = [_set(tr, s) for s in GODEL_INVOLUTIVE]
    for what, test in (("involutive filters", is_involutive_filter), ("fantastic filters", is_fantastic_filter)):
        w = _compare_sets(ctx, [F.members for F in ctx.filters if test(A, F)], expect, what)
        if w is not None:
            return Outcome(FAIL, w)
    return OK


def _wajsberg_filters(ctx: Context, tr) -> Outcome:
    A = ctx.A
    whole = frozenset(A.elements)
    w = _compare_sets(ctx, [F.members for F in ctx.filters], [frozenset({A.one}), whole], "filters")
    if w is not None:
        return Outcome(FAIL, w)
    w = _compare_sets(ctx, [F.members for F in boolean_filters(A)], [whole], "Boolean filters")
    if w is not None:
        return Outcome(FAIL, w)
    if not is_simple(A):
        return Outcome(FAIL, "not simple")
    if isomorphism(chain(4), A) is None:
        return Outcome(FAIL, "not isomorphic to C4")
    return OK


def _maps(ctx, tr, ids):
    return {_map(tr, GODEL_MAPS[i]) for i in ids}


def _named(ctx, maps) -> list[list[str]]:
    return sorted(ctx.map_labels(m) for m in maps)


def _godel_state_operators(ctx: Context, tr) -> Outcome:
    A, S = ctx.A, ctx.states
    expected = {
        "I": _maps(ctx, tr, range(1, 8)),
        "III": _maps(ctx, tr, range(1, 8)),
        "II": _maps(ctx, tr, [1, 3, 4, 5, 6, 7]),
    }
    expected_fixing = {
        "I": _maps(ctx, tr, [1, 2, 3, 4]),
        "III": _maps(ctx, tr, [1, 2, 3, 4]),
        "II": _maps(ctx, tr, [1, 3, 4]),
    }
    for kind in ("I", "II", "III"):
        got = set(S[kind])
        if got != expected[kind]:
            return Outcome(FAIL, {"kind": kind, "got": _named(ctx, got), "expected": _named(ctx, expected[kind])})
        fixing = {m for m in got if m[A.zero] == A.zero}
        if fixing != expected_fixing[kind]:
            return Outcome(FAIL, {"kind": kind, "fixesZero": _named(ctx, fixing)})
    for i, ker in GODEL_KERNELS.items():
        mu = _map(tr, GODEL_MAPS[i])
        got = frozenset(x for x in A.elements if mu[x] == A.one)
        if got != _set(tr, ker):
            return Outcome(FAIL, {"map": f"mu{i}", "kernel": ctx.labels(got)})
    return OK


def _wajsberg_state_operators(ctx: Context, tr) -> Outcome:
    A = ctx.A
    expected = {tuple(A.one for _ in A.elements), tuple(A.elements)}
    for kind in KINDS:
        got = set(ctx.states[kind])
        if got != expected:
            return Outcome(FAIL, {"kind": kind, "got": _named(ctx, got)})
    return OK


def _godel_state_morphisms(ctx: Context, tr) -> Outcome:
    A = ctx.A
    sm = set(ctx.states["morphism"])
    if sm != _maps(ctx, tr, range(1, 8)):
        return Outcome(FAIL, {"SM": _named(ctx, sm)})
    sm1 = {m for m in sm if m[A.zero] == A.zero}
    if sm1 != _maps(ctx, tr, [1, 2, 3, 4]):
        return Outcome(FAIL, {"SM1": _named(ctx, sm1)})
    sub, _ = inv_subalgebra(A)
    ext = extend_morphism(A, tuple(sub.elements)).images
    if ext != _map(tr, GODEL_MAPS[3]):
        return Outcome(FAIL, {"extension": ctx.map_labels(ext)})
    return OK


def _wajsberg_bosbach(ctx: Context, tr) -> Outcome:
    P = ctx.polytopes[BOSBACH]
    want = [0] * 5
    for lab, v in zip("0abc1", (Q(0), Q(1, 4), Q(1, 2), Q(3, 4), Q(1))):
        want[tr[lab]] = v
    got = [list(v.values) for v in P.vertices]
    if got != [want] or P.dimension != 0:
        return Outcome(FAIL, {"vertices": [v.as_dict() for v in P.vertices]})
    return OK


def _godel_bosbach(ctx: Context, tr) -> Outcome:
    P = ctx.polytopes[BOSBACH]
    pairs = sorted((v[tr["a"]], v[tr["b"]]) for v in P.vertices)
    c_one = all(v[tr["c"]] == 1 for v in P.vertices)
    if P.dimension != 1 or pairs != [(0, 1), (1, 0)] or not c_one:
        return Outcome(FAIL, {"dimension": P.dimension, "vertices": [v.as_dict() for v in P.vertices]})
    return OK


# ---------------------------------------------------------------------------
# statements checked on every algebra


def _archimedean(ctx: Context) -> Outcome:
    r = ctx.report
    lhs, rhs = bool(r.archimedean), bool(r.linear_order) and bool(r.wajsberg)
    if lhs != rhs:
        return Outcome(FAIL, {"archimedean": lhs, "linearWajsberg": rhs})
    return OK


def _locally_finite(ctx: Context) -> Outcome:
    r = ctx.report
    if not (r.bounded and r.locally_finite):
        return SKIP
    return OK if r.involutive_algebra else Outcome(FAIL, {"nonInvolutive": r.involutive_algebra.witness})


def _normal_quotients(flag: Callable[[Algebra, object], bool], quotient_flag: str, needs_zero: bool):
    def run(ctx: Context) -> Outcome:
        A = ctx.A
        if needs_zero and A.zero is None:
            return SKIP
        for F in ctx.filters:
            if not F.normal:
                continue
            Q = quotient(A, F).quotient
            if flag(A, F) != bool(getattr(predicates(Q), quotient_flag)):
                return Outcome(FAIL, {"filter": F.labels()})
        return OK

    return run


def _good_fantastic(ctx: Context) -> Outcome:
    if not ctx.report.good:
        return SKIP
    for F in ctx.filters:
        if is_fantastic_filter(ctx.A, F) != is_involutive_filter(ctx.A, F):
            return Outcome(FAIL, {"filter": F.labels()})
    return OK


def _upward_closed(ctx: Context) -> Outcome:
    if ctx.A.zero is None:
        return SKIP
    inv = [F for F in ctx.filters if is_involutive_filter(ctx.A, F)]
    for F in inv:
        for G in ctx.filters:
            if F.members <= G.members and not is_involutive_filter(ctx.A, G):
                return Outcome(FAIL, {"involutive": F.labels(), "above": G.labels()})
    return OK


def _inclusion(small: str, big: Iterable[str], applies: Callable[[Context], bool] = lambda c: True):
    big = tuple(big)

    def run(ctx: Context) -> Outcome:
        if not applies(ctx):
            return SKIP
        S = ctx.states
        target = set.intersection(*(set(S[b]) for b in big))
        extra = [m for m in S[small] if m not in target]
        if extra:
            return Outcome(FAIL, {"outside": ctx.map_labels(extra[0])})
        return OK

    return run


STRUCTURAL_ITEMS = tuple(str(i) for i in range(1, 10))


def _operator_items(keep: Callable[[str], bool]):
    def run(ctx: Context) -> Outcome:
        seen = set()
        for kind in KINDS:
            for mu in ctx.states[kind]:
                if mu in seen:
                    continue
                seen.add(mu)
                bad = [i for i in operator_property_failures(ctx.A, mu) if keep(i)]
                if bad:
                    return Outcome(FAIL, {"map": ctx.map_labels(mu), "kinds": _kinds_of(ctx, mu), "items": bad})
        return OK

    return run


def _kinds_of(ctx: Context, mu) -> list[str]:
    return [k for k in KINDS if mu in ctx.states[k]]


def _state_kernels(ctx: Context) -> Outcome:
    if ctx.A.zero is None:
        return SKIP
    for role, P in ctx.polytopes.items():
        for v in P.vertices:
            K = kernel(v)
            if not is_involutive_filter(ctx.A, K):
                return Outcome(FAIL, {"role": role, "vertex": v.as_dict()})
            if role == MEASURE and not K.normal:
                return Outcome(FAIL, {"role": role, "vertex": v.as_dict(), "kernel": "not normal"})
    return OK


def _grid(ctx: Context) -> Outcome:
    if ctx.A.zero is None or ctx.A.n > 5:
        return SKIP
    for role, P in ctx.polytopes.items():
        bad = grid_agreement(P)
        if bad is not None:
            return Outcome(FAIL, {"role": role, "point": bad})
    return OK


def _generated_class(ctx: Context) -> Outcome:
    A = ctx.A
    if A.n > DEFAULT_ORDER_BOUND or A.zero is None:
        return SKIP
    cert = certificate(A)
    if cert not in {certificate(B) for B in enumerate_algebras(A.n)}:
        return Outcome(FAIL, "isomorphism class missing from generated list")
    if A.n <= NAIVE_MAX_ORDER:
        naive = {certificate(_naive_algebra(A.n, T)) for T in naive_classes(A.n)}
        if cert not in naive:
            return Outcome(FAIL, "isomorphism class missing from naive list")
    return OK


def _naive_algebra(n: int, T) -> Algebra:
    m, to, sq = T
    A = Algebra(f"naive{n}", tuple(str(i) for i in range(n)), n - 1, None, m, to, sq)
    return A.with_zero(least_element(A))


def _generation_vs_naive() -> Outcome:
    for n in range(1, NAIVE_MAX_ORDER + 1):
        naive = sorted(certificate(_naive_algebra(n, T)) for T in naive_classes(n))
        generated = sorted(certificate(A) for A in enumerate_algebras(n))
        if naive != generated:
            return Outcome(FAIL, {"order": n, "naive": len(naive), "generated": len(generated)})
    return OK


def _hoop_instance(ctx: Context) -> Outcome:
    return OK if is_hoop(ctx.A) else Outcome(FAIL, "-> and ~> differ")


def _hoop_search() -> Outcome:
    hit = find_counterexample(SearchQuery(range(2, 5), "not hoop"))
    if hit is None:
        return OK
    return Outcome(FAIL, f"{hit.name}: likely a generator bug, not a mathematical counterexample")


def _bounded_wajsberg(ctx: Context) -> bool:
    return bool(ctx.report.bounded) and bool(ctx.report.wajsberg)


CLAIMS: tuple[Claim, ...] = (
    Claim("example-godel-filters", "filters of the idempotent example and their classes", 1,
          _against_builtin("hoop5-godel", _godel_filters)),
    Claim("example-wajsberg-filters", "filters, Boolean filters and simplicity of the Wajsberg example", 2,
          _against_builtin("hoop5-wajsberg", _wajsberg_filters)),
    Claim("example-godel-state-operators", "the seven state operators of the idempotent example", 3,
          _against_builtin("hoop5-godel", _godel_state_operators)),
    Claim("example-wajsberg-state-operators", "state operators of the Wajsberg example are 1 and id", 4,
          _against_builtin("hoop5-wajsberg", _wajsberg_state_operators)),
    Claim("example-godel-state-morphisms", "state-morphisms and the extension from Inv(A)", 5,
          _against_builtin("hoop5-godel", _godel_state_morphisms)),
    Claim("archimedean-iff-linear-wajsberg", "Archimedean exactly when linearly ordered Wajsberg", 6,
          _archimedean),
    Claim("locally-finite-implies-involutive", "bounded locally finite algebras are involutive", 6,
          _locally_finite),
    Claim("involutive-filter-iff-involutive-quotient", "normal H is involutive iff A/H is involutive", 6,
          _normal_quotients(is_involutive_filter, "involutive_algebra", True)),
    Claim("fantastic-filter-iff-wajsberg-quotient", "normal H is fantastic iff A/H is Wajsberg", 6,
          _normal_quotients(is_fantastic_filter, "wajsberg", False)),
    Claim("good-fantastic-equals-involutive", "on good algebras fantastic and involutive filters agree", 6,
          _good_fantastic),
    Claim("involutive-filters-upward-closed", "filters above an involutive filter are involutive", 6,
          _upward_closed),
    Claim("type-ii-within-type-iii", "type II operators are type III", 6, _inclusion("II", ["III"])),
    Claim("type-i-within-type-iii-wajsberg", "on bounded Wajsberg algebras type I operators are type III", 6,
          _inclusion("I", ["III"], _bounded_wajsberg)),
    Claim("morphisms-within-type-i-and-iii", "state-morphisms are type I and type III", 6,
          _inclusion("morphism", ["I", "III"])),
    Claim("type-iii-within-morphisms-idempotent", "on idempotent algebras type III operators are morphisms", 6,
          _inclusion("III", ["morphism"], lambda c: bool(c.report.idempotent))),
    Claim("operator-structural-properties", "general consequences of the operator axioms", 6,
          _operator_items(lambda i: i in STRUCTURAL_ITEMS)),
    Claim("example-wajsberg-bosbach-point", "the Wajsberg example has one Bosbach state", 7,
          _against_builtin("hoop5-wajsberg", _wajsberg_bosbach)),
    Claim("example-godel-bosbach-segment", "Bosbach states of the idempotent example form a segment", 7,
          _against_builtin("hoop5-godel", _godel_bosbach)),
    Claim("state-kernels-involutive", "kernels of polytope vertices are involutive filters", 7, _state_kernels),
    Claim("rational-grid-agreement", "rational grid points match polytope membership", 7, _grid),
    Claim("generation-matches-naive-oracle", "generator agrees with brute force on tiny orders", 8,
          _generated_class, _generation_vs_naive),
    Claim("finite-pseudo-hoops-are-hoops", "finite pseudo-hoops have -> equal to ~>", 8,
          _hoop_instance, _hoop_search),
)
CLAIM_IDS = tuple(c.id for c in CLAIMS)

# Checked by the library and tests, kept out of the command-line suite.
SUPPLEMENTARY: tuple[Claim, ...] = (
    Claim("operator-derived-identities", "meet, join and cancellative identities for every operator", 0,
          _operator_items(lambda i: i not in STRUCTURAL_ITEMS)),
)
_BY_ID = {c.id: c for c in CLAIMS + SUPPLEMENTARY}


def get_claim(claim_id: str) -> Claim:
    try:
        return _BY_ID[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}") from None


def check_algebra(A: Algebra, claims: Iterable[Claim] = CLAIMS, ctx: Optional[Context] = None) -> dict[str, Outcome]:
    ctx = ctx or Context(A)
    return {c.id: (c.instance(ctx) if c.instance else SKIP) for c in claims}


def standard_corpus() -> list[Algebra]:
    """Generated algebras of orders 2-4 plus the two examples and C1 x C1."""
    out = []
    for n in (2, 3, 4):
        out.extend(enumerate_algebras(n))
    out.extend([builtin("hoop5-godel"), builtin("hoop5-wajsberg"), product(chain(1), chain(1))])
    return out


@dataclass(frozen=True)
class SweepResult:
    claim: str
    outcome: Outcome
    counts: dict


def sweep(algebras: Iterable[Algebra], claims: Iterable[Claim] = CLAIMS) -> list[SweepResult]:
    """Aggregate each claim over the algebras and run its corpus-level part.

    A claim fails if any instance or its corpus check fails; it passes if at
    least one part passed; otherwise it is not applicable.
    """
    claims = list(claims)
    ctxs = [Context(A) for A in algebras]
    out = []
    for c in claims:
        counts = {PASS: 0, FAIL: 0, NA: 0}
        first_fail = None
        for ctx in ctxs:
            o = c.instance(ctx) if c.instance else SKIP
            counts[o.status] += 1
            if o.status == FAIL and first_fail is None:
                first_fail = Outcome(FAIL, {"algebra": ctx.A.name, "witness": o.witness})
        if c.corpus is not None:
            o = c.corpus()
            counts[o.status] += 1
            if o.status == FAIL and first_fail is None:
                first_fail = Outcome(FAIL, {"algebra": "corpus", "witness": o.witness})
        if first_fail is not None:
            res = first_fail
        elif counts[PASS]:
            res = OK
        else:
            res = SKIP
        out.append(SweepResult(c.id, res, counts))
    return out

"""Internal state operators of types I, II, III and state-morphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .algebra import Algebra, is_subalgebra, predicates, subalgebra
from .errors import CarrierTooLarge, InvNotSubalgebra, NotMorphismOnInv, NotNormalGood
from .filters import (
    Filter,
    Homomorphism,
    QuotientResult,
    homomorphism_violation,
    is_filter,
    quotient,
)

KINDS = ("I", "II", "III", "morphism")
OPERATOR_KINDS = ("I", "II", "III")
DEFAULT_BOUND = 8


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check; ``axiom`` and ``witness`` describe the first failure."""

    holds: bool
    axiom: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.holds


_OK = Verdict(True)


def _first_axis_failure(A: Algebra, mu: Sequence[int], kind: str) -> Optional[tuple[str, tuple]]:
    to, sq, m, d = A.to, A.squig, A.odot, A.ops
    E = A.elements
    pairs = list(itertools.product(E, E))
    for x, y in pairs:
        if kind == "I":
            a, b = d.vee1[x][y], d.vee2[x][y]
            ok = mu[to[x][y]] == to[mu[a]][mu[y]] and mu[sq[x][y]] == sq[mu[b]][mu[y]]
        elif kind == "II":
            a, b = d.vee1[y][x], d.vee2[y][x]
            ok = mu[to[x][y]] == to[mu[a]][mu[y]] and mu[sq[x][y]] == sq[mu[b]][mu[y]]
        else:
            w = d.meet[x][y]
            ok = mu[to[x][y]] == to[mu[x]][mu[w]] and mu[sq[x][y]] == sq[mu[x]][mu[w]]
        if not ok:
            return ({"I": "IS1", "II": "IS1'", "III": "IS1''"}[kind], (x, y))
    for x, y in pairs:
        p = m[x][y]
        if not (mu[p] == m[mu[x]][mu[sq[x][p]]] == m[mu[to[y][p]]][mu[y]]):
            return ("IS2", (x, y))
    for x, y in pairs:
        u, v = mu[x], mu[y]
        if mu[m[u][v]] != m[u][v]:
            return ("IS3", (x, y))
    for x, y in pairs:
        u, v = mu[x], mu[y]
        if mu[to[u][v]] != to[u][v] or mu[sq[u][v]] != sq[u][v]:
            return ("IS4", (x, y))
    return None


def _shape_ok(A: Algebra, mu) -> bool:
    return len(mu) == A.n and all(isinstance(v, int) and 0 <= v < A.n for v in mu)


def check_state_operator(A: Algebra, mu: Sequence[int], kind: str) -> Verdict:
    """Exhaustive check of one kind's four axiom families.

    ``kind`` is ``"I"``, ``"II"``, ``"III"`` or ``"morphism"``.  Families are
    checked in order (first axiom, IS2, IS3, IS4) and the first failing pair
    is reported.
    """
    mu = tuple(mu)
    if not _shape_ok(A, mu):
        return Verdict(False, "shape", ())
    if kind == "morphism":
        return check_state_morphism(A, mu)
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    fail = _first_axis_failure(A, mu, kind)
    return _OK if fail is None else Verdict(False, *fail)


def check_state_morphism(A: Algebra, mu: Sequence[int]) -> Verdict:
    """Idempotent endomorphism test; 0 need not be fixed."""
    mu = tuple(mu)
    if not _shape_ok(A, mu):
        return Verdict(False, "shape", ())
    w = homomorphism_violation(Homomorphism(A, A, mu), bounded=False)
    if w is not None:
        return Verdict(False, w[0], tuple(w[1:]))
    for x in A.elements:
        if mu[mu[x]] != mu[x]:
            return Verdict(False, "idempotent", (x,))
    return _OK


@dataclass(frozen=True)
class UnaryMap:
    """A self-map with its independently computed kind tags."""

    images: tuple[int, ...]
    kinds: frozenset[str]
    fixes_zero: Optional[bool]
    kernel: Filter

    def __call__(self, x: int) -> int:
        return self.images[x]

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def labels(self, A: Algebra) -> list[str]:
        return [A.labels[v] for v in self.images]


def kernel_of(A: Algebra, mu: Sequence[int]) -> frozenset[int]:
    return frozenset(x for x in A.elements if mu[x] == A.one)


def make_unary_map(A: Algebra, mu: Sequence[int]) -> UnaryMap:
    mu = tuple(mu)
    kinds = frozenset(k for k in KINDS if check_state_operator(A, mu, k))
    fixes = None if A.zero is None else mu[A.zero] == A.zero
    return UnaryMap(mu, kinds, fixes, Filter(A, kernel_of(A, mu)))


def _candidate_maps(A: Algebra) -> Iterator[tuple[int, ...]]:
    """Monotone idempotent maps fixing 1, in lexicographic order of images.

    These three properties hold for every state operator and every
    state-morphism, so filtering by them loses nothing.
    """
    n, one, leq = A.n, A.one, A.ops.leq
    mu = [-1] * n

    def consistent(x: int) -> bool:
        v = mu[x]
        if x == one and v != one:
            return False
        for y in range(x):
            if leq[y][x] and not leq[mu[y]][v]:
                return False
            if leq[x][y] and not leq[v][mu[y]]:
                return False
        # idempotence: mu(mu(z)) = mu(z) whenever both are assigned
        if v <= x and mu[v] != v:
            return False
        for y in range(x):
            if mu[y] == x and v != x:
                return False
        return True

    def rec(x: int):
        if x == n:
            yield tuple(mu)
            return
        for v in range(n):
            mu[x] = v
            if consistent(x):
                yield from rec(x + 1)
        mu[x] = -1

    yield from rec(0)


def _check_bound(A: Algebra, bound: int):
    if A.n > bound:
        raise CarrierTooLarge(f"{A.name} has {A.n} elements; enumeration bound is {bound}")


def enumerate_state_operators(A: Algebra, kind: str, bound: int = DEFAULT_BOUND) -> list[UnaryMap]:
    """Every operator of ``kind`` on A, in lexicographic image order."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    _check_bound(A, bound)
    return [
        make_unary_map(A, mu) for mu in _candidate_maps(A) if check_state_operator(A, mu, kind)
    ]


def enumerate_state_morphisms(A: Algebra, bound: int = DEFAULT_BOUND) -> list[UnaryMap]:
    return enumerate_state_operators(A, "morphism", bound)


def state_sets(A: Algebra, bound: int = DEFAULT_BOUND) -> dict[str, list[tuple[int, ...]]]:
    """Image tuples for each kind, from one pass over the candidate maps."""
    _check_bound(A, bound)
    out = {k: [] for k in KINDS}
    for mu in _candidate_maps(A):
        for k in KINDS:
            if check_state_operator(A, mu, k):
                out[k].append(mu)
    return out


def is_compatible(A: Algebra, mu) -> bool:
    """The kernel is a normal filter."""
    images = mu.images if isinstance(mu, UnaryMap) else tuple(mu)
    return Filter(A, kernel_of(A, images)).normal


def induced_operator(A: Algebra, mu) -> tuple[QuotientResult, tuple[int, ...]]:
    """The map [x] -> [mu(x)] on A/Ker(mu), for a compatible operator.

    Raises ``NotNormal`` when the kernel is not normal and ``ValueError``
    when the map does not respect the congruence classes.
    """
    images = mu.images if isinstance(mu, UnaryMap) else tuple(mu)
    q = quotient(A, kernel_of(A, images))
    hat = [-1] * len(q.classes)
    for x in A.elements:
        c, v = q.class_of[x], q.class_of[images[x]]
        if hat[c] == -1:
            hat[c] = v
        elif hat[c] != v:
            raise ValueError(f"map is not constant on the class of {A.labels[x]}")
    return q, tuple(hat)


def operator_property_failures(A: Algebra, mu: Sequence[int]) -> list[str]:
    """Names of the general consequences of the axioms that fail for ``mu``.

    Items 1-9 cover mu(1) = 1, monotonicity, idempotence, the residual and
    product inequalities, kernel filter, image subalgebra, image = fixed
    points and Ker n Im = {1}.  Items m1, m3, m4 cover the meet identity,
    fixed joins of images and the join inequalities; ``cancel`` applies on
    cancellative algebras.
    """
    mu = tuple(mu)
    to, sq, m, d, one = A.to, A.squig, A.odot, A.ops, A.one
    leq = d.leq
    E = A.elements
    pairs = list(itertools.product(E, E))
    failed = []

    def need(name, ok):
        if not ok:
            failed.append(name)

    need("1", mu[one] == one)
    need("2", all(leq[mu[x]][mu[y]] for x, y in pairs if leq[x][y]))
    need("3", all(mu[mu[x]] == mu[x] for x in E))
    need(
        "4",
        all(
            leq[mu[to[x][y]]][to[mu[x]][mu[y]]] and leq[mu[sq[x][y]]][sq[mu[x]][mu[y]]]
            for x, y in pairs
        ),
    )
    need(
        "5",
        all(
            leq[m[mu[x]][mu[y]]][mu[m[x][y]]] and leq[m[mu[x]][mu[y]]][mu[d.meet[x][y]]]
            for x, y in pairs
        ),
    )
    K = kernel_of(A, mu)
    image = frozenset(mu)
    need("6", is_filter(A, K))
    need("7", is_subalgebra(A, image))
    need("8", image == frozenset(x for x in E if mu[x] == x))
    need("9", K & image == {one})
    need(
        "m1",
        all(
            mu[d.meet[x][y]] == m[mu[x]][mu[sq[x][y]]] == m[mu[to[y][x]]][mu[y]]
            for x, y in pairs
        ),
    )
    need(
        "m2",
        all(mu[d.meet[mu[x]][mu[y]]] == d.meet[mu[x]][mu[y]] for x, y in pairs),
    )
    need(
        "m3",
        all(
            mu[d.vee1[mu[x]][mu[y]]] == d.vee1[mu[x]][mu[y]]
            and mu[d.vee2[mu[x]][mu[y]]] == d.vee2[mu[x]][mu[y]]
            for x, y in pairs
        ),
    )
    need(
        "m4",
        all(
            leq[mu[d.vee1[x][y]]][d.vee1[mu[x]][mu[y]]]
            and leq[mu[d.vee2[x][y]]][d.vee2[mu[x]][mu[y]]]
            for x, y in pairs
        ),
    )
    rep = predicates(A)
    if rep.wajsberg:
        need("m5", all(sq[mu[to[x][y]]][mu[y]] == to[mu[sq[x][y]]][mu[y]] for x, y in pairs))
    if rep.cancellative:
        need("cancel", all(mu[m[x][y]] == m[mu[x]][mu[y]] for x, y in pairs))
    return failed


def negation_commutes(A: Algebra, mu: Sequence[int]) -> bool:
    """mu(x^-) = mu(x)^- and mu(x^~) = mu(x)^~ for all x."""
    d = A.ops
    return all(
        mu[d.minus(x)] == d.minus(mu[x]) and mu[d.tilde(x)] == d.tilde(mu[x]) for x in A.elements
    )


def product_operator(
    A: Algebra, B: Algebra, mu1: Sequence[int], mu2: Sequence[int]
) -> tuple[int, ...]:
    """(x, y) -> (mu1(x), mu2(y)) on the product built by ``constructors.product``."""
    return tuple(mu1[a] * B.n + mu2[b] for a in A.elements for b in B.elements)


def diagonal_projections(A: Algebra) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(x, y) -> (x, x) and (x, y) -> (y, y) on ``product(A, A)``."""
    n = A.n
    first = tuple(a * n + a for a in range(n) for _ in range(n))
    second = tuple(b * n + b for _ in range(n) for b in range(n))
    return first, second


def inv_subalgebra(A: Algebra) -> tuple[Algebra, tuple[int, ...]]:
    """The subalgebra of involutive elements and its embedding into A."""
    inv = A.ops.involutive_elements
    if inv is None or not is_subalgebra(A, inv):
        raise InvNotSubalgebra(f"Inv({A.name}) is not closed under the operations")
    sub, emb = subalgebra(A, inv, name=f"Inv({A.name})")
    return sub, emb


def extend_morphism(A: Algebra, mu: Sequence[int]) -> UnaryMap:
    """Extend a zero-fixing state-morphism of Inv(A) to A by x -> mu(x^{-~}).

    ``mu`` is given on the indices of :func:`inv_subalgebra`.  The result is
    checked to be a zero-fixing state-morphism of A that restricts to ``mu``.
    """
    rep = predicates(A)
    if not (rep.bounded and rep.good and rep.normal_algebra):
        raise NotNormalGood(f"{A.name} must be bounded, normal and good")
    sub, emb = inv_subalgebra(A)
    mu = tuple(mu)
    if not check_state_morphism(sub, mu) or mu[sub.zero] != sub.zero:
        raise NotMorphismOnInv("map is not a zero-fixing state-morphism of Inv(A)")
    pos = {x: i for i, x in enumerate(emb)}
    d = A.ops
    ext = tuple(emb[mu[pos[d.minus_tilde(x)]]] for x in A.elements)
    if not check_state_morphism(A, ext) or ext[A.zero] != A.zero:
        raise RuntimeError("extension is not a zero-fixing state-morphism")
    if any(ext[emb[i]] != emb[mu[i]] for i in range(sub.n)):
        raise RuntimeError("extension does not restrict to the given map")
    return make_unary_map(A, ext)

"""Filters, normality, maximality, congruences and quotient algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .algebra import Algebra, implication_power, validate
from .errors import EmptyGenerator, NotHomomorphism, NotNormal


@dataclass(frozen=True)
class Filter:
    """A filter of ``algebra``; ``normal`` and ``maximal`` are computed on first use."""

    algebra: Algebra = field(repr=False, compare=False)
    members: frozenset[int]

    @property
    def sort_key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    @property
    def proper(self) -> bool:
        return len(self.members) < self.algebra.n

    @cached_property
    def normal(self) -> bool:
        return normality_witness(self.algebra, self.members) is None

    @cached_property
    def maximal(self) -> bool:
        return any(self.members == F.members for F in maximal_filters(self.algebra))

    def labels(self) -> list[str]:
        return self.algebra.label_set(self.members)

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}"


def filter_violation(A: Algebra, S) -> Optional[tuple]:
    """First failure of the filter conditions on subset ``S``, or ``None``.

    Returns ``("F1", x, y)`` for a product leaving ``S`` or ``("F2", x, y)``
    for an upper bound ``y`` of a member ``x`` missing from ``S``.
    """
    S = frozenset(S)
    if not S:
        return ("nonempty",)
    leq = A.ops.leq
    for x in sorted(S):
        for y in sorted(S):
            if A.odot[x][y] not in S:
                return ("F1", x, y)
    for x in sorted(S):
        for y in A.elements:
            if leq[x][y] and y not in S:
                return ("F2", x, y)
    return None


def is_filter(A: Algebra, S) -> bool:
    return filter_violation(A, S) is None


def is_deductive_system(A: Algebra, S, right: bool = False) -> bool:
    """1 in S, and x, x->y in S imply y in S (``~>`` when ``right``)."""
    S = frozenset(S)
    t = A.squig if right else A.to
    if A.one not in S:
        return False
    return all(y in S for x in S for y in A.elements if t[x][y] in S)


def _close(A: Algebra, X) -> frozenset[int]:
    S = set(X)
    frontier = list(S)
    while frontier:
        new = []
        for x in frontier:
            for y in list(S):
                for p in (A.odot[x][y], A.odot[y][x]):
                    if p not in S:
                        S.add(p)
                        new.append(p)
        frontier = new
    leq = A.ops.leq
    return frozenset(y for y in A.elements if any(leq[x][y] for x in S))


def generated_filter(A: Algebra, X) -> Filter:
    """Smallest filter containing ``X``: the up-set of all finite products over ``X``."""
    X = frozenset(X)
    if not X:
        raise EmptyGenerator("the generating set must be nonempty")
    return Filter(A, _close(A, X))


def principal_filter(A: Algebra, x: int) -> Filter:
    return generated_filter(A, {x})


def enumerate_filters(A: Algebra) -> list[Filter]:
    """All filters, by size then lexicographically.

    Breadth-first closure from {1}: every filter is reached by adding its
    members one at a time.
    """
    start = _close(A, {A.one})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for x in A.elements:
                if x not in F:
                    G = _close(A, F | {x})
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
        frontier = nxt
    filters = [Filter(A, S) for S in seen]
    filters.sort(key=lambda F: F.sort_key)
    return filters


def normality_witness(A: Algebra, H) -> Optional[tuple[int, int]]:
    """First (x, y) with exactly one of x->y, x~>y in H."""
    H = frozenset(H)
    for x, y in itertools.product(A.elements, A.elements):
        if (A.to[x][y] in H) != (A.squig[x][y] in H):
            return (x, y)
    return None


def is_normal(A: Algebra, F) -> tuple[bool, Optional[tuple[int, int]]]:
    members = F.members if isinstance(F, Filter) else frozenset(F)
    w = normality_witness(A, members)
    return w is None, w


def normal_filters(A: Algebra) -> list[Filter]:
    return [F for F in enumerate_filters(A) if F.normal]


def maximal_filters(A: Algebra) -> list[Filter]:
    """Proper filters not contained in another proper filter."""
    proper = [F for F in enumerate_filters(A) if F.proper]
    return [F for F in proper if not any(F.members < G.members for G in proper)]


def is_simple(A: Algebra) -> bool:
    """{1} is the only proper filter (vacuously true for the one-element algebra)."""
    return all(F.members == {A.one} for F in enumerate_filters(A) if F.proper)


def is_simple_by_implication_powers(A: Algebra) -> bool:
    """Simplicity through iterated residuals: every x != 1 reaches 1 from each y."""
    for x in A.elements:
        if x == A.one:
            continue
        for y in A.elements:
            if not any(implication_power(A, x, y, k) == A.one for k in range(A.n + 1)):
                return False
    return True


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    domain: Algebra = field(repr=False)
    codomain: Algebra = field(repr=False)
    images: tuple[int, ...]


def homomorphism_violation(f: Homomorphism, bounded: Optional[bool] = None) -> Optional[tuple]:
    """First equation of (i)-(iii), plus f(0) = 0 when ``bounded``, that fails.

    ``bounded`` defaults to whether both algebras have a zero.
    """
    A, B, im = f.domain, f.codomain, f.images
    if len(im) != A.n or any(not 0 <= v < B.n for v in im):
        return ("shape",)
    for x, y in itertools.product(A.elements, A.elements):
        if im[A.odot[x][y]] != B.odot[im[x]][im[y]]:
            return ("odot", x, y)
        if im[A.to[x][y]] != B.to[im[x]][im[y]]:
            return ("to", x, y)
        if im[A.squig[x][y]] != B.squig[im[x]][im[y]]:
            return ("squig", x, y)
    if bounded is None:
        bounded = A.zero is not None and B.zero is not None
    if bounded and im[A.zero] != B.zero:
        return ("zero",)
    return None


def preimage_filter(f: Homomorphism, F, bounded: bool = False) -> Filter:
    """{x : f(x) in F}; ``bounded`` additionally requires f(0) = 0."""
    w = homomorphism_violation(f, bounded=bounded)
    if w is not None:
        raise NotHomomorphism(w)
    members = F.members if isinstance(F, Filter) else frozenset(F)
    pre = frozenset(x for x in f.domain.elements if f.images[x] in members)
    return Filter(f.domain, pre)


def kernel(f: Homomorphism) -> frozenset[int]:
    return frozenset(x for x in f.domain.elements if f.images[x] == f.codomain.one)


# ---------------------------------------------------------------------------
# congruences and quotients


@dataclass(frozen=True)
class QuotientResult:
    classes: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]
    quotient: Algebra
    projection: Homomorphism


def congruence_classes(A: Algebra, H) -> tuple[tuple[frozenset[int], ...], tuple[int, ...]]:
    """Classes of x ~ y iff x->y and y->x lie in H, ordered by least member."""
    H = frozenset(H)
    class_of = [-1] * A.n
    classes = []
    for x in A.elements:
        if class_of[x] >= 0:
            continue
        cls = frozenset(y for y in A.elements if A.to[x][y] in H and A.to[y][x] in H)
        for y in cls:
            class_of[y] = len(classes)
        classes.append(cls)
    return tuple(classes), tuple(class_of)


def quotient(A: Algebra, H) -> QuotientResult:
    """A/H for a normal filter H.

    Induced tables are checked exhaustively against every choice of
    representatives; classes are labelled by their least-index member, except
    the class of 1, which takes the label of 1.
    """
    members = H.members if isinstance(H, Filter) else frozenset(H)
    w = filter_violation(A, members)
    if w is not None:
        raise ValueError(f"{sorted(members)} is not a filter: {w}")
    w = normality_witness(A, members)
    if w is not None:
        raise NotNormal(w)
    classes, class_of = congruence_classes(A, members)
    if classes[class_of[A.one]] != members:
        raise RuntimeError("class of 1 differs from H")
    k = len(classes)
    tables = []
    for t in (A.odot, A.to, A.squig):
        q = [[-1] * k for _ in range(k)]
        for x, y in itertools.product(A.elements, A.elements):
            c = class_of[t[x][y]]
            cx, cy = class_of[x], class_of[y]
            if q[cx][cy] == -1:
                q[cx][cy] = c
            elif q[cx][cy] != c:
                raise NotNormal((x, y), f"congruence breaks an operation at {(x, y)}")
        tables.append(q)
    one_cls = class_of[A.one]
    labels = tuple(
        A.labels[A.one] if i == one_cls else A.labels[min(cls)] for i, cls in enumerate(classes)
    )
    zero = None if A.zero is None else class_of[A.zero]
    Q = validate(
        Algebra(f"{A.name}/{{{','.join(A.label_set(members))}}}", labels, one_cls, zero, *tables)
    )
    proj = Homomorphism(A, Q, class_of)
    w = homomorphism_violation(proj)
    if w is not None:
        raise RuntimeError(f"projection is not a homomorphism: {w}")
    return QuotientResult(classes, class_of, Q, proj)

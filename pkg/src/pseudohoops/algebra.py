"""Finite pseudo-hoops represented by their operation tables.

An :class:`Algebra` carries three ``n x n`` tables indexed by element index
(row = left operand): ``odot`` for the product, ``to`` for the left residual
``->`` and ``squig`` for the right residual ``~>``.  Everything else (order,
meet, the two joins, negations, element classes) is derived on demand and
cached on the instance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

from .errors import AxiomViolation, MalformedTables, NotBounded, OrderNotAntisymmetric

Table = tuple[tuple[int, ...], ...]

INFINITE = math.inf


class Violation(NamedTuple):
    axiom: str
    witness: tuple[int, ...]


def _as_table(rows, n: int, what: str) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise MalformedTables(f"{what}: entries must be element indices") from exc
    if len(table) != n or any(len(row) != n for row in table):
        raise MalformedTables(f"{what}: expected a {n}x{n} table")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise MalformedTables(f"{what}[{i}][{j}] = {v} is not an element index")
    return table


@dataclass(frozen=True)
class Algebra:
    """A finite algebra ``(A, odot, ->, ~>, 1)`` with an optional zero.

    Construction only checks the shape of the tables; use :func:`validate`
    to check the pseudo-hoop axioms.
    """

    name: str
    labels: tuple[str, ...]
    one: int
    zero: Optional[int]
    odot: Table
    to: Table
    squig: Table

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        if n < 1:
            raise MalformedTables("the carrier must have at least one element")
        if len(set(labels)) != n:
            raise MalformedTables("element labels must be distinct")
        object.__setattr__(self, "labels", labels)
        for attr in ("odot", "to", "squig"):
            object.__setattr__(self, attr, _as_table(getattr(self, attr), n, attr))
        if not 0 <= self.one < n:
            raise MalformedTables(f"one = {self.one} is not an element index")
        if self.zero is not None and not 0 <= self.zero < n:
            raise MalformedTables(f"zero = {self.zero} is not an element index")

    @classmethod
    def from_labels(cls, name, elements, one, odot, to, squig=None, zero=None) -> "Algebra":
        """Build an algebra from label matrices; ``squig`` defaults to ``to``."""
        elements = [str(e) for e in elements]
        if len(set(elements)) != len(elements):
            raise MalformedTables("element labels must be distinct")
        pos = {e: i for i, e in enumerate(elements)}

        def idx(label, what):
            try:
                return pos[str(label)]
            except KeyError:
                raise MalformedTables(f"{what}: unknown label {label!r}") from None

        def conv(rows, what):
            if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
                raise MalformedTables(f"{what}: expected a {len(elements)}x{len(elements)} matrix")
            return [[idx(v, what) for v in row] for row in rows]

        t = conv(to, "to")
        return cls(
            name=name,
            labels=tuple(elements),
            one=idx(one, "one"),
            zero=None if zero is None else idx(zero, "zero"),
            odot=conv(odot, "odot"),
            to=t,
            squig=t if squig is None else conv(squig, "squig"),
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def bounded(self) -> bool:
        return self.zero is not None

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"{self.name}: no element labelled {label!r}") from None

    def indices(self, labels) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def label_set(self, members) -> list[str]:
        return [self.labels[i] for i in sorted(members)]

    def renamed(self, name: str) -> "Algebra":
        return Algebra(name, self.labels, self.one, self.zero, self.odot, self.to, self.squig)

    def with_zero(self, zero: Optional[int]) -> "Algebra":
        return Algebra(self.name, self.labels, self.one, zero, self.odot, self.to, self.squig)

    @cached_property
    def ops(self) -> "DerivedOps":
        return derive(self)

    def __repr__(self):
        return f"Algebra({self.name!r}, n={self.n})"


def violations(A: Algebra) -> list[Violation]:
    """Every axiom failure of ``A``, in lexicographic witness order per axiom."""
    n, one, m, to, sq = A.n, A.one, A.odot, A.to, A.squig
    E = range(n)
    out: list[Violation] = []
    for x in E:
        if m[x][one] != x or m[one][x] != x:
            out.append(Violation("A1", (x,)))
    for x in E:
        if to[x][x] != one or sq[x][x] != one:
            out.append(Violation("A2", (x,)))
    for x, y, z in itertools.product(E, E, E):
        if to[m[x][y]][z] != to[x][to[y][z]]:
            out.append(Violation("A3", (x, y, z)))
    for x, y, z in itertools.product(E, E, E):
        if sq[m[x][y]][z] != sq[y][sq[x][z]]:
            out.append(Violation("A4", (x, y, z)))
    for x, y in itertools.product(E, E):
        v = m[to[x][y]][x]
        if not (v == m[to[y][x]][y] == m[x][sq[x][y]] == m[y][sq[y][x]]):
            out.append(Violation("A5", (x, y)))

    le = [[to[x][y] == one for y in E] for x in E]
    for x, y in itertools.product(E, E):
        if le[x][y] != (sq[x][y] == one):
            out.append(Violation("order-mismatch", (x, y)))
    for x in E:
        if not le[x][x]:
            out.append(Violation("reflexivity", (x,)))
    for x, y in itertools.product(E, E):
        if x < y and le[x][y] and le[y][x]:
            out.append(Violation("antisymmetry", (x, y)))
    for x, y, z in itertools.product(E, E, E):
        if le[x][y] and le[y][z] and not le[x][z]:
            out.append(Violation("transitivity", (x, y, z)))
    if A.zero is not None:
        for x in E:
            if not le[A.zero][x]:
                out.append(Violation("zero-least", (x,)))
    return out


def validate(A: Algebra) -> Algebra:
    """Return ``A`` if it is a pseudo-hoop, else raise with every violation."""
    found = violations(A)
    if not found:
        return A
    if any(v.axiom == "antisymmetry" for v in found):
        raise OrderNotAntisymmetric(found)
    raise AxiomViolation(found)


def is_pseudo_hoop(A: Algebra) -> bool:
    return not violations(A)


@dataclass(frozen=True)
class DerivedOps:
    """Secondary operations of a validated algebra.

    Negation vectors and the Inv/Den classes are ``None`` on algebras without
    a designated zero; :meth:`minus` and :meth:`tilde` raise instead.
    """

    leq: tuple[tuple[bool, ...], ...]
    meet: Table
    vee1: Table
    vee2: Table
    neg_minus: Optional[tuple[int, ...]]
    neg_tilde: Optional[tuple[int, ...]]
    idempotents: frozenset[int]
    involutive_elements: Optional[frozenset[int]]
    dense_elements: Optional[frozenset[int]]

    def minus(self, x: int) -> int:
        if self.neg_minus is None:
            raise NotBounded("x^- needs a zero element")
        return self.neg_minus[x]

    def tilde(self, x: int) -> int:
        if self.neg_tilde is None:
            raise NotBounded("x^~ needs a zero element")
        return self.neg_tilde[x]

    def minus_tilde(self, x: int) -> int:
        """x^{-~} = (x^-)^~."""
        return self.tilde(self.minus(x))

    def tilde_minus(self, x: int) -> int:
        """x^{~-} = (x^~)^-."""
        return self.minus(self.tilde(x))


def derive(A: Algebra) -> DerivedOps:
    E = A.elements
    m, to, sq, one = A.odot, A.to, A.squig, A.one
    leq = tuple(tuple(to[x][y] == one for y in E) for x in E)
    meet = tuple(tuple(m[to[x][y]][x] for y in E) for x in E)
    for x, y in itertools.product(E, E):
        w = meet[x][y]
        if not (leq[w][x] and leq[w][y]) or any(
            leq[z][x] and leq[z][y] and not leq[z][w] for z in E
        ):
            raise RuntimeError(f"{A.name}: (x->y).x is not the meet of {x},{y}")
    vee1 = tuple(tuple(sq[to[x][y]][y] for y in E) for x in E)
    vee2 = tuple(tuple(to[sq[x][y]][y] for y in E) for x in E)
    idem = frozenset(x for x in E if m[x][x] == x)
    if A.zero is None:
        return DerivedOps(leq, meet, vee1, vee2, None, None, idem, None, None)
    z = A.zero
    nm = tuple(to[x][z] for x in E)
    nt = tuple(sq[x][z] for x in E)
    mt = [nt[nm[x]] for x in E]
    tm = [nm[nt[x]] for x in E]
    inv = frozenset(x for x in E if mt[x] == tm[x] == x)
    den = frozenset(x for x in E if mt[x] == tm[x] == one)
    return DerivedOps(leq, meet, vee1, vee2, nm, nt, idem, inv, den)


def least_element(A: Algebra) -> int:
    """The bottom of the order; every finite pseudo-hoop has one."""
    leq = A.ops.leq
    for x in A.elements:
        if all(leq[x][y] for y in A.elements):
            return x
    raise RuntimeError(f"{A.name}: no least element")


def power(A: Algebra, x: int, k: int) -> int:
    p = A.one
    for _ in range(k):
        p = A.odot[p][x]
    return p


def element_order(A: Algebra, x: int):
    """Least ``k >= 1`` with ``x^k = 0``, or :data:`INFINITE`.

    The power sequence of a finite algebra is eventually periodic, so the
    first repeated power means zero is never reached.
    """
    if A.zero is None:
        raise NotBounded("ord(x) needs a zero element")
    seen = set()
    p, k = x, 1
    while p not in seen:
        if p == A.zero:
            return k
        seen.add(p)
        p = A.odot[p][x]
        k += 1
    return INFINITE


def implication_power(A: Algebra, x: int, y: int, k: int, right: bool = False) -> int:
    """x ->^k y (or x ~>^k y when ``right``)."""
    t = A.squig if right else A.to
    v = y
    for _ in range(k):
        v = t[x][v]
    return v


def is_subalgebra(A: Algebra, subset) -> bool:
    s = set(subset)
    if A.one not in s:
        return False
    return all(
        A.odot[x][y] in s and A.to[x][y] in s and A.squig[x][y] in s for x in s for y in s
    )


def subalgebra(A: Algebra, subset, name: Optional[str] = None) -> tuple[Algebra, tuple[int, ...]]:
    """Induced algebra on ``subset`` and the embedding (sub index -> A index)."""
    if not is_subalgebra(A, subset):
        raise ValueError(f"{sorted(subset)} is not closed under the operations of {A.name}")
    emb = tuple(sorted(subset))
    pos = {x: i for i, x in enumerate(emb)}

    def tab(t):
        return [[pos[t[x][y]] for y in emb] for x in emb]

    zero = None
    if A.zero is not None and A.zero in pos:
        zero = pos[A.zero]
    sub = Algebra(
        name or f"{A.name}|sub",
        tuple(A.labels[x] for x in emb),
        pos[A.one],
        zero,
        tab(A.odot),
        tab(A.to),
        tab(A.squig),
    )
    return sub, emb


# ---------------------------------------------------------------------------
# structural predicates


@dataclass(frozen=True)
class Flag:
    """Outcome of one predicate: ``holds`` is ``None`` when not applicable."""

    holds: Optional[bool]
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.holds is True


_NA = Flag(None)


def _first(pairs) -> Flag:
    for w in pairs:
        return Flag(False, tuple(w))
    return Flag(True)


@dataclass(frozen=True)
class PredicateReport:
    bounded: Flag
    good: Flag
    glivenko: Flag
    normal_algebra: Flag
    idempotent: Flag
    wajsberg: Flag
    basic: Flag
    cancellative: Flag
    archimedean: Flag
    linear_order: Flag
    locally_finite: Flag
    involutive_algebra: Flag

    def as_dict(self) -> dict[str, Optional[bool]]:
        return {k: getattr(self, k).holds for k in self.__dataclass_fields__}


PREDICATE_NAMES = tuple(PredicateReport.__dataclass_fields__)


def predicates(A: Algebra) -> PredicateReport:
    E = A.elements
    one, m, to, sq = A.one, A.odot, A.to, A.squig
    d = A.ops
    leq, v1, v2 = d.leq, d.vee1, d.vee2
    pairs = list(itertools.product(E, E))
    triples = itertools.product(E, E, E)

    idempotent = _first((x,) for x in E if m[x][x] != x)
    wajsberg = _first((x, y) for x, y in pairs if v1[x][y] != v1[y][x] or v2[x][y] != v2[y][x])
    basic = _first(
        (x, y, z)
        for x, y, z in triples
        if not leq[to[to[x][y]][z]][to[to[to[y][x]][z]][z]]
        or not leq[sq[sq[x][y]][z]][sq[sq[sq[y][x]][z]][z]]
    )
    cancellative = _first((x, y) for x, y in pairs if to[y][m[x][y]] != x or sq[y][m[y][x]] != x)

    def arch_fails(x, y):
        fixed_to = to[y][x] == x and not (x == one or y == one)
        fixed_sq = sq[y][x] == x and not (x == one or y == one)
        return fixed_to or fixed_sq

    archimedean = _first((x, y) for x, y in pairs if arch_fails(x, y))
    linear = _first((x, y) for x, y in pairs if x < y and not (leq[x][y] or leq[y][x]))

    if A.zero is None:
        return PredicateReport(
            Flag(False), _NA, _NA, _NA, idempotent, wajsberg, basic,
            cancellative, archimedean, linear, _NA, _NA,
        )

    mt = [d.minus_tilde(x) for x in E]
    tm = [d.tilde_minus(x) for x in E]
    good = _first((x,) for x in E if mt[x] != tm[x])
    glivenko = _first(
        (x, y) for x, y in pairs if mt[to[x][y]] != to[x][mt[y]] or mt[sq[x][y]] != sq[x][mt[y]]
    )
    normal = _first(
        (x, y)
        for x, y in pairs
        if mt[m[x][y]] != m[mt[x]][mt[y]] or tm[m[x][y]] != m[tm[x]][tm[y]]
    )
    locally_finite = _first(
        (x,) for x in E if x != one and element_order(A, x) == INFINITE
    )
    involutive = _first((x,) for x in E if not (mt[x] == tm[x] == x))
    return PredicateReport(
        Flag(True), good, glivenko, normal, idempotent, wajsberg, basic,
        cancellative, archimedean, linear, locally_finite, involutive,
    )


def is_hoop(A: Algebra) -> bool:
    """True when ``->`` and ``~>`` coincide (equivalently the product commutes)."""
    return A.to == A.squig


def is_commutative(A: Algebra) -> bool:
    return all(A.odot[x][y] == A.odot[y][x] for x in A.elements for y in A.elements)


def describe(A: Algebra, report: Optional[PredicateReport] = None) -> str:
    """Short human summary such as ``bounded, good, idempotent``."""
    report = report or predicates(A)
    words = [
        ("bounded", "bounded"),
        ("good", "good"),
        ("idempotent", "idempotent"),
        ("wajsberg", "Wajsberg"),
        ("linear_order", "linearly ordered"),
        ("involutive_algebra", "involutive"),
    ]
    traits = [w for key, w in words if getattr(report, key).holds]
    return ", ".join(traits) if traits else "no listed traits"


def tables_equal(A: Algebra, B: Algebra) -> bool:
    return (A.n, A.one, A.zero, A.odot, A.to, A.squig) == (B.n, B.one, B.zero, B.odot, B.to, B.squig)


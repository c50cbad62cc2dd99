"""Involutive, fantastic and Boolean filters, and the dense filter of a good algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .algebra import Algebra, predicates
from .errors import BooleanNotApplicable, NotBounded, NotGood
from .filters import Filter, enumerate_filters, filter_violation, normality_witness


def _members(F) -> frozenset[int]:
    return F.members if isinstance(F, Filter) else frozenset(F)


def _require_zero(A: Algebra, what: str):
    if A.zero is None:
        raise NotBounded(f"{what} needs a zero element")


def involutive_witness(A: Algebra, F) -> Optional[tuple[int]]:
    """First x with x^{-~} -> x or x^{~-} ~> x outside F."""
    _require_zero(A, "involutive filters")
    F = _members(F)
    d = A.ops
    for x in A.elements:
        if A.to[d.minus_tilde(x)][x] not in F or A.squig[d.tilde_minus(x)][x] not in F:
            return (x,)
    return None


def is_involutive_filter(A: Algebra, F) -> bool:
    return involutive_witness(A, F) is None


def fantastic_witness(A: Algebra, F) -> Optional[tuple[str, int, int]]:
    """First (rule, x, y) where y->x in F but (x v1 y)->x is not, or the ~> mirror."""
    F = _members(F)
    to, sq, d = A.to, A.squig, A.ops
    for x, y in itertools.product(A.elements, A.elements):
        if to[y][x] in F and to[d.vee1[x][y]][x] not in F:
            return ("ff1", x, y)
        if sq[y][x] in F and sq[d.vee2[x][y]][x] not in F:
            return ("ff2", x, y)
    return None


def is_fantastic_filter(A: Algebra, F) -> bool:
    return fantastic_witness(A, F) is None


def is_fantastic_by_deduction(A: Algebra, S) -> bool:
    """Fantastic-filter test on an arbitrary subset, phrased with a third variable.

    ``S`` qualifies iff 1 is in S and, for all x, y, z with z in S,
    z -> (y -> x) in S forces (x v1 y) -> x into S, and likewise for ``~>``
    with ``v2``.  No filter closure is assumed.
    """
    S = frozenset(S)
    if A.one not in S:
        return False
    to, sq, d = A.to, A.squig, A.ops
    for z in S:
        for x, y in itertools.product(A.elements, A.elements):
            if to[z][to[y][x]] in S and to[d.vee1[x][y]][x] not in S:
                return False
            if sq[z][sq[y][x]] in S and sq[d.vee2[x][y]][x] not in S:
                return False
    return True


def boolean_applicable(A: Algebra) -> bool:
    return A.zero is not None and bool(predicates(A).wajsberg)


def boolean_witness(A: Algebra, F) -> Optional[tuple[int]]:
    """First x with x v x^- or x v x^~ outside F; bounded Wajsberg algebras only."""
    if not boolean_applicable(A):
        raise BooleanNotApplicable(f"{A.name} is not a bounded Wajsberg pseudo-hoop")
    F = _members(F)
    d = A.ops
    for x in A.elements:
        if d.vee1[x][d.minus(x)] not in F or d.vee1[x][d.tilde(x)] not in F:
            return (x,)
    return None


def is_boolean_filter(A: Algebra, F) -> bool:
    return boolean_witness(A, F) is None


def involutive_condition_b(A: Algebra, F) -> bool:
    """(y^- ~> x^-) -> (x -> y) and (y^~ -> x^~) ~> (x ~> y) lie in F for all x, y."""
    _require_zero(A, "negation conditions")
    F = _members(F)
    to, sq, d = A.to, A.squig, A.ops
    return all(
        to[sq[d.minus(y)][d.minus(x)]][to[x][y]] in F
        and sq[to[d.tilde(y)][d.tilde(x)]][sq[x][y]] in F
        for x, y in itertools.product(A.elements, A.elements)
    )


def involutive_condition_c(A: Algebra, F) -> bool:
    """(x^- ~> y) -> (y^~ -> x) and (x^~ -> y) ~> (y^- ~> x) lie in F for all x, y."""
    _require_zero(A, "negation conditions")
    F = _members(F)
    to, sq, d = A.to, A.squig, A.ops
    return all(
        to[sq[d.minus(x)][y]][to[d.tilde(y)][x]] in F
        and sq[to[d.tilde(x)][y]][sq[d.minus(y)][x]] in F
        for x, y in itertools.product(A.elements, A.elements)
    )


@dataclass(frozen=True)
class FilterClassification:
    """Classification of one filter; ``boolean`` is ``None`` when not applicable."""

    members: frozenset[int]
    normal: bool
    involutive: Optional[bool]
    fantastic: bool
    boolean: Optional[bool]
    boolean_applicable: bool
    witnesses: dict

    def as_dict(self) -> dict:
        return {
            "normal": self.normal,
            "involutive": self.involutive,
            "fantastic": self.fantastic,
            "boolean": self.boolean,
            "booleanApplicable": self.boolean_applicable,
        }


def classify_filter(A: Algebra, F) -> FilterClassification:
    """All flags at once.

    Unlike the single tests, this does not raise on unbounded or non-Wajsberg
    algebras: inapplicable flags come back as ``None``.
    """
    members = _members(F)
    w = filter_violation(A, members)
    if w is not None:
        raise ValueError(f"not a filter: {w}")
    witnesses = {}
    nw = normality_witness(A, members)
    if nw is not None:
        witnesses["normal"] = nw
    involutive = None
    if A.zero is not None:
        iw = involutive_witness(A, members)
        involutive = iw is None
        if iw is not None:
            witnesses["involutive"] = iw
    fw = fantastic_witness(A, members)
    if fw is not None:
        witnesses["fantastic"] = fw
    applicable = boolean_applicable(A)
    boolean = None
    if applicable:
        bw = boolean_witness(A, members)
        boolean = bw is None
        if bw is not None:
            witnesses["boolean"] = bw
    return FilterClassification(
        members, nw is None, involutive, fw is None, boolean, applicable, witnesses
    )


def involutive_filters(A: Algebra) -> list[Filter]:
    return [F for F in enumerate_filters(A) if is_involutive_filter(A, F)]


def fantastic_filters(A: Algebra) -> list[Filter]:
    return [F for F in enumerate_filters(A) if is_fantastic_filter(A, F)]


def boolean_filters(A: Algebra) -> list[Filter]:
    if not boolean_applicable(A):
        raise BooleanNotApplicable(f"{A.name} is not a bounded Wajsberg pseudo-hoop")
    return [F for F in enumerate_filters(A) if is_boolean_filter(A, F)]


def den_filter(A: Algebra) -> Filter:
    """Dense elements of a good algebra as a filter.

    The result is checked to be a normal involutive filter contained in every
    involutive filter.
    """
    _require_zero(A, "Den(A)")
    if not predicates(A).good:
        raise NotGood(f"{A.name} is not good")
    D = A.ops.dense_elements
    F = Filter(A, D)
    problems = []
    if filter_violation(A, D) is not None:
        problems.append("not a filter")
    elif not F.normal:
        problems.append("not normal")
    if not is_involutive_filter(A, D):
        problems.append("not involutive")
    if any(not D <= G.members for G in involutive_filters(A)):
        problems.append("not the least involutive filter")
    if problems:
        raise RuntimeError(f"{A.name}: Den(A) is {', '.join(problems)}")
    return F

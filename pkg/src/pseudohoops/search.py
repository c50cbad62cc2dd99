"""Isomorph-free generation of small pseudo-hoops and predicate-driven search."""

from __future__ import annotations

import ast
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

from .algebra import Algebra, is_hoop, is_commutative, least_element, predicates, violations
from .canonical import canonical_form, canonical_labelling, certificate_hash
from .classify import is_fantastic_filter, is_involutive_filter
from .constructors import one_element
from .errors import OrderTooLarge, QueryError
from .fileformat import dump
from .filters import enumerate_filters, is_simple
from .states import state_sets

DEFAULT_ORDER_BOUND = 5


# ---------------------------------------------------------------------------
# candidate orders


def _lattice_orders(n: int) -> Iterable[list[list[bool]]]:
    """Naturally labelled bounded partial orders on 0..n-1 that are lattices.

    0 is the bottom and n-1 the top; i < j in the order implies i < j as
    integers.  Every finite bounded poset admits such a labelling, and the
    order underlying a finite pseudo-hoop is a bounded lattice.
    """
    middle = list(range(1, n - 1))
    pairs = list(itertools.combinations(middle, 2))
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = [[x == y or x == 0 or y == n - 1 for y in range(n)] for x in range(n)]
        for (i, j), b in zip(pairs, bits):
            leq[i][j] = b
        if not all(
            leq[x][z] for x in range(n) for y in range(n) for z in range(n) if leq[x][y] and leq[y][z]
        ):
            continue
        if all(_meet(leq, x, y) is not None for x in range(n) for y in range(n)):
            yield leq


def _meet(leq, x, y) -> Optional[int]:
    lower = [z for z in range(len(leq)) if leq[z][x] and leq[z][y]]
    top = [z for z in lower if all(leq[w][z] for w in lower)]
    return top[0] if top else None


def _residual(leq, odot, x, y, right: bool) -> Optional[int]:
    """Greatest z with z.x <= y (or x.z <= y when ``right``)."""
    n = len(leq)
    cands = [z for z in range(n) if leq[(odot[x][z] if right else odot[z][x])][y]]
    top = [z for z in cands if all(leq[w][z] for w in cands)]
    return top[0] if top else None


def _products(n: int, leq) -> Iterable[list[list[int]]]:
    """Monotone associative products below the meet with 1 as identity.

    Cells of the middle block are filled row by row; each value ranges over
    the elements below meet(x, y) in ascending index order.
    """
    one = n - 1
    meet = [[_meet(leq, x, y) for y in range(n)] for x in range(n)]
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[x][one] = T[one][x] = x
        T[x][0] = T[0][x] = 0
    cells = [(x, y) for x in range(1, n - 1) for y in range(1, n - 1)]
    domains = {c: [z for z in range(n) if leq[z][meet[c[0]][c[1]]]] for c in cells}
    E = range(n)

    def ok(x, y) -> bool:
        v = T[x][y]
        for x2 in E:
            w = T[x2][y]
            if w >= 0 and ((leq[x][x2] and not leq[v][w]) or (leq[x2][x] and not leq[w][v])):
                return False
        for y2 in E:
            w = T[x][y2]
            if w >= 0 and ((leq[y][y2] and not leq[v][w]) or (leq[y2][y] and not leq[w][v])):
                return False
        for a, b, c in itertools.product(E, E, E):
            ab, bc = T[a][b], T[b][c]
            if ab < 0 or bc < 0:
                continue
            l, r = T[ab][c], T[a][bc]
            if l >= 0 and r >= 0 and l != r:
                return False
        return True

    def rec(k):
        if k == len(cells):
            yield [row[:] for row in T]
            return
        x, y = cells[k]
        for z in domains[(x, y)]:
            T[x][y] = z
            if ok(x, y):
                yield from rec(k + 1)
        T[x][y] = -1

    yield from rec(0)


def _raw_pseudo_hoops(n: int) -> Iterable[Algebra]:
    for leq in _lattice_orders(n):
        for odot in _products(n, leq):
            to, sq = [], []
            good = True
            for x in range(n):
                r1, r2 = [], []
                for y in range(n):
                    a = _residual(leq, odot, x, y, right=False)
                    b = _residual(leq, odot, x, y, right=True)
                    if a is None or b is None:
                        good = False
                        break
                    r1.append(a)
                    r2.append(b)
                if not good:
                    break
                to.append(r1)
                sq.append(r2)
            if not good:
                continue
            labels = tuple(str(i) for i in range(n))
            A = Algebra("candidate", labels, n - 1, 0, odot, to, sq)
            if not violations(A):
                yield A


def enumerate_algebras(
    order: int,
    predicate: Union[None, str, Callable[[Algebra], bool]] = None,
    bound: int = DEFAULT_ORDER_BOUND,
) -> list[Algebra]:
    """One canonical representative per isomorphism class of the given order.

    Representatives are sorted by certificate, labelled ``0, a, b, ..., 1``
    and named ``order{n}-{hash}``.
    """
    if order > bound:
        raise OrderTooLarge(f"order {order} exceeds the generation bound {bound}")
    if order < 1:
        raise ValueError("order must be >= 1")
    test = compile_predicate(predicate) if isinstance(predicate, str) else predicate
    if order == 1:
        found = {canonical_labelling(one_element())[0]: one_element()}
    else:
        found = {}
        for A in _raw_pseudo_hoops(order):
            if least_element(A) != 0:
                raise RuntimeError("generated algebra has an unexpected bottom")
            cert, _ = canonical_labelling(A)
            found.setdefault(cert, A)
    out = []
    for cert in sorted(found):
        A = found[cert]
        C = canonical_form(A, name=f"order{order}-{certificate_hash(A)}")
        if test is None or test(C):
            out.append(C)
    return out


# ---------------------------------------------------------------------------
# query language


class Facts:
    """Lazily evaluated yes/no facts about one algebra, addressed by name."""

    def __init__(self, A: Algebra):
        self.A = A

    @cached_property
    def report(self):
        return predicates(self.A)

    @cached_property
    def filters(self):
        return enumerate_filters(self.A)

    @cached_property
    def state_sets(self):
        return {k: set(v) for k, v in state_sets(self.A).items()}

    def value(self, name: str) -> bool:
        key = FACT_ALIASES.get(_norm(name))
        if key is None:
            raise QueryError(f"unknown fact {name!r}")
        return bool(FACTS[key](self))


def _norm(name: str) -> str:
    return name.replace("_", "").lower()


def _flag(key):
    return lambda f: getattr(f.report, key).holds is True


def _filters_agree(f: Facts) -> bool:
    if f.A.zero is None:
        return False
    return all(is_fantastic_filter(f.A, F) == is_involutive_filter(f.A, F) for F in f.filters)


def _sub(a, b):
    return lambda f: f.state_sets[a] <= f.state_sets[b]


FACTS: dict[str, Callable[[Facts], bool]] = {
    "bounded": _flag("bounded"),
    "good": _flag("good"),
    "glivenko": _flag("glivenko"),
    "normalAlgebra": _flag("normal_algebra"),
    "idempotent": _flag("idempotent"),
    "wajsberg": _flag("wajsberg"),
    "basic": _flag("basic"),
    "cancellative": _flag("cancellative"),
    "archimedean": _flag("archimedean"),
    "linearOrder": _flag("linear_order"),
    "locallyFinite": _flag("locally_finite"),
    "involutiveAlgebra": _flag("involutive_algebra"),
    "hoop": lambda f: is_hoop(f.A),
    "commutative": lambda f: is_commutative(f.A),
    "simple": lambda f: is_simple(f.A),
    "allFiltersNormal": lambda f: all(F.normal for F in f.filters),
    "fantasticEqInvolutive": _filters_agree,
    "isIEqIsII": lambda f: f.state_sets["I"] == f.state_sets["II"],
    "isIISubIsIII": _sub("II", "III"),
    "isISubIsIII": _sub("I", "III"),
    "isIIISubSm": _sub("III", "morphism"),
    "smSubIsIandIII": lambda f: f.state_sets["morphism"] <= (f.state_sets["I"] & f.state_sets["III"]),
}
FACT_ALIASES = {_norm(k): k for k in FACTS}
FACT_NAMES = tuple(FACTS)

_KEYWORDS = re.compile(r"\b(and|or|not|true|false)\b", re.IGNORECASE)


def _check_node(node):
    if isinstance(node, ast.Expression):
        return _check_node(node.body)
    if isinstance(node, ast.BoolOp):
        return all(_check_node(v) for v in node.values)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
        return _check_node(node.operand)
    if isinstance(node, ast.Compare):
        if not all(isinstance(op, (ast.Eq, ast.NotEq)) for op in node.ops):
            raise QueryError("only == and != comparisons are allowed")
        return _check_node(node.left) and all(_check_node(c) for c in node.comparators)
    if isinstance(node, ast.Name):
        if _norm(node.id) not in FACT_ALIASES:
            raise QueryError(f"unknown fact {node.id!r}; known: {', '.join(FACT_NAMES)}")
        return True
    if isinstance(node, ast.Constant) and isinstance(node.value, bool):
        return True
    raise QueryError(f"unsupported construct in predicate: {ast.dump(node)[:40]}")


def parse_predicate(expr: str) -> ast.Expression:
    """Parse a boolean formula over fact names.

    ``and``/``or``/``not`` and the constants are case-insensitive; fact names
    may be camelCase or snake_case.
    """
    def fix(m):
        w = m.group(1).lower()
        return w.capitalize() if w in ("true", "false") else w

    text = _KEYWORDS.sub(fix, expr.strip())
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise QueryError(f"cannot parse predicate {expr!r}: {exc.msg}") from None
    _check_node(tree)
    return tree


def _evaluate(node, facts: Facts) -> bool:
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, facts)
    if isinstance(node, ast.BoolOp):
        if isinstance(node.op, ast.And):
            return all(_evaluate(v, facts) for v in node.values)
        return any(_evaluate(v, facts) for v in node.values)
    if isinstance(node, ast.UnaryOp):
        return not _evaluate(node.operand, facts)
    if isinstance(node, ast.Compare):
        left = _evaluate(node.left, facts)
        for op, comp in zip(node.ops, node.comparators):
            right = _evaluate(comp, facts)
            if (left == right) != isinstance(op, ast.Eq):
                return False
            left = right
        return True
    if isinstance(node, ast.Name):
        return facts.value(node.id)
    return bool(node.value)


def compile_predicate(expr: str) -> Callable[[Algebra], bool]:
    tree = parse_predicate(expr)
    return lambda A: _evaluate(tree, Facts(A))


@dataclass(frozen=True)
class SearchQuery:
    orders: range
    predicate: str = "True"
    mode: str = "all"  # "all" or "first"

    def __post_init__(self):
        if self.mode not in ("all", "first"):
            raise QueryError(f"unknown mode {self.mode!r}")
        parse_predicate(self.predicate)


def run_query(q: SearchQuery, bound: int = DEFAULT_ORDER_BOUND) -> list[Algebra]:
    """Matching algebras by ascending order, then certificate; stops early in ``first`` mode."""
    test = compile_predicate(q.predicate)
    out = []
    for n in q.orders:
        for A in enumerate_algebras(n, bound=bound):
            if test(A):
                out.append(A)
                if q.mode == "first":
                    return out
    return out


def find_counterexample(q: SearchQuery, bound: int = DEFAULT_ORDER_BOUND) -> Optional[Algebra]:
    found = run_query(SearchQuery(q.orders, q.predicate, "first"), bound)
    return found[0] if found else None


def export_corpus(directory, orders: Iterable[int], bound: int = DEFAULT_ORDER_BOUND) -> list[Path]:
    """Write one algebra file per isomorphism class, named by order and hash."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for n in orders:
        for A in enumerate_algebras(n, bound=bound):
            p = directory / f"{A.name}.json"
            dump(A, p)
            paths.append(p)
    return paths


def corpus(orders: Iterable[int] = (2, 3, 4), extra: Iterable[Algebra] = ()) -> list[Algebra]:
    out = []
    for n in orders:
        out.extend(enumerate_algebras(n))
    out.extend(extra)
    return out

"""Exact Bosbach states and state-measures on finite bounded pseudo-hoops.

Both solution sets are polytopes cut out by linear equalities and bounds.
Equalities are eliminated exactly over the rationals, leaving a parameter
space of small dimension ``d`` whose vertices are found by trying every
choice of ``d`` active bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Algebra, predicates
from .errors import AxiomsNotSatisfied, DimensionTooLarge, NotBounded, PreconditionError
from .filters import Filter, filter_violation, normality_witness
from .states import check_state_morphism

BOSBACH = "bosbach"
MEASURE = "measure"
DEFAULT_MAX_DIMENSION = 6

ZERO, ONE = Fraction(0), Fraction(1)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class RationalValuation:
    values: tuple[Fraction, ...]
    role: str
    algebra: Algebra = field(repr=False, compare=False)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def as_dict(self) -> dict[str, str]:
        return {self.algebra.labels[i]: format_fraction(v) for i, v in enumerate(self.values)}


# ---------------------------------------------------------------------------
# constraint systems


def _degenerate(A: Algebra) -> bool:
    return A.zero == A.one


def _equalities(A: Algebra, role: str) -> list[tuple[dict[int, Fraction], Fraction]]:
    """Rows ``(coefficients, rhs)`` meaning sum(c_i * v_i) = rhs."""
    rows = []

    def add(terms, rhs):
        coeffs: dict[int, Fraction] = {}
        for var, c in terms:
            coeffs[var] = coeffs.get(var, ZERO) + c
        coeffs = {k: c for k, c in coeffs.items() if c != 0}
        if coeffs or rhs != 0:
            rows.append((coeffs, Fraction(rhs)))

    E = A.elements
    if role == BOSBACH:
        # with 0 = 1 only s(1) = 1 is kept
        if not _degenerate(A):
            add([(A.zero, ONE)], 0)
        add([(A.one, ONE)], 1)
        for t in (A.to, A.squig):
            for x, y in itertools.combinations(E, 2):
                add([(x, ONE), (t[x][y], ONE), (y, -ONE), (t[y][x], -ONE)], 0)
    elif role == MEASURE:
        # with 0 = 1 the normalisation m(0) = 1 is dropped
        if not _degenerate(A):
            add([(A.zero, ONE)], 1)
        leq = A.ops.leq
        for t in (A.to, A.squig):
            for x, y in itertools.product(E, E):
                if leq[y][x]:
                    add([(t[x][y], ONE), (y, -ONE), (x, ONE)], 0)
    else:
        raise ValueError(f"unknown role {role!r}")
    return rows


def _bounds(A: Algebra, role: str) -> list[tuple[Optional[Fraction], Optional[Fraction]]]:
    if role == BOSBACH:
        return [(ZERO, ONE)] * A.n
    # m <= 1 already follows from m(x -> 0) = 1 - m(x) >= 0
    return [(ZERO, None)] * A.n


def _row_reduce(rows, n):
    """Reduced row-echelon form of an augmented system.

    Returns ``(pivots, reduced)`` where ``reduced[k]`` expresses pivot column
    ``pivots[k]``, or ``None`` when the system is inconsistent.
    """
    M = [[coeffs.get(j, ZERO) for j in range(n)] + [rhs] for coeffs, rhs in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    for row in M[r:]:
        if row[-1] != 0:
            return None
    return pivots, M[:r]


@dataclass(frozen=True)
class _Param:
    """Affine map t -> v from parameters to valuations: v_i = base_i + sum_j coef_ij t_j."""

    base: tuple[Fraction, ...]
    coef: tuple[tuple[Fraction, ...], ...]

    def point(self, t: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(b + sum(c * tj for c, tj in zip(row, t)) for b, row in zip(self.base, self.coef))


def _parametrize(A: Algebra, role: str):
    n = A.n
    red = _row_reduce(_equalities(A, role), n)
    if red is None:
        return None
    pivots, M = red
    free = [j for j in range(n) if j not in pivots]
    base = [ZERO] * n
    coef = [[ZERO] * len(free) for _ in range(n)]
    for k, j in enumerate(free):
        coef[j][k] = ONE
    for row, p in zip(M, pivots):
        base[p] = row[-1]
        for k, j in enumerate(free):
            coef[p][k] = -row[j]
    return _Param(tuple(base), tuple(tuple(r) for r in coef))


def _solve_square(M: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """Unique solution of a square system, or ``None`` if singular."""
    d = len(M)
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    for c in range(d):
        p = next((i for i in range(c, d) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(d):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * v for a, v in zip(aug[i], aug[c])]
    return [aug[i][d] for i in range(d)]


def _affine_rank(points: list[tuple[Fraction, ...]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [{j: a - b for j, (a, b) in enumerate(zip(p, p0)) if a != b} for p in points[1:]]
    rows = [(d, ZERO) for d in diffs if d]
    if not rows:
        return 0
    red = _row_reduce(rows, len(p0))
    return len(red[0])


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    role: str
    algebra: Algebra = field(repr=False, compare=False)
    vertices: tuple[RationalValuation, ...]
    dimension: int

    @property
    def empty(self) -> bool:
        return not self.vertices

    def contains(self, values: Sequence) -> bool:
        """Convex-hull membership, decided exactly on the vertex list.

        A point of a ``d``-dimensional hull lies in the simplex of some
        ``d + 1`` vertices, so each small subset is tried with an exact
        barycentric solve.
        """
        p = tuple(Fraction(v) for v in values)
        V = [v.values for v in self.vertices]
        if not V or len(p) != len(V[0]):
            return False
        for r in range(1, self.dimension + 2):
            for sub in itertools.combinations(V, r):
                lam = _barycentric(sub, p)
                if lam is not None and all(c >= 0 for c in lam):
                    return True
        return False


def _barycentric(sub, p) -> Optional[list[Fraction]]:
    r = len(sub)
    rows = []
    for i in range(len(p)):
        rows.append(({k: sub[k][i] for k in range(r) if sub[k][i] != 0}, p[i]))
    rows.append(({k: ONE for k in range(r)}, ONE))
    red = _row_reduce(rows, r)
    if red is None or len(red[0]) < r:
        return None
    pivots, M = red
    lam = [ZERO] * r
    for row, c in zip(M, pivots):
        lam[c] = row[-1]
    return lam


def solution_polytope(A: Algebra, role: str, max_dimension: int = DEFAULT_MAX_DIMENSION) -> Polytope:
    if A.zero is None:
        raise NotBounded(f"{role} valuations need a zero element")
    param = _parametrize(A, role)
    if param is None:
        return Polytope(role, A, (), -1)
    d = len(param.coef[0]) if param.coef else 0
    if d > max_dimension:
        raise DimensionTooLarge(f"parameter space has dimension {d} > {max_dimension}")
    # half-spaces a.t <= b
    halfspaces = []
    for (lo, hi), base, row in zip(_bounds(A, role), param.base, param.coef):
        if lo is not None:
            halfspaces.append(([-c for c in row], base - lo))
        if hi is not None:
            halfspaces.append((list(row), hi - base))

    def feasible(t):
        return all(sum(a * tj for a, tj in zip(av, t)) <= b for av, b in halfspaces)

    points = set()
    if d == 0:
        if feasible([]):
            points.add(param.point([]))
    else:
        for active in itertools.combinations(halfspaces, d):
            t = _solve_square([list(a) for a, _ in active], [b for _, b in active])
            if t is not None and feasible(t):
                points.add(param.point(t))
    verts = tuple(RationalValuation(p, role, A) for p in sorted(points))
    for v in verts:
        w = valuation_violation(A, v.values, role)
        if w is not None:
            raise RuntimeError(f"vertex {v.as_dict()} violates {w}")
    return Polytope(role, A, verts, _affine_rank([v.values for v in verts]))


def bosbach_polytope(A: Algebra, max_dimension: int = DEFAULT_MAX_DIMENSION) -> Polytope:
    return solution_polytope(A, BOSBACH, max_dimension)


def measure_polytope(A: Algebra, max_dimension: int = DEFAULT_MAX_DIMENSION) -> Polytope:
    return solution_polytope(A, MEASURE, max_dimension)


# ---------------------------------------------------------------------------
# direct axiom checks


def valuation_violation(A: Algebra, values: Sequence, role: str) -> Optional[tuple]:
    """First failed axiom of ``role`` for ``values``, or ``None``."""
    v = [Fraction(x) for x in values]
    if len(v) != A.n:
        return ("shape",)
    E = A.elements
    degenerate = _degenerate(A)
    if role == BOSBACH:
        if v[A.one] != 1:
            return ("bs1", A.one)
        if not degenerate and v[A.zero] != 0:
            return ("bs1", A.zero)
        for x in E:
            if not 0 <= v[x] <= 1:
                return ("range", x)
        for name, t in (("bs2", A.to), ("bs3", A.squig)):
            for x, y in itertools.product(E, E):
                if v[x] + v[t[x][y]] != v[y] + v[t[y][x]]:
                    return (name, x, y)
        return None
    if role == MEASURE:
        if not degenerate and v[A.zero] != 1:
            return ("m0", A.zero)
        for x in E:
            if v[x] < 0:
                return ("range", x)
        leq = A.ops.leq
        for x, y in itertools.product(E, E):
            if leq[y][x]:
                if v[A.to[x][y]] != v[y] - v[x] or v[A.squig[x][y]] != v[y] - v[x]:
                    return ("measure", x, y)
        return None
    raise ValueError(f"unknown role {role!r}")


def is_monotone(v: RationalValuation) -> bool:
    """Bosbach states grow with the order, measures shrink."""
    A, leq = v.algebra, v.algebra.ops.leq
    sign = 1 if v.role == BOSBACH else -1
    return all(
        sign * (v[y] - v[x]) >= 0 for x in A.elements for y in A.elements if leq[x][y]
    )


def kernel(v: RationalValuation) -> Filter:
    """{s = 1} for a Bosbach state, {m = 0} for a state-measure."""
    A = v.algebra
    w = valuation_violation(A, v.values, v.role)
    if w is not None:
        raise AxiomsNotSatisfied(f"{v.role} axioms fail: {w}")
    target = ONE if v.role == BOSBACH else ZERO
    K = frozenset(x for x in A.elements if v[x] == target)
    w = filter_violation(A, K)
    if w is not None:
        raise RuntimeError(f"kernel is not a filter: {w}")
    if v.role == MEASURE and normality_witness(A, K) is not None:
        raise RuntimeError("measure kernel is not normal")
    return Filter(A, K)


def valuation(A: Algebra, values: Sequence, role: str) -> RationalValuation:
    """Wrap ``values`` after checking the axioms of ``role``."""
    vals = tuple(Fraction(x) for x in values)
    w = valuation_violation(A, vals, role)
    if w is not None:
        raise AxiomsNotSatisfied(f"{role} axioms fail: {w}")
    return RationalValuation(vals, role, A)


def _require_sm1(A: Algebra, mu: Sequence[int]):
    if not check_state_morphism(A, mu) or mu[A.zero] != A.zero:
        raise PreconditionError("map is not a zero-fixing state-morphism")


def compose_state(s: RationalValuation, mu: Sequence[int]) -> RationalValuation:
    """x -> s(mu(x)), checked to be a Bosbach state."""
    A = s.algebra
    if s.role != BOSBACH or valuation_violation(A, s.values, BOSBACH) is not None:
        raise PreconditionError("s is not a Bosbach state")
    mu = tuple(mu)
    _require_sm1(A, mu)
    out = tuple(s[mu[x]] for x in A.elements)
    w = valuation_violation(A, out, BOSBACH)
    if w is not None:
        raise RuntimeError(f"composed state fails {w}")
    return RationalValuation(out, BOSBACH, A)


def compose_state_tilde(
    A: Algebra, s: RationalValuation, embedding: Sequence[int], mu: Sequence[int]
) -> RationalValuation:
    """x -> s(mu(x^{-~})) for a Bosbach state ``s`` on Inv(A).

    ``s.algebra`` is the involutive subalgebra and ``embedding`` maps its
    indices into A (as returned by ``states.inv_subalgebra``).
    """
    if not predicates(A).good:
        raise PreconditionError(f"{A.name} is not good")
    if s.role != BOSBACH or valuation_violation(s.algebra, s.values, BOSBACH) is not None:
        raise PreconditionError("s is not a Bosbach state on Inv(A)")
    mu = tuple(mu)
    _require_sm1(A, mu)
    pos = {x: i for i, x in enumerate(embedding)}
    d = A.ops
    try:
        out = tuple(s[pos[mu[d.minus_tilde(x)]]] for x in A.elements)
    except KeyError:
        raise PreconditionError("mu does not map Inv(A) into Inv(A)") from None
    w = valuation_violation(A, out, BOSBACH)
    if w is not None:
        raise RuntimeError(f"composed state fails {w}")
    return RationalValuation(out, BOSBACH, A)


GRID = tuple(Fraction(p, q) for p, q in ((0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)))


def grid_points(A: Algebra, role: str, grid: Sequence[Fraction] = GRID):
    """Grid vectors with the normalised values at 0 and 1 already in place.

    Any other choice at 0 or 1 violates the normalisation under both the
    direct check and the hull, so those points carry no information.
    """
    fixed = {A.one: ONE if role == BOSBACH else ZERO}
    if not _degenerate(A):
        fixed[A.zero] = ZERO if role == BOSBACH else ONE
    free = [x for x in A.elements if x not in fixed]
    for combo in itertools.product(grid, repeat=len(free)):
        v = [ZERO] * A.n
        for x, q in fixed.items():
            v[x] = q
        for x, q in zip(free, combo):
            v[x] = q
        yield tuple(v)


def grid_agreement(P: Polytope, grid: Sequence[Fraction] = GRID) -> Optional[dict]:
    """First grid point where the axiom check and hull membership disagree."""
    A = P.algebra
    for p in grid_points(A, P.role, grid):
        direct = valuation_violation(A, p, P.role) is None
        if direct != P.contains(p):
            return {
                "values": {A.labels[i]: format_fraction(q) for i, q in enumerate(p)},
                "axioms": direct,
                "hull": not direct,
            }
    return None

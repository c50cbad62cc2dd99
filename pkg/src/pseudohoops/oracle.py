"""Brute-force enumeration of tiny pseudo-hoops, sharing no code with the generator.

Every product table on {0..n-1} with n-1 as unit is tried.  The order is
read off the product (x <= y iff x = z.y for some z), residuals are taken
as greatest solutions, the five defining identities are checked directly
and isomorphism classes are formed by trying every bijection.
"""

from __future__ import annotations

import itertools

MAX_ORDER = 3


def _axioms_hold(n, m, to, sq) -> bool:
    one = n - 1
    E = range(n)
    for x in E:
        if m[x][one] != x or m[one][x] != x:
            return False
        if to[x][x] != one or sq[x][x] != one:
            return False
    for x, y in itertools.product(E, E):
        if m[to[x][y]][x] != m[x][sq[x][y]]:
            return False
    for x, y, z in itertools.product(E, E, E):
        if to[m[x][y]][z] != to[x][to[y][z]]:
            return False
        if sq[m[x][y]][z] != sq[y][sq[x][z]]:
            return False
    return True


def _order_from_product(n, m):
    return [[any(m[z][y] == x for z in range(n)) for y in range(n)] for x in range(n)]


def _greatest(n, leq, cands):
    top = [z for z in cands if all(leq[w][z] for w in cands)]
    return top[0] if len(top) == 1 else None


def naive_tables(n: int) -> list[tuple]:
    """All (odot, to, squig) triples on n elements with unit n-1 that satisfy the axioms."""
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"naive enumeration only supports 1 <= n <= {MAX_ORDER}")
    found = []
    for flat in itertools.product(range(n), repeat=n * n):
        m = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        leq = _order_from_product(n, m)
        if any(leq[x][y] and leq[y][x] and x != y for x in range(n) for y in range(n)):
            continue
        to, sq = [], []
        ok = True
        for x in range(n):
            r1, r2 = [], []
            for y in range(n):
                a = _greatest(n, leq, [z for z in range(n) if leq[m[z][x]][y]])
                b = _greatest(n, leq, [z for z in range(n) if leq[m[x][z]][y]])
                if a is None or b is None:
                    ok = False
                    break
                r1.append(a)
                r2.append(b)
            if not ok:
                break
            to.append(r1)
            sq.append(r2)
        if ok and _axioms_hold(n, m, to, sq):
            found.append((m, to, sq))
    return found


def _isomorphic(n, A, B) -> bool:
    one = n - 1
    for perm in itertools.permutations(range(n)):
        if perm[one] != one:
            continue
        if all(
            perm[ta[x][y]] == tb[perm[x]][perm[y]]
            for ta, tb in zip(A, B)
            for x in range(n)
            for y in range(n)
        ):
            return True
    return False


def naive_classes(n: int) -> list[tuple]:
    """One table triple per isomorphism class."""
    reps = []
    for T in naive_tables(n):
        if not any(_isomorphic(n, T, R) for R in reps):
            reps.append(T)
    return reps

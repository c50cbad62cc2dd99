"""Canonical forms and isomorphism tests for finite pseudo-hoops.

Elements are first coloured by an isomorphism-invariant refinement over the
three operation tables.  Remaining ties are broken by individualising one
element at a time; every resulting total order gives an encoding of the
tables, and the least encoding is the certificate.  Zero always gets the
first position and 1 the last.
"""

from __future__ import annotations

import hashlib
import string
from typing import Optional

from .algebra import Algebra, validate


def _refine(A: Algebra, colors: list[int]) -> list[int]:
    E = A.elements
    tabs = (A.odot, A.to, A.squig)
    while True:
        sigs = []
        for x in E:
            rows = sorted(
                (colors[y],) + tuple(colors[t[x][y]] for t in tabs) + tuple(colors[t[y][x]] for t in tabs)
                for y in E
            )
            sigs.append((colors[x], tuple(rows)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _initial_colors(A: Algebra) -> list[int]:
    def key(x):
        if x == A.zero:
            return 0
        if x == A.one:
            return 2
        return 1

    return [key(x) for x in A.elements]


def _encode(A: Algebra, order: list[int]) -> bytes:
    """Tables of A relabelled so that ``order[k]`` becomes element ``k``."""
    pos = [0] * A.n
    for k, x in enumerate(order):
        pos[x] = k
    out = bytearray([A.n, pos[A.one], 255 if A.zero is None else pos[A.zero]])
    for t in (A.odot, A.to, A.squig):
        for x in order:
            out.extend(pos[t[x][y]] for y in order)
    return bytes(out)


def _search(A: Algebra, colors: list[int], best: list):
    colors = _refine(A, colors)
    k = len(set(colors))
    if k == A.n:
        order = sorted(A.elements, key=lambda x: colors[x])
        code = _encode(A, order)
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, order
        return
    cells: dict[int, list[int]] = {}
    for x in A.elements:
        cells.setdefault(colors[x], []).append(x)
    target = min(c for c, members in cells.items() if len(members) > 1)
    # individualise: the chosen element sorts just before the rest of its cell
    for x in cells[target]:
        nxt = [2 * c + (1 if c == target and y != x else 0) for y, c in enumerate(colors)]
        _search(A, nxt, best)


def canonical_labelling(A: Algebra) -> tuple[bytes, list[int]]:
    """``(certificate, order)``: ``order[k]`` is the element placed at index ``k``."""
    best: list = [None, None]
    _search(A, _initial_colors(A), best)
    return best[0], best[1]


def certificate(A: Algebra) -> bytes:
    return canonical_labelling(A)[0]


def certificate_hash(A: Algebra, length: int = 12) -> str:
    return hashlib.sha256(certificate(A)).hexdigest()[:length]


def _preserves(A: Algebra, B: Algebra, f: list[int]) -> bool:
    if f[A.one] != B.one:
        return False
    if (A.zero is None) != (B.zero is None) or (A.zero is not None and f[A.zero] != B.zero):
        return False
    for ta, tb in ((A.odot, B.odot), (A.to, B.to), (A.squig, B.squig)):
        for x in A.elements:
            for y in A.elements:
                if f[ta[x][y]] != tb[f[x]][f[y]]:
                    return False
    return True


def isomorphism(A: Algebra, B: Algebra) -> Optional[tuple[int, ...]]:
    """A verified bijection A -> B preserving all operations, or ``None``."""
    if A.n != B.n:
        return None
    ca, oa = canonical_labelling(A)
    cb, ob = canonical_labelling(B)
    if ca != cb:
        return None
    f = [0] * A.n
    for k in range(A.n):
        f[oa[k]] = ob[k]
    if not _preserves(A, B, f):
        raise RuntimeError("equal certificates but the induced map is not an isomorphism")
    return tuple(f)


def is_isomorphic(A: Algebra, B: Algebra) -> bool:
    return isomorphism(A, B) is not None


def canonical_labels(n: int) -> tuple[str, ...]:
    """``0, a, b, ..., 1`` for carriers of size ``n``."""
    if n == 1:
        return ("1",)
    middle = string.ascii_lowercase[: n - 2]
    if len(middle) < n - 2:
        middle = [f"e{i}" for i in range(1, n - 1)]
    return ("0", *middle, "1")


def canonical_form(A: Algebra, name: Optional[str] = None) -> Algebra:
    """A relabelled copy of A in canonical order with labels ``0, a, b, ..., 1``."""
    _, order = canonical_labelling(A)
    pos = [0] * A.n
    for k, x in enumerate(order):
        pos[x] = k

    def tab(t):
        return [[pos[t[x][y]] for y in order] for x in order]

    zero = None if A.zero is None else pos[A.zero]
    labels = canonical_labels(A.n)
    if A.n > 1 and zero is None:
        labels = tuple(f"e{i}" for i in range(A.n - 1)) + ("1",)
    return validate(
        Algebra(
            name or A.name, labels, pos[A.one], zero, tab(A.odot), tab(A.to), tab(A.squig)
        )
    )

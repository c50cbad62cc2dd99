"""Concrete pseudo-hoops: finite chains, integer intervals, products, built-ins."""

from __future__ import annotations

from .algebra import Algebra, validate
from .errors import UnknownBuiltin


def one_element(name: str = "trivial") -> Algebra:
    """The degenerate algebra {1}, with 0 = 1."""
    return validate(Algebra(name, ("1",), 0, 0, [[0]], [[0]], [[0]]))


def chain(m: int) -> Algebra:
    """The Lukasiewicz-style chain C_m = {a^m < ... < a < a^0 = 1}.

    Element ``i`` is ``a^(m-i)``, so index 0 is the zero ``a^m`` and index
    ``m`` is 1.  Exponents add (capped at ``m``) under the product and
    subtract (floored at 0) under the residual.
    """
    if m < 0:
        raise ValueError("chain length must be >= 0")
    labels = tuple(f"a{m - i}" if i < m else "1" for i in range(m + 1))
    exp = [m - i for i in range(m + 1)]

    def el(k):
        return m - k

    odot = [[el(min(exp[i] + exp[j], m)) for j in range(m + 1)] for i in range(m + 1)]
    to = [[el(max(exp[j] - exp[i], 0)) for j in range(m + 1)] for i in range(m + 1)]
    return validate(Algebra(f"C{m}", labels, m, 0, odot, to, to))


def interval(u: int) -> Algebra:
    """The interval [0, u] of the integers with the truncated l-group operations."""
    if u < 0:
        raise ValueError("u must be >= 0")
    E = range(u + 1)
    odot = [[max(x - u + y, 0) for y in E] for x in E]
    to = [[min(y - x + u, u) for y in E] for x in E]
    squig = [[min(u - x + y, u) for y in E] for x in E]
    return validate(Algebra(f"Z{u}", tuple(str(x) for x in E), u, 0, odot, to, squig))


def product(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    """Direct product with componentwise operations.

    Pairs are ordered lexicographically by (index in A, index in B) and
    labelled ``(x,y)``.  The product has a zero only if both factors do.
    """
    pairs = [(a, b) for a in A.elements for b in B.elements]
    pos = {p: i for i, p in enumerate(pairs)}

    def tab(ta, tb):
        return [[pos[(ta[a][c], tb[b][d])] for (c, d) in pairs] for (a, b) in pairs]

    zero = None
    if A.zero is not None and B.zero is not None:
        zero = pos[(A.zero, B.zero)]
    return validate(
        Algebra(
            name or f"{A.name}x{B.name}",
            tuple(f"({A.labels[a]},{B.labels[b]})" for a, b in pairs),
            pos[(A.one, B.one)],
            zero,
            tab(A.odot, B.odot),
            tab(A.to, B.to),
            tab(A.squig, B.squig),
        )
    )


_GODEL_ODOT = [
    "0 0 0 0 0",
    "0 a 0 a a",
    "0 0 b b b",
    "0 a b c c",
    "0 a b c 1",
]
_GODEL_TO = [
    "1 1 1 1 1",
    "b 1 b 1 1",
    "a a 1 1 1",
    "0 a b 1 1",
    "0 a b c 1",
]
_WAJSBERG_ODOT = [
    "0 0 0 0 0",
    "0 0 0 0 a",
    "0 0 0 a b",
    "0 0 a b c",
    "0 a b c 1",
]
_WAJSBERG_TO = [
    "1 1 1 1 1",
    "c 1 1 1 1",
    "b c 1 1 1",
    "a b c 1 1",
    "0 a b c 1",
]


def _rows(lines):
    return [line.split() for line in lines]


BUILTIN_NAMES = ("hoop5-godel", "hoop5-wajsberg")


def builtin(name: str) -> Algebra:
    """The two five-element hoops on {0, a, b, c, 1}.

    ``hoop5-godel`` has an idempotent product and is not Wajsberg;
    ``hoop5-wajsberg`` is the five-element Lukasiewicz chain.
    """
    elements = ["0", "a", "b", "c", "1"]
    if name == "hoop5-godel":
        odot, to = _GODEL_ODOT, _GODEL_TO
    elif name == "hoop5-wajsberg":
        odot, to = _WAJSBERG_ODOT, _WAJSBERG_TO
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return validate(Algebra.from_labels(name, elements, "1", _rows(odot), _rows(to), zero="0"))

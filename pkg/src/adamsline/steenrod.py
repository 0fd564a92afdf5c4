"""The mod 2 Steenrod algebra in the admissible basis.

Monomials are tuples ``(i1, ..., ik)`` meaning ``Sq^i1 ... Sq^ik``; the unit is
``()``.  An element is a frozenset of admissible monomials (coefficients in
F2 are membership).  Products are reduced with the Adem relations.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterable, Sequence

Monomial = tuple[int, ...]
SteenrodElement = frozenset  # frozenset[Monomial]

UNIT: Monomial = ()
ZERO: SteenrodElement = frozenset()
ONE: SteenrodElement = frozenset({UNIT})


def binom_mod2(a: int, b: int) -> int:
    """``binom(a, b) mod 2`` by Lucas: odd iff the bits of b are a subset of a's."""
    if a < 0 or b < 0 or b > a:
        return 0
    return int(a & b == b)


def is_admissible(mono: Sequence[int]) -> bool:
    return all(i > 0 for i in mono) and all(
        mono[j] >= 2 * mono[j + 1] for j in range(len(mono) - 1)
    )


def degree(mono: Sequence[int]) -> int:
    return sum(mono)


def _admissible_with_last_bound(d: int, max_first: int) -> list[Monomial]:
    # monomials of degree d whose first exponent is <= max_first
    if d == 0:
        return [UNIT]
    out = []
    for first in range(min(d, max_first), 0, -1):
        for rest in _admissible_cached(d - first, first // 2):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _admissible_cached(d: int, max_first: int) -> tuple[Monomial, ...]:
    return tuple(_admissible_with_last_bound(d, max_first))


@lru_cache(maxsize=None)
def admissible_basis(d: int) -> tuple[Monomial, ...]:
    """All admissible monomials of degree ``d``, sorted lexicographically."""
    if d < 0:
        return ()
    return tuple(sorted(_admissible_cached(d, d)))


@lru_cache(maxsize=None)
def basis_index(d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(admissible_basis(d))}


def dimension(d: int) -> int:
    return len(admissible_basis(d))


def _adem_pair(a: int, b: int) -> list[Monomial]:
    # Sq^a Sq^b for a < 2b, as a list of (possibly repeated) words
    out = []
    for j in range(a // 2 + 1):
        if binom_mod2(b - 1 - j, a - 2 * j):
            out.append((a + b - j, j) if j else (a + b,))
    return out


_lock = threading.Lock()


@lru_cache(maxsize=None)
def _reduce(word: Monomial) -> SteenrodElement:
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            acc: set[Monomial] = set()
            for rep in _adem_pair(a, b):
                for m in _reduce(word[:j] + rep + word[j + 2 :]):
                    acc ^= {m}
            return frozenset(acc)
    return frozenset({word})


def adem_reduce(word: Iterable[int]) -> SteenrodElement:
    """Admissible expansion of ``Sq^w1 ... Sq^wk``.  ``Sq^0`` entries are units."""
    w = tuple(i for i in word if i != 0)
    if any(i < 0 for i in w):
        raise ValueError("negative Steenrod square")
    with _lock:
        return _reduce(w)


def element(*monos: Iterable[int]) -> SteenrodElement:
    """Sum of the given words, each reduced to admissible form."""
    acc: set[Monomial] = set()
    for m in monos:
        for x in adem_reduce(m):
            acc ^= {x}
    return frozenset(acc)


def sq(i: int) -> SteenrodElement:
    return ONE if i == 0 else frozenset({(i,)})


def add(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    return frozenset(x ^ y)


def multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    acc: set[Monomial] = set()
    for a in x:
        for b in y:
            acc ^= set(adem_reduce(a + b))
    return frozenset(acc)


@lru_cache(maxsize=None)
def product_bits(da: int, ia: int, db: int, ib: int) -> int:
    """Product of basis monomial ``ia`` of degree ``da`` and ``ib`` of degree ``db``,
    packed over ``admissible_basis(da + db)``."""
    a = admissible_basis(da)[ia]
    b = admissible_basis(db)[ib]
    index = basis_index(da + db)
    bits = 0
    for m in adem_reduce(a + b):
        bits ^= 1 << index[m]
    return bits


def is_homogeneous(x: SteenrodElement) -> bool:
    return len({degree(m) for m in x}) <= 1


def format_monomial(m: Monomial) -> str:
    return "1" if not m else "".join(f"Sq{i}" for i in m)


def format_element(x: SteenrodElement) -> str:
    if not x:
        return "0"
    return " + ".join(format_monomial(m) for m in sorted(x, key=lambda m: (degree(m), m)))

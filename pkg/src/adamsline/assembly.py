"""Finitely generated abelian groups with formal extension atoms, and the
assembly of the second homology group from stem data.

Groups are kept in primary form: a free rank plus a sorted tuple of prime
powers.  ``E1``, ``E2`` and ``E3`` are atoms standing for groups known only
up to an extension; they are carried along and never simplified.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Mapping, Optional, Union

ATOMS = ("E1", "E2", "E3")


def _factor(m: int) -> list[int]:
    """Prime-power factors of ``m``."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append(q)
        p += 1
    if m > 1:
        out.append(m)
    return out


def _prime_of(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _torsion_key(q: int) -> tuple[int, int]:
    return (_prime_of(q), q)


@dataclass(frozen=True)
class FgAbelianGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()
    atoms: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("negative rank")
        parts = []
        for q in self.torsion:
            if q < 2:
                raise ValueError(f"torsion order {q} < 2")
            parts.extend(_factor(q))
        for a in self.atoms:
            if a not in ATOMS:
                raise ValueError(f"unknown atom {a!r}")
        object.__setattr__(self, "torsion", tuple(sorted(parts, key=_torsion_key)))
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms)))

    @classmethod
    def cyclic(cls, m: int) -> "FgAbelianGroup":
        return cls(1) if m == 0 else cls(0, () if m == 1 else (m,))

    @classmethod
    def elementary(cls, p: int, r: int) -> "FgAbelianGroup":
        return cls(0, (p,) * r)

    @classmethod
    def atom(cls, name: str) -> "FgAbelianGroup":
        return cls(0, (), (name,))

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup(self.rank + other.rank, self.torsion + other.torsion, self.atoms + other.atoms)

    @property
    def is_zero(self) -> bool:
        return not (self.rank or self.torsion or self.atoms)

    @property
    def has_atoms(self) -> bool:
        return bool(self.atoms)

    def order(self) -> Optional[int]:
        if self.rank or self.atoms:
            return None
        out = 1
        for q in self.torsion:
            out *= q
        return out

    def cyclic_summands(self) -> list[int]:
        """``0`` for each copy of Z, then the prime powers."""
        return [0] * self.rank + list(self.torsion)

    def __str__(self) -> str:
        return format_group(self)


GroupLike = Union[FgAbelianGroup, int]

ZERO = FgAbelianGroup()
Z = FgAbelianGroup(1)


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    out = ZERO
    for g in groups:
        out = out + g
    return out


def format_group(G: FgAbelianGroup) -> str:
    """Canonical text: ``Z^r + (Z/q)^k + ... + atoms``, torsion by prime then
    order, ``0`` for the trivial group."""
    terms = []
    if G.rank:
        terms.append("Z" if G.rank == 1 else f"Z^{G.rank}")
    for q, k in sorted(Counter(G.torsion).items(), key=lambda x: _torsion_key(x[0])):
        terms.append(f"Z/{q}" if k == 1 else f"(Z/{q})^{k}")
    for a, k in sorted(Counter(G.atoms).items()):
        terms.append(a if k == 1 else f"({a})^{k}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"^\(?(Z(?:/(\d+)(?:\^(\d+))?)?|E[123]|0)\)?(?:\^(\d+))?$")


def parse_group(text: str) -> FgAbelianGroup:
    """Inverse of :func:`format_group`; also accepts ``Z/2^2`` for Z/4 and
    ``⊕`` as a separator."""
    out = ZERO
    text = text.replace("⊕", "+").replace("oplus", "+")
    for raw in text.split("+"):
        term = raw.strip().replace(" ", "")
        if not term:
            raise ValueError(f"empty term in {text!r}")
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse group term {term!r}")
        body, mod, inner_exp, outer_exp = m.groups()
        count = int(outer_exp) if outer_exp else 1
        if body == "0":
            continue
        if body.startswith("E"):
            piece = FgAbelianGroup.atom(body)
        elif mod is None:
            piece = Z
        else:
            order = int(mod) ** (int(inner_exp) if inner_exp else 1)
            if order < 2:
                raise ValueError(f"trivial cyclic term {term!r}")
            piece = FgAbelianGroup.cyclic(order)
        for _ in range(count):
            out = out + piece
    return out


def tensor_cyclic(a: int, b: int) -> FgAbelianGroup:
    """``Z/a (x) Z/b`` with ``0`` standing for Z."""
    if a == 0 and b == 0:
        return Z
    if a == 0 or b == 0:
        return FgAbelianGroup.cyclic(a or b)
    return FgAbelianGroup.cyclic(gcd(a, b))


class IndeterminateH2(ValueError):
    pass


def lambda_square(G: FgAbelianGroup) -> FgAbelianGroup:
    """Exterior square, which is the second integral homology of G."""
    if G.has_atoms:
        raise IndeterminateH2(f"H2 of {format_group(G)} is indeterminate: it contains unresolved extensions")
    out = ZERO
    for a, b in combinations(G.cyclic_summands(), 2):
        out = out + tensor_cyclic(a, b)
    return out


# -- case formulas ----------------------------------------------------------------


def h1_autQ(n: int) -> FgAbelianGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        return FgAbelianGroup.elementary(2, 2)
    if n in (1, 3, 7):
        return ZERO
    return FgAbelianGroup.cyclic(4)


def pi_rp_2n2(n: int) -> FgAbelianGroup:
    """Degree 2n+2 homotopy of the stunted projective spectrum starting in 2n."""
    if n < 1:
        raise ValueError("n must be positive")
    return FgAbelianGroup.elementary(2, 2) if (2 * n) % 8 in (0, 4) else ZERO


def ker_J(i: int) -> FgAbelianGroup:
    if i < 1:
        raise ValueError("stem must be positive")
    return Z if i % 4 == 0 else ZERO


def pi_A_2n2(n: int) -> FgAbelianGroup:
    r = (n + 1) % 8
    if r in (0, 4):
        return Z
    if r in (1, 2):
        return FgAbelianGroup.cyclic(2)
    return ZERO


class StemDataError(ValueError):
    pass


@dataclass(frozen=True)
class StemData:
    coker_j: Mapping[int, FgAbelianGroup] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for i, G in self.coker_j.items():
            if G.rank or G.atoms:
                raise StemDataError(f"stem {i}: cokernel of J must be finite, got {format_group(G)}")

    def get(self, i: int) -> FgAbelianGroup:
        if i not in self.coker_j:
            raise StemDataError(f"no coker(J) datum for stem {i}")
        return self.coker_j[i]


_STEM_LINE = re.compile(r"^stem\s+(\d+)\s*=\s*(.+)$")


def parse_stem_data(text: str) -> StemData:
    data: dict[int, FgAbelianGroup] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _STEM_LINE.match(line)
        if not m:
            raise StemDataError(f"line {lineno}: expected 'stem <i> = <terms>', got {raw.strip()!r}")
        i = int(m.group(1))
        if i in data:
            raise StemDataError(f"line {lineno}: duplicate stem {i}")
        try:
            G = parse_group(m.group(2))
        except ValueError as exc:
            raise StemDataError(f"line {lineno}: {exc}") from None
        if G.rank or G.atoms:
            raise StemDataError(f"line {lineno}: stem {i} must be a finite group")
        data[i] = G
    return StemData(data)


def load_stem_data(path: Union[str, Path]) -> StemData:
    return parse_stem_data(Path(path).read_text(encoding="utf-8"))


def reference_stems_path() -> Path:
    return Path(__file__).with_name("data") / "reference.stems"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Extension:
    atom: str
    sub: str
    quotient: str

    def __str__(self) -> str:
        return f"0 -> {self.sub} -> {self.atom} -> {self.quotient} -> 0"


def pi_MO(n: int, stem: int, data: StemData) -> tuple[FgAbelianGroup, list[Extension]]:
    """Homotopy of the highly connected bordism spectrum in degree 2n+1 or 2n+2,
    with the extensions behind any atoms."""
    if stem == 2 * n + 1:
        if n + 1 in (9, 12):
            raise PreconditionError(f"n+1 = {n + 1} is exceptional in degree 2n+1")
        return data.get(stem), []
    if stem != 2 * n + 2:
        raise ValueError("stem must be 2n+1 or 2n+2")
    C = data.get(stem)
    r = (n + 1) % 8
    if r == 6:
        return C + Z, []
    if r in (3, 5, 7):
        return C, []
    if r in (0, 4):
        return C + Z + Z, []
    cj = f"coker(J)_{stem} = {format_group(C)}"
    if r == 1:
        return FgAbelianGroup.atom("E1"), [Extension("E1", cj, "Z/2")]
    return FgAbelianGroup.atom("E2"), [Extension("E3", "Z", "Z/2"), Extension("E2", cj, "E3")]


def pi_MO_from_sequences(n: int, data: StemData) -> FgAbelianGroup:
    """Degree 2n+2 homotopy assembled from coker(J), ker(J) and the A-spectrum
    term, collapsing to an atom only where an extension is non-split data."""
    i = 2 * n + 2
    C, K, A = data.get(i), ker_J(i), pi_A_2n2(n)
    if A.torsion:
        return FgAbelianGroup.atom("E2" if K.rank else "E1")
    return C + K + A


TABLE2_REFERENCE: dict[int, str] = {
    16: "E1 + (Z/2)^15",
    17: "(Z/2)^7 + Z/2^2 + Z/3 + Z/5",
    18: "Z/2 + Z/2^2 + E2",
}


@dataclass(frozen=True)
class H2Assembly:
    n: int
    g: int
    group: FgAbelianGroup
    pieces: tuple[tuple[str, FgAbelianGroup], ...]
    extensions: tuple[Extension, ...]
    reference: Optional[FgAbelianGroup]

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.reference is None else same_up_to_order(self.group, self.reference)

    def report(self) -> str:
        lines = [f"n={self.n} g={self.g}", f"H2 = {format_group(self.group)}"]
        for name, G in self.pieces:
            lines.append(f"  {name} = {format_group(G)}")
        for e in self.extensions:
            lines.append(f"  extension: {e}")
        if self.reference is None:
            lines.append("reference: none")
        else:
            lines.append(f"reference: {format_group(self.reference)}")
            lines.append("agreement: yes" if self.agrees else "agreement: NO (formula and reference differ)")
        return "\n".join(lines) + "\n"


def same_up_to_order(G: FgAbelianGroup, H: FgAbelianGroup) -> bool:
    # the representation is canonical, so equality is multiset equality
    return G == H


def assemble_H2(n: int, g: int, data: StemData) -> H2Assembly:
    """Second homology of the diffeomorphism group classifying space from the
    splitting: ``Lambda^2(pi_{2n+1} MO + pi_{2n+1} RP) + pi_{2n+2} MO + pi_{2n+2} RP``
    with the odd-degree projective term given by ``h1_autQ``."""
    problems = []
    if n < 16:
        problems.append(f"n = {n} < 16: splitting not available")
    if g < 7:
        problems.append(f"g = {g} < 7: homological stability does not reach degree 2")
    if problems:
        raise PreconditionError("; ".join(problems))
    mo_odd, _ = pi_MO(n, 2 * n + 1, data)
    rp_odd = h1_autQ(n)
    mo_even, ext = pi_MO(n, 2 * n + 2, data)
    rp_even = pi_rp_2n2(n)
    h2_part = lambda_square(mo_odd + rp_odd)
    total = h2_part + mo_even + rp_even
    pieces = (
        (f"pi_{2 * n + 1} MO", mo_odd),
        (f"pi_{2 * n + 1} RP", rp_odd),
        (f"H2(pi_{2 * n + 1})", h2_part),
        (f"pi_{2 * n + 2} MO", mo_even),
        (f"pi_{2 * n + 2} RP", rp_even),
    )
    ref = TABLE2_REFERENCE.get(n)
    return H2Assembly(n, g, total, pieces, tuple(ext), parse_group(ref) if ref else None)

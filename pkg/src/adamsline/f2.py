"""Linear algebra over F2 with rows packed into Python integers.

Bit ``j`` of a packed row is the coefficient of column ``j``.  Python ints
are arbitrary precision, so a row is a sequence of machine words handled by
the interpreter; XOR of two rows is a single operation regardless of width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "F2Vector":
        bits = 0
        for j, e in enumerate(entries):
            if e & 1:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def zero(cls, length: int) -> "F2Vector":
        return cls(length, 0)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return F2Vector(self.length, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class F2Matrix:
    """A ``rows x cols`` matrix; ``data[i]`` packs row ``i``."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row does not fit in {self.cols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: Optional[int] = None) -> "F2Matrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            data.append(F2Vector.from_list(row).bits)
        return cls(len(entries), cols, tuple(data))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.data[i])

    def to_lists(self) -> list[list[int]]:
        return [F2Vector(self.cols, r).to_list() for r in self.data]

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return F2Matrix(self.cols, self.rows, tuple(out))

    def apply(self, x: F2Vector) -> F2Vector:
        if x.length != self.cols:
            raise ValueError(f"vector of length {x.length} against {self.cols} columns")
        bits = 0
        for i, r in enumerate(self.data):
            if parity(r & x.bits):
                bits |= 1 << i
        return F2Vector(self.rows, bits)


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def row_reduce(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form, pivot = lowest set bit, rows sorted by pivot."""
    pivots: dict[int, int] = {}
    for r in rows:
        for p, pr in pivots.items():
            if (r >> p) & 1:
                r ^= pr
        if r:
            p = (r & -r).bit_length() - 1
            for q in pivots:
                if (pivots[q] >> p) & 1:
                    pivots[q] ^= r
            pivots[p] = r
    return [pivots[p] for p in sorted(pivots)]


def rank(m: F2Matrix) -> int:
    return len(row_reduce(m.data))


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    return [F2Vector(m.cols, k) for k in kernel_of_columns(m.transpose().data)]


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """Some ``x`` with ``m x = b``, or ``None`` if the system is inconsistent."""
    if b.length != m.rows:
        raise ValueError(f"right-hand side has length {b.length}, matrix has {m.rows} rows")
    x = solve_columns(m.transpose().data, b.bits)
    return None if x is None else F2Vector(m.cols, x)


# Column-oriented helpers.  A linear map is given by the list of images of the
# domain basis vectors; these are what the resolution code produces directly.


class Echelon:
    """Incrementally maintained echelon basis that remembers how each
    basis row was built from the inputs fed to it."""

    __slots__ = ("_rows", "_combos", "_order")

    def __init__(self) -> None:
        self._rows: dict[int, int] = {}
        self._combos: dict[int, int] = {}
        self._order: list[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        rows, combos = self._rows, self._combos
        for p in self._order:
            if (v >> p) & 1:
                v ^= rows[p]
                combo ^= combos[p]
        return v, combo

    def add(self, v: int, combo: int = 0) -> tuple[int, int]:
        """Insert ``v``; returns the residue and its combination.  A zero
        residue means ``v`` was dependent and ``combo`` records the relation."""
        v, combo = self.reduce(v, combo)
        if v:
            p = (v & -v).bit_length() - 1
            self._rows[p] = v
            self._combos[p] = combo
            self._order.append(p)
        return v, combo

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def basis(self) -> list[int]:
        return [self._rows[p] for p in self._order]


def kernel_of_columns(images: Sequence[int]) -> list[int]:
    """Kernel of the map sending basis vector ``j`` to ``images[j]``."""
    ech = Echelon()
    out = []
    for j, v in enumerate(images):
        residue, combo = ech.add(v, 1 << j)
        if not residue:
            out.append(combo)
    return out


def image_rank(images: Sequence[int]) -> int:
    return len(row_reduce(images))


def solve_columns(images: Sequence[int], target: int) -> Optional[int]:
    ech = Echelon()
    for j, v in enumerate(images):
        ech.add(v, 1 << j)
    residue, combo = ech.reduce(target)
    return combo if residue == 0 else None


def apply_columns(images: Sequence[int], x: int) -> int:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= images[j]
        x >>= 1
        j += 1
    return out


def bits_of(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out

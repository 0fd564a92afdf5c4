"""The splitting-range optimization.

For each ``k`` in ``[0, n]`` three upper bounds on ``l`` apply:

* ``star``: ``l <= 2**h(n - k + a) - 1`` (connectivity of the cohomology maps),
* ``dag``:  ``l <= 3n - k`` (lifting through the truncation),
* ``ddag``: ``l <= 2*h_rel(n, k) + 2n + b`` (filtration against the vanishing line),

and the splitting range is ``max_k min(star, dag, ddag)``.  The pair
``(a, b)`` is a :class:`ConstraintVariant`; ``(1, -4)`` is the stated one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

TABLE1_REFERENCE: tuple[int, ...] = (-1, 0, 1, 3, 3, 7, 7, 7, 7, 15, 19, 21, 25, 27, 29, 31)

_H_RESIDUES = frozenset({0, 1, 2, 4})


def h(s: int) -> int:
    """Number of ``m`` with ``0 < m <= s`` and ``m mod 8`` in {0, 1, 2, 4}."""
    if s <= 0:
        return 0
    q, r = divmod(s, 8)
    return 4 * q + sum(1 for m in range(1, r + 1) if m % 8 in _H_RESIDUES)


def h_rel(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    return h(n) - h(n - k)


@dataclass(frozen=True)
class ConstraintVariant:
    star_shift: int = 1  # star uses h(n - k + star_shift)
    ddag_offset: int = -4

    def __post_init__(self) -> None:
        if self.star_shift not in (0, 1):
            raise ValueError("star index must be n-k or n-k+1")
        if self.ddag_offset not in (-4, -5, -6):
            raise ValueError("ddag offset must be -4, -5 or -6")

    @property
    def label(self) -> str:
        star = "n-k+1" if self.star_shift else "n-k"
        return f"star={star},ddag={self.ddag_offset}"

    @classmethod
    def parse(cls, text: str) -> "ConstraintVariant":
        """Parse ``star=<n-k|n-k+1|0|1>,ddag=<-4|-5|-6>`` (either part optional)."""
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            key, val = key.strip(), val.strip()
            if key == "star":
                shifts = {"n-k": 0, "n-k+1": 1, "0": 0, "1": 1}
                if val not in shifts:
                    raise ValueError(f"bad star value {val!r}")
                kw["star_shift"] = shifts[val]
            elif key == "ddag":
                kw["ddag_offset"] = int(val)
            else:
                raise ValueError(f"unknown variant key {key!r}")
        return cls(**kw)


DISPLAYED = ConstraintVariant(1, -4)
VARIANT_GRID: tuple[ConstraintVariant, ...] = tuple(
    ConstraintVariant(a, b) for a in (0, 1) for b in (-4, -5, -6)
)


def constraints(n: int, k: int, v: ConstraintVariant = DISPLAYED) -> tuple[int, int, int]:
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    star = 2 ** h(n - k + v.star_shift) - 1
    dag = 3 * n - k
    ddag = 2 * h_rel(n, k) + 2 * n + v.ddag_offset
    return star, dag, ddag


@dataclass(frozen=True)
class RangeResult:
    n: int
    ell: int
    k: int
    binding: str
    table: tuple[tuple[int, int, int, int, int], ...]  # k, star, dag, ddag, min
    variant: ConstraintVariant = DISPLAYED


def _binding(star: int, dag: int, ddag: int) -> str:
    low = min(star, dag, ddag)
    return "+".join(name for name, val in (("star", star), ("dag", dag), ("ddag", ddag)) if val == low)


def optimize(n: int, v: ConstraintVariant = DISPLAYED) -> RangeResult:
    """Exhaustive max-min over ``k``; ties go to the smallest ``k``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rows = []
    best_k, best = 0, None
    for k in range(n + 1):
        star, dag, ddag = constraints(n, k, v)
        low = min(star, dag, ddag)
        rows.append((k, star, dag, ddag, low))
        if best is None or low > best:
            best, best_k = low, k
    _, star, dag, ddag, _ = rows[best_k]
    return RangeResult(n, best, best_k, _binding(star, dag, ddag), tuple(rows), v)


def optimize_relaxed(n: int, v: ConstraintVariant = DISPLAYED) -> tuple[int, int]:
    """Max over k of ``min(dag, ddag)``, ignoring ``star``.  Returns ``(l, k)``."""
    best, best_k = None, 0
    for k in range(n + 1):
        _, dag, ddag = constraints(n, k, v)
        low = min(dag, ddag)
        if best is None or low > best:
            best, best_k = low, k
    return best, best_k  # type: ignore[return-value]


def balanced_bound(n: int) -> tuple[int, list[int]]:
    """Max over k of ``min(3n - k, 2n + k - 10)``, the relaxed problem with the
    elementary lower bound for ``ddag``; returns the value and all maximizers."""
    vals = [(min(3 * n - k, 2 * n + k - 10), k) for k in range(n + 1)]
    top = max(v for v, _ in vals)
    return top, [k for v, k in vals if v == top]


def closed_form(n: int) -> int:
    return 2 * n + n // 2 - 5


@dataclass(frozen=True)
class ReconcileRow:
    variant: ConstraintVariant
    n: int
    ell: int
    k: int
    binding: str
    reference: Optional[int]

    @property
    def match(self) -> Optional[bool]:
        return None if self.reference is None else self.ell == self.reference


def reconcile_table(
    variants: Iterable[ConstraintVariant] = VARIANT_GRID,
    n_max: int = 15,
    reference: Sequence[int] = TABLE1_REFERENCE,
) -> list[ReconcileRow]:
    rows = []
    for v in variants:
        for n in range(n_max + 1):
            r = optimize(n, v)
            ref = reference[n] if n < len(reference) else None
            rows.append(ReconcileRow(v, n, r.ell, r.k, r.binding, ref))
    return rows


def reconcile_summary(rows: Sequence[ReconcileRow]) -> dict[str, list[int]]:
    """Mismatching ``n`` per variant label."""
    out: dict[str, list[int]] = {}
    for r in rows:
        out.setdefault(r.variant.label, [])
        if r.match is False:
            out[r.variant.label].append(r.n)
    return out


def reconcile_tsv(rows: Sequence[ReconcileRow]) -> str:
    lines = ["variant\tn\tell\tk\tbinding\ttable1\tmatch"]
    for r in rows:
        ref = "" if r.reference is None else str(r.reference)
        m = "" if r.match is None else ("yes" if r.match else "MISMATCH")
        lines.append(f"{r.variant.label}\t{r.n}\t{r.ell}\t{r.k}\t{r.binding}\t{ref}\t{m}")
    summary = reconcile_summary(rows)
    for label, bad in summary.items():
        if bad:
            lines.append(f"# {label}: mismatches at n = {','.join(map(str, bad))}")
        else:
            lines.append(f"# {label}: all reference rows match")
    return "\n".join(lines) + "\n"


def splitrange_tsv(n_max: int, v: ConstraintVariant = DISPLAYED) -> str:
    lines = ["n\tell\tk\tbinding\ttable1\tmatch\tclosed_form"]
    for n in range(n_max + 1):
        r = optimize(n, v)
        ref = TABLE1_REFERENCE[n] if n < len(TABLE1_REFERENCE) else None
        ref_s = "" if ref is None else str(ref)
        match = "" if ref is None else ("yes" if ref == r.ell else "MISMATCH")
        lines.append(f"{n}\t{r.ell}\t{r.k}\t{r.binding}\t{ref_s}\t{match}\t{closed_form(n)}")
    return "\n".join(lines) + "\n"

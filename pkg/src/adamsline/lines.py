"""Vanishing lines on Adams charts.

A line is stored as ``(m, c)``: a chart vanishes at ``(s, t)`` when
``m*s > (t - s) + c``.  The slope is ``1/m`` and the x-intercept (the stem
where the line crosses ``s = 0``) is ``-c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .resolution import ExtChart

Region = Callable[[int, int], bool]


@dataclass(frozen=True)
class VanishingLine:
    m: int
    c: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be a positive integer")

    @classmethod
    def from_intercept(cls, m: int, intercept: int) -> "VanishingLine":
        return cls(m, -intercept)

    @property
    def intercept(self) -> int:
        return -self.c

    def vanishes(self, s: int, t: int) -> bool:
        return vanishes(self, s, t)


def vanishes(line: VanishingLine, s: int, t: int) -> bool:
    return line.m * s > (t - s) + line.c


def skeleton_shift(line: VanishingLine, r: int) -> VanishingLine:
    """Line for maps out of an ``r``-skeleton: intercept ``c - r`` in the
    x-intercept convention, i.e. the stored ``c`` grows by ``r``."""
    return VanishingLine(line.m, line.c + r)


def epsilon(s: int) -> int:
    if s < 0:
        raise ValueError("s must be non-negative")
    return (0, 1, 2, 2)[s % 4]


def eta(s: int) -> int:
    if s < 0:
        raise ValueError("s must be non-negative")
    return (1, 1, 2, 3)[s % 4]


def free_a0_region(bottom: int) -> Region:
    """Vanishing region for Ext of a module free over Sq^1 starting in degree
    ``bottom``: ``t - s - bottom + epsilon(s) < 2s``."""
    return lambda s, t: t - s - bottom + epsilon(s) < 2 * s


def sphere_region(bottom: int) -> Region:
    """Vanishing region of the sphere shifted to ``bottom`` away from its
    h0-tower: ``0 < t - s - bottom + eta(s) < 2s``."""
    return lambda s, t: 0 < t - s - bottom + eta(s) < 2 * s


def line_region(line: VanishingLine) -> Region:
    return lambda s, t: vanishes(line, s, t)


def null_filtration_bound(d: int, k: int) -> int:
    """Largest skeleton ``r`` for which a map of Adams filtration ``>= d`` into
    the Y-type target is forced null, ``2(d + k - 2)``; ``-1`` when ``d + k < 2``
    (no skeleton qualifies)."""
    if d < 0 or k < 0:
        raise ValueError("d and k must be non-negative")
    return max(2 * (d + k - 2), -1)


def filtration_nullity_line(k: int, r: int) -> VanishingLine:
    """The line of slope 1/2 and intercept ``2k - 3 - r`` used to bound maps
    from an r-skeleton; in stem 0 it vanishes for ``2d > r + 3 - 2k``."""
    return skeleton_shift(VanishingLine.from_intercept(2, 2 * k - 3), r)


@dataclass
class RegionReport:
    violations: list[tuple[int, int, int]]
    exceptions: list[int] = field(default_factory=list)
    window: tuple[int, int] = (0, 0)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_tsv(self) -> str:
        lines = ["s\tt\tstem\tdim"]
        lines += [f"{s}\t{t}\t{t - s}\t{d}" for s, t, d in self.violations]
        return "\n".join(lines) + "\n"


def verify_chart(
    chart: ExtChart,
    region: Region,
    exceptions: Iterable[int] = (),
    s_max: int | None = None,
    t_max: int | None = None,
) -> RegionReport:
    """Every nonzero chart entry inside ``region`` whose stem is not exempt.
    The default window is the chart's safe window (one below each edge)."""
    exempt = sorted(set(exceptions))
    s_hi = chart.s_max - 1 if s_max is None else s_max
    t_hi = chart.t_max - 1 if t_max is None else t_max
    bad = []
    for s, t, d in chart.nonzero():
        if s > s_hi or t > t_hi or (t - s) in exempt:
            continue
        if region(s, t):
            bad.append((s, t, d))
    return RegionReport(bad, exempt, (s_hi, t_hi))


def tower_column(chart: ExtChart, stem: int, s_max: int | None = None) -> list[int]:
    s_hi = chart.s_max - 1 if s_max is None else s_max
    return [chart.dim(s, stem + s) for s in range(s_hi + 1) if stem + s <= chart.t_max]


def line_not_covered(bottom: int, line: VanishingLine, s_max: int, stem_max: int) -> list[tuple[int, int]]:
    """Window points above the stem ``bottom`` where ``line`` claims vanishing
    but the sphere and free-A0 regions do not both guarantee it.  Empty means
    the coarse line follows from the two refined regions."""
    free = free_a0_region(bottom + 1)
    sph = sphere_region(bottom)
    out = []
    for s in range(s_max + 1):
        for stem in range(bottom + 1, stem_max + 1):
            t = stem + s
            if vanishes(line, s, t) and not (sph(s, t) and free(s, t)):
                out.append((s, stem))
    return out


def sphere_region_escapes(bottom: int, s_max: int, stem_max: int) -> list[tuple[int, int]]:
    """Points where the shifted-sphere region holds but the free-A0 region
    (starting one degree higher) does not."""
    free = free_a0_region(bottom + 1)
    sph = sphere_region(bottom)
    return [
        (s, stem)
        for s in range(s_max + 1)
        for stem in range(bottom, stem_max + 1)
        if sph(s, stem + s) and not free(s, stem + s)
    ]

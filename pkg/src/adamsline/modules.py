"""Degreewise finite graded modules over the Steenrod algebra.

A module is stored as basis labels per degree plus, for each ``i >= 1`` and
degree ``d``, the packed images of ``Sq^i`` on the basis of degree ``d``.
Everything above ``t_max`` is discarded, so ``Sq^i`` landing there is zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import f2
from .steenrod import Monomial, adem_reduce, binom_mod2


@dataclass(frozen=True)
class GradedModule:
    name: str
    t_min: int
    t_max: int
    labels: Mapping[int, tuple[str, ...]]
    action: Mapping[tuple[int, int], tuple[int, ...]]
    notes: tuple[str, ...] = ()
    _label_index: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.t_max < self.t_min:
            raise ValueError(f"empty degree window [{self.t_min}, {self.t_max}]")
        index = {}
        for d, labs in self.labels.items():
            if not self.t_min <= d <= self.t_max:
                raise ValueError(f"basis element in degree {d} outside window")
            for k, lab in enumerate(labs):
                if lab in index:
                    raise ValueError(f"duplicate label {lab!r}")
                index[lab] = (d, k)
        for (i, d), images in self.action.items():
            if i < 1:
                raise ValueError("action table only holds Sq^i for i >= 1")
            if len(images) != self.dim(d):
                raise ValueError(f"Sq^{i} table in degree {d} has wrong length")
            top = self.dim(d + i)
            if any(v >> top for v in images):
                raise ValueError(f"Sq^{i} from degree {d} leaves the target basis")
        object.__setattr__(self, "_label_index", index)

    def dim(self, d: int) -> int:
        return len(self.labels.get(d, ()))

    def degrees(self) -> list[int]:
        return sorted(d for d in self.labels if self.labels[d])

    @property
    def bottom(self) -> Optional[int]:
        ds = self.degrees()
        return ds[0] if ds else None

    def locate(self, label: str) -> tuple[int, int]:
        return self._label_index[label]

    def sq(self, i: int, d: int, v: int) -> int:
        """``Sq^i`` applied to the packed vector ``v`` of degree ``d``."""
        if i == 0:
            return v
        if d + i > self.t_max or not v:
            return 0
        images = self.action.get((i, d))
        if images is None:
            return 0
        return f2.apply_columns(images, v)

    def sq_matrix(self, i: int, d: int) -> list[int]:
        n = self.dim(d)
        return [self.sq(i, d, 1 << k) for k in range(n)]

    def act(self, mono: Monomial, d: int, v: int) -> int:
        """Admissible monomial acting on ``v``; rightmost square first."""
        for i in reversed(mono):
            v = self.sq(i, d, v)
            d += i
            if not v:
                return 0
        return v

    def format_vector(self, d: int, v: int) -> str:
        if not v:
            return "0"
        return "+".join(self.labels[d][k] for k in f2.bits_of(v))


def _build(name, t_min, t_max, labels, rule, notes=()) -> GradedModule:
    """``rule(i, d, k)`` returns the packed image of Sq^i on basis k of degree d."""
    action = {}
    for d, labs in labels.items():
        for i in range(1, t_max - d + 1):
            if not labels.get(d + i):
                continue
            images = tuple(rule(i, d, k) for k in range(len(labs)))
            if any(images):
                action[(i, d)] = images
    return GradedModule(name, t_min, t_max, labels, action, tuple(notes))


def stunted_projective(N: int, t_max: int) -> GradedModule:
    """Cohomology of RP^inf_N: one class x_q per degree q >= N,
    ``Sq^i x_q = binom(q, i) x_{q+i}``."""
    if t_max < N:
        raise ValueError(f"t_max={t_max} below bottom degree {N}: empty module")
    labels = {q: (f"x{q}",) for q in range(N, t_max + 1)}
    return _build(f"stunted:{N}", N, t_max, labels, lambda i, d, k: binom_mod2(d, i))


def sphere(m: int, t_max: Optional[int] = None) -> GradedModule:
    if t_max is None:
        t_max = m
    if t_max < m:
        raise ValueError("t_max below the sphere's degree")
    return GradedModule(f"sphere:{m}", m, t_max, {m: (f"s{m}",)}, {})


def suspend(M: GradedModule, j: int, prefix: str = "") -> GradedModule:
    labels = {d + j: tuple(prefix + lab for lab in labs) for d, labs in M.labels.items()}
    action = {(i, d + j): imgs for (i, d), imgs in M.action.items()}
    return GradedModule(f"susp{j}({M.name})", M.t_min + j, M.t_max + j, labels, action, M.notes)


def direct_sum(M: GradedModule, N: GradedModule) -> GradedModule:
    """Bases concatenated degreewise, ``M`` first.  The window is the
    intersection of the two truncations so that no action is lost."""
    t_min = min(M.t_min, N.t_min)
    t_max = min(M.t_max, N.t_max)
    labels = {}
    for d in range(t_min, t_max + 1):
        labs = M.labels.get(d, ()) + N.labels.get(d, ())
        if labs:
            labels[d] = labs
    action = {}
    for d in labels:
        for i in range(1, t_max - d + 1):
            shift = M.dim(d + i)
            images = tuple(M.sq(i, d, 1 << k) for k in range(M.dim(d))) + tuple(
                N.sq(i, d, 1 << k) << shift for k in range(N.dim(d))
            )
            if any(images):
                action[(i, d)] = images
    return GradedModule(f"{M.name}+{N.name}", t_min, t_max, labels, action, M.notes + N.notes)


BOCKSTEIN_ONLY = "bockstein-only"
STUNTED_BELOW = "stunted-below"

Y_MODEL_NOTES = {
    BOCKSTEIN_ONLY: "model assumption: Sq^1 y = z_{2n+1}, Sq^i y = 0 for i >= 2",
    STUNTED_BELOW: "model assumption: Sq^i y = binom(2n-1, i) z_{2n+i} (y behaves as the bottom class of a stunted projective space starting in 2n-1)",
}


def y_module(n: int, t_max: int, model: str = STUNTED_BELOW) -> GradedModule:
    """Extension of the sphere in degree 2n by the suspended stunted
    projective module.  ``y`` sits in degree 2n, ``z_q`` in each degree
    q >= 2n+1 with ``Sq^i z_q = binom(q-1, i) z_{q+i}``.  Only
    ``Sq^1 y = z_{2n+1}`` is forced; ``model`` picks the higher squares."""
    if t_max < 2 * n + 1:
        raise ValueError("t_max must reach 2n+1")
    if model not in Y_MODEL_NOTES:
        raise ValueError(f"unknown Y model {model!r}")
    bottom = 2 * n
    labels = {bottom: (f"y{bottom}",)}
    labels.update({q: (f"z{q}",) for q in range(bottom + 1, t_max + 1)})

    def rule(i: int, d: int, k: int) -> int:
        if d > bottom:
            return binom_mod2(d - 1, i)
        if model == BOCKSTEIN_ONLY:
            return int(i == 1)
        return binom_mod2(bottom - 1, i)

    return _build(f"y-module:{n}", bottom, t_max, labels, rule, [Y_MODEL_NOTES[model]])


def y_module_with(n: int, t_max: int, higher: Iterable[int]) -> GradedModule:
    """Y-type module with ``Sq^1 y = z`` and ``Sq^i y = z_{2n+i}`` exactly for
    ``i`` in ``higher`` (all ``i >= 2``)."""
    chosen = {1} | set(higher)
    if min(chosen) < 1:
        raise ValueError("squares must be positive")
    bottom = 2 * n
    labels = {bottom: (f"y{bottom}",)}
    labels.update({q: (f"z{q}",) for q in range(bottom + 1, t_max + 1)})

    def rule(i: int, d: int, k: int) -> int:
        if d > bottom:
            return binom_mod2(d - 1, i)
        return int(i in chosen)

    note = "model assumption: Sq^i y nonzero exactly for i in " + ",".join(map(str, sorted(chosen)))
    return _build(f"y-module:{n}", bottom, t_max, labels, rule, [note])


def free_a0(t: int) -> GradedModule:
    """The exterior algebra on Sq^1, free on one generator in degree ``t``."""
    return GradedModule(
        f"free-A0:{t}", t, t + 1, {t: (f"a{t}",), t + 1: (f"b{t + 1}",)}, {(1, t): (1,)}
    )


def submodule_above(M: GradedModule, d0: int, name: Optional[str] = None) -> GradedModule:
    """The part of ``M`` in degrees ``>= d0``; always a submodule."""
    labels = {d: labs for d, labs in M.labels.items() if d >= d0}
    action = {(i, d): imgs for (i, d), imgs in M.action.items() if d >= d0}
    return GradedModule(name or f"{M.name}[>={d0}]", max(d0, M.t_min), M.t_max, labels, action, M.notes)


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """Degreewise matrices given as packed images of the source basis."""

    source: GradedModule
    target: GradedModule
    images: Mapping[int, tuple[int, ...]]

    def apply(self, d: int, v: int) -> int:
        imgs = self.images.get(d)
        if imgs is None or not v:
            return 0
        return f2.apply_columns(imgs, v)

    def matrix(self, d: int) -> list[int]:
        return [self.apply(d, 1 << k) for k in range(self.source.dim(d))]


def map_by_labels(source: GradedModule, target: GradedModule, assignment: Mapping[str, Iterable[str]]) -> ModuleMap:
    """Map sending each source label to the sum of the listed target labels;
    unlisted labels go to zero."""
    images: dict[int, list[int]] = {d: [0] * len(labs) for d, labs in source.labels.items()}
    for lab, targets in assignment.items():
        d, k = source.locate(lab)
        v = 0
        for tl in targets:
            td, tk = target.locate(tl)
            if td != d:
                raise ValueError(f"{lab} (degree {d}) sent to {tl} (degree {td})")
            v ^= 1 << tk
        images[d][k] = v
    return ModuleMap(source, target, {d: tuple(v) for d, v in images.items()})


def identity_map(M: GradedModule) -> ModuleMap:
    return ModuleMap(M, M, {d: tuple(1 << k for k in range(len(labs))) for d, labs in M.labels.items()})


def zero_map(M: GradedModule, N: GradedModule) -> ModuleMap:
    return ModuleMap(M, N, {d: (0,) * len(labs) for d, labs in M.labels.items()})


def inclusion_map(sub: GradedModule, M: GradedModule) -> ModuleMap:
    return map_by_labels(sub, M, {lab: [lab] for labs in sub.labels.values() for lab in labs})


def projection_map(M: GradedModule, quotient: GradedModule, keep: Mapping[str, str]) -> ModuleMap:
    return map_by_labels(M, quotient, {src: [dst] for src, dst in keep.items()})


@dataclass
class CheckReport:
    ok: bool
    failures: list[str]

    def first(self) -> Optional[str]:
        return self.failures[0] if self.failures else None


def _common_window(f: ModuleMap) -> tuple[int, int]:
    return max(f.source.t_min, f.target.t_min), min(f.source.t_max, f.target.t_max)


def check_module_map(f: ModuleMap) -> CheckReport:
    """Check ``f Sq^i = Sq^i f`` on every basis element whose image stays in
    the common window."""
    lo, hi = _common_window(f)
    failures = []
    for d in range(lo, hi + 1):
        for k in range(f.source.dim(d)):
            v = 1 << k
            for i in range(1, hi - d + 1):
                lhs = f.apply(d + i, f.source.sq(i, d, v))
                rhs = f.target.sq(i, d, f.apply(d, v))
                if lhs != rhs:
                    failures.append(
                        f"degree {d}: Sq^{i} not preserved on {f.source.labels[d][k]} "
                        f"(f Sq = {f.target.format_vector(d + i, lhs)}, "
                        f"Sq f = {f.target.format_vector(d + i, rhs)})"
                    )
    return CheckReport(not failures, failures)


def ses_check(f: ModuleMap, g: ModuleMap) -> CheckReport:
    """Verify ``0 -> A -f-> B -g-> C -> 0`` is a short exact sequence of modules
    on the common window."""
    failures = []
    for name, m in (("f", f), ("g", g)):
        rep = check_module_map(m)
        failures.extend(f"{name}: {msg}" for msg in rep.failures)
    if f.target is not g.source and f.target != g.source:
        failures.append("f and g are not composable")
        return CheckReport(False, failures)
    lo = max(f.source.t_min, f.target.t_min, g.target.t_min)
    hi = min(f.source.t_max, f.target.t_max, g.target.t_max)
    for d in range(lo, hi + 1):
        fm, gm = f.matrix(d), g.matrix(d)
        a, b, c = f.source.dim(d), f.target.dim(d), g.target.dim(d)
        rf, rg = f2.image_rank(fm), f2.image_rank(gm)
        if rf != a:
            failures.append(f"degree {d}: f not injective (rank {rf} < {a})")
        if rg != c:
            failures.append(f"degree {d}: g not surjective (rank {rg} < {c})")
        if any(g.apply(d, v) for v in fm):
            failures.append(f"degree {d}: g f != 0")
        elif rf != b - rg:
            failures.append(f"degree {d}: ker g != im f (dim ker g = {b - rg}, dim im f = {rf})")
    return CheckReport(not failures, failures)


def split_bottom(M: GradedModule) -> tuple[GradedModule, GradedModule, ModuleMap, ModuleMap]:
    """Split a stunted projective module into its bottom class and the rest.

    Returns ``(bottom, rest, include, project)`` where ``rest`` is the span of
    the classes above the bottom degree.  Since Sq raises degree, ``rest`` is a
    submodule and the bottom class is the quotient: ``include: rest -> M`` and
    ``project: M -> bottom`` form the short exact sequence."""
    b = M.bottom
    if b is None or M.dim(b) != 1:
        raise ValueError("expected a module with a one-dimensional bottom degree")
    bottom = sphere(b, M.t_max)
    rest = submodule_above(M, b + 1, name=f"{M.name}/bottom")
    return bottom, rest, inclusion_map(rest, M), projection_map(M, bottom, {M.labels[b][0]: bottom.labels[b][0]})


def margolis_h1(M: GradedModule) -> dict[int, int]:
    """Dimension of ker Sq^1 / im Sq^1 in each degree whose outgoing Sq^1 stays
    inside the truncation (incoming from below the module is genuinely zero)."""
    out = {}
    for d in range(M.t_min, M.t_max):
        outgoing = M.sq_matrix(1, d)
        incoming = M.sq_matrix(1, d - 1) if d - 1 >= M.t_min else []
        ker = M.dim(d) - f2.image_rank(outgoing)
        out[d] = ker - f2.image_rank(incoming)
    return out


def adem_violations(M: GradedModule, limit: int = 20) -> list[str]:
    """Pairs ``(a, b)`` with ``a < 2b`` where ``Sq^a Sq^b`` disagrees with its
    Adem expansion on some basis element (within the truncation)."""
    bad = []
    for d in M.degrees():
        for k in range(M.dim(d)):
            v = 1 << k
            for b in range(1, M.t_max - d + 1):
                for a in range(1, min(2 * b, M.t_max - d - b + 1)):
                    lhs = M.sq(a, d + b, M.sq(b, d, v))
                    rhs = 0
                    for mono in adem_reduce((a, b)):
                        rhs ^= M.act(mono, d, v)
                    if lhs != rhs:
                        bad.append(f"Sq^{a}Sq^{b} on {M.labels[d][k]}")
                        if len(bad) >= limit:
                            return bad
    return bad


# -- text format ----------------------------------------------------------------

_GEN = re.compile(r"^gen\s+(\S+)\s+(-?\d+)$")
_SQ = re.compile(r"^sq\s+(\d+)\s+(\S+)\s*=\s*(.+)$")


class ModuleFormatError(ValueError):
    pass


def parse_module(text: str, name: str = "file") -> GradedModule:
    """Parse ``gen <label> <degree>`` / ``sq <i> <label> = <label>+...`` lines.
    ``#`` starts a comment; an image of ``0`` is allowed."""
    gens: list[tuple[str, int]] = []
    rules: list[tuple[int, int, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _GEN.match(line)
        if m:
            if rules:
                raise ModuleFormatError(f"line {lineno}: gen after sq lines")
            gens.append((m.group(1), int(m.group(2))))
            continue
        m = _SQ.match(line)
        if m:
            rhs = [t.strip() for t in m.group(3).split("+")]
            rhs = [] if rhs == ["0"] else rhs
            rules.append((lineno, int(m.group(1)), m.group(2), rhs))
            continue
        raise ModuleFormatError(f"line {lineno}: cannot parse {raw!r}")
    if not gens:
        raise ModuleFormatError("no gen lines")
    by_deg: dict[int, list[str]] = {}
    for lab, d in gens:
        by_deg.setdefault(d, []).append(lab)
    labels = {d: tuple(labs) for d, labs in sorted(by_deg.items())}
    index = {lab: (d, k) for d, labs in labels.items() for k, lab in enumerate(labs)}
    if len(index) != len(gens):
        raise ModuleFormatError("duplicate gen label")
    t_min, t_max = min(labels), max(labels)
    tables: dict[tuple[int, int], list[int]] = {}
    for lineno, i, src, rhs in rules:
        if i < 1:
            raise ModuleFormatError(f"line {lineno}: only Sq^i with i >= 1")
        if src not in index:
            raise ModuleFormatError(f"line {lineno}: unknown label {src!r}")
        d, k = index[src]
        v = 0
        for lab in rhs:
            if lab not in index:
                raise ModuleFormatError(f"line {lineno}: unknown label {lab!r}")
            td, tk = index[lab]
            if td != d + i:
                raise ModuleFormatError(f"line {lineno}: Sq^{i} {src} must land in degree {d + i}, {lab} has {td}")
            v ^= 1 << tk
        tables.setdefault((i, d), [0] * len(labels[d]))[k] = v
    action = {key: tuple(v) for key, v in tables.items() if any(v)}
    return GradedModule(name, t_min, t_max, labels, action)


def dump_module(M: GradedModule) -> str:
    lines = []
    for note in M.notes:
        lines.append(f"# {note}")
    for d in M.degrees():
        for lab in M.labels[d]:
            lines.append(f"gen {lab} {d}")
    for d in M.degrees():
        for k, lab in enumerate(M.labels[d]):
            for i in range(1, M.t_max - d + 1):
                v = M.sq(i, d, 1 << k)
                if v:
                    lines.append(f"sq {i} {lab} = {M.format_vector(d + i, v)}")
    return "\n".join(lines) + "\n"

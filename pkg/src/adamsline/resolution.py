"""Minimal free resolutions over the Steenrod algebra and their Ext charts.

Stage ``s`` of a resolution is a free module ``C_s`` on generators of known
internal degree.  In internal degree ``t`` its basis is the pairs
``(generator g, admissible monomial of degree t - deg g)``, laid out
generator by generator in generator order, monomials in
``admissible_basis`` order.  Vectors are packed ints over that basis.
"""

from __future__ import annotations

from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import f2
from .modules import GradedModule, ModuleMap, check_module_map
from .steenrod import admissible_basis, dimension, product_bits


@dataclass
class Stage:
    degrees: list[int] = field(default_factory=list)  # nondecreasing internal degrees
    images: list[int] = field(default_factory=list)  # d(g) packed in stage s-1 (or the module) at deg g
    offsets: dict[int, list[int]] = field(default_factory=dict)
    dims: dict[int, int] = field(default_factory=dict)

    def layout(self, t: int) -> tuple[list[int], int]:
        """Bit offsets of the generator blocks in degree ``t`` and the total
        dimension.  Only generators of degree <= t have a block, and since
        degrees are nondecreasing those are a prefix of ``degrees``."""
        if t not in self.offsets:
            offs, pos = [], 0
            for dg in self.degrees:
                if dg > t:
                    break
                offs.append(pos)
                pos += dimension(t - dg)
            self.offsets[t] = offs
            self.dims[t] = pos
        return self.offsets[t], self.dims[t]

    def block_of(self, t: int, pos: int) -> int:
        offs, total = self.layout(t)
        if not 0 <= pos < total:
            raise IndexError(f"bit {pos} outside the free module basis in degree {t}")
        return bisect_right(offs, pos) - 1

    def invalidate_from(self, t: int) -> None:
        for tt in [tt for tt in self.offsets if tt >= t]:
            del self.offsets[tt]
            del self.dims[tt]


class Resolution:
    """A minimal resolution of ``module`` in the window ``s <= s_max``, ``t <= t_max``."""

    def __init__(self, module: GradedModule, s_max: int, t_max: int) -> None:
        if s_max < 0 or t_max < 0:
            raise ValueError("window must be non-negative")
        self.module = module
        self.s_max = s_max
        self.t_max = t_max
        self.stages: list[Stage] = []
        self._dcache: dict[tuple[int, int], list[int]] = {}

    # -- basis bookkeeping -------------------------------------------------

    def generators(self, s: int) -> list[int]:
        return self.stages[s].degrees

    def dim(self, s: int, t: int) -> int:
        return self.stages[s].layout(t)[1]

    def basis(self, s: int, t: int) -> list[tuple[int, tuple[int, ...]]]:
        st = self.stages[s]
        offs, _ = st.layout(t)
        out = []
        for g in range(len(offs)):
            out.extend((g, m) for m in admissible_basis(t - st.degrees[g]))
        return out

    # -- the A-action on elements of C_s ----------------------------------

    def act_free(self, s: int, da: int, ia: int, t: int, v: int) -> int:
        """Basis monomial ``ia`` of degree ``da`` times ``v`` in ``(C_s)_t``."""
        if da == 0:
            return v
        st = self.stages[s]
        offs, _ = st.layout(t)
        offs_out, _ = st.layout(t + da)
        out = 0
        for pos in f2.bits_of(v):
            g = st.block_of(t, pos)
            db = t - st.degrees[g]
            ib = pos - offs[g]
            out ^= product_bits(da, ia, db, ib) << offs_out[g]
        return out

    def act_target(self, s: int, da: int, ia: int, t: int, v: int) -> int:
        if s == 0:
            if t + da > self.module.t_max:
                return 0
            return self.module.act(admissible_basis(da)[ia], t, v)
        return self.act_free(s - 1, da, ia, t, v)

    def differential(self, s: int, t: int) -> list[int]:
        """Images under ``d_s`` (or the augmentation when ``s = 0``) of the
        basis of ``(C_s)_t``."""
        key = (s, t)
        if key in self._dcache:
            return self._dcache[key]
        st = self.stages[s]
        offs, _ = st.layout(t)
        cols = []
        for g in range(len(offs)):
            dg = st.degrees[g]
            da = t - dg
            for ia in range(dimension(da)):
                cols.append(self.act_target(s, da, ia, dg, st.images[g]))
        self._dcache[key] = cols
        return cols

    # -- construction --------------------------------------------------------

    def _stage_degree(self, s: int, t: int, kernel: list[int]) -> tuple[list[int], list[int]]:
        """New generator images at ``(s, t)`` and the kernel of ``d_s`` there
        (the latter computed after adding the new generators)."""
        cols = self.differential(s, t)
        ech = f2.Echelon()
        for v in cols:
            ech.add(v)
        new = []
        for v in kernel:
            residue, _ = ech.add(v)
            if residue:
                new.append(residue)
        return new, cols

    def compute(self, threads: int = 1) -> "Resolution":
        mod = self.module
        # kernel of the previous map per internal degree; for s = 0 all of M_t
        kernels = {t: [1 << k for k in range(mod.dim(t))] for t in range(self.t_max + 1)}
        for s in range(self.s_max + 1):
            st = Stage()
            self.stages.append(st)
            next_kernels: dict[int, list[int]] = {}
            for t in range(self.t_max + 1):
                new, _ = self._stage_degree(s, t, kernels.get(t, []))
                if new:
                    st.degrees.extend([t] * len(new))
                    st.images.extend(new)
                    st.invalidate_from(t)
                    self._dcache.pop((s, t), None)
            # kernels of d_s, independent per internal degree
            def kernel_at(t: int) -> tuple[int, list[int]]:
                cols = self.differential(s, t)
                return t, f2.kernel_of_columns(cols)

            if s < self.s_max:
                # prime the layout cache serially; workers only read it
                for t in range(self.t_max + 1):
                    st.layout(t)
                ts = range(self.t_max + 1)
                if threads > 1:
                    with ThreadPoolExecutor(max_workers=threads) as pool:
                        results = list(pool.map(kernel_at, ts))
                else:
                    results = [kernel_at(t) for t in ts]
                next_kernels = dict(results)
            kernels = next_kernels
        return self

    # -- checks ----------------------------------------------------------------

    def d_squared_violations(self) -> list[tuple[int, int]]:
        bad = []
        for s in range(1, len(self.stages)):
            for g, dg in enumerate(self.stages[s].degrees):
                v = self.stages[s].images[g]
                img = f2.apply_columns(self.differential(s - 1, dg), v)
                if img:
                    bad.append((s, g))
        return bad

    def unit_coefficients(self) -> list[tuple[int, int]]:
        """Generators whose differential has a unit coefficient (violates minimality)."""
        bad = []
        for s in range(1, len(self.stages)):
            prev = self.stages[s - 1]
            for g, dg in enumerate(self.stages[s].degrees):
                offs, _ = prev.layout(dg)
                v = self.stages[s].images[g]
                for h in range(len(offs)):
                    if prev.degrees[h] == dg and (v >> offs[h]) & 1:
                        bad.append((s, g))
        return bad

    def exactness_defects(self) -> list[tuple[int, int]]:
        """Bidegrees where ker d_{s-1} != im d_s (augmentation surjectivity for s=0)."""
        bad = []
        for t in range(self.t_max + 1):
            if f2.image_rank(self.differential(0, t)) != self.module.dim(t):
                bad.append((0, t))
        for s in range(1, len(self.stages)):
            for t in range(self.t_max + 1):
                prev = self.differential(s - 1, t)
                ker = len(prev) - f2.image_rank(prev)
                if f2.image_rank(self.differential(s, t)) != ker:
                    bad.append((s, t))
        return bad


def minimal_resolution(M: GradedModule, s_max: int, t_max: int, threads: int = 1) -> Resolution:
    """Minimal resolution in the window.  Module content above ``M.t_max`` is
    absent, so callers keep ``t_max <= M.t_max`` for exact Ext."""
    return Resolution(M, s_max, t_max).compute(threads=threads)


# -- Ext charts --------------------------------------------------------------


@dataclass(frozen=True)
class ExtChart:
    s_max: int
    t_max: int
    dims: dict[tuple[int, int], int]
    h0: dict[tuple[int, int], tuple[tuple[int, ...], ...]]  # (s,t) -> rows indexed by targets at (s+1,t+1)
    name: str = ""
    notes: tuple[str, ...] = ()

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def nonzero(self) -> list[tuple[int, int, int]]:
        return sorted(((s, t, d) for (s, t), d in self.dims.items() if d), key=lambda x: (x[1] - x[0], x[0]))

    def h0_rank(self, s: int, t: int) -> int:
        rows = self.h0.get((s, t), ())
        return f2.image_rank([f2.F2Vector.from_list(r).bits for r in rows]) if rows else 0

    def to_tsv(self) -> str:
        lines = ["s\tt\tdim"]
        lines += [f"{s}\t{t}\t{d}" for s, t, d in self.nonzero()]
        return "\n".join(lines) + "\n"


def ext_chart(R: Resolution) -> ExtChart:
    dims: dict[tuple[int, int], int] = {}
    index: dict[tuple[int, int], list[int]] = {}
    for s, st in enumerate(R.stages):
        for g, t in enumerate(st.degrees):
            dims[(s, t)] = dims.get((s, t), 0) + 1
            index.setdefault((s, t), []).append(g)
    h0: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
    for (s, t), gens in index.items():
        targets = index.get((s + 1, t + 1))
        if not targets:
            continue
        prev_offs, _ = R.stages[s].layout(t + 1)
        rows = []
        for g1 in targets:
            v = R.stages[s + 1].images[g1]
            # Sq^1 is the only monomial of degree 1
            rows.append(tuple((v >> prev_offs[g]) & 1 for g in gens))
        h0[(s, t)] = tuple(rows)
    return ExtChart(R.s_max, R.t_max, dims, h0, R.module.name, R.module.notes)


def chart_from_tsv(text: str, s_max: int, t_max: int) -> ExtChart:
    dims = {}
    for line in text.splitlines()[1:]:
        if line.strip():
            s, t, d = map(int, line.split("\t"))
            dims[(s, t)] = d
    return ExtChart(s_max, t_max, dims, {})


# -- induced maps --------------------------------------------------------------


class LiftError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtMap:
    """Matrices of ``Ext(target) -> Ext(source)`` for a module map
    ``source -> target``.  ``matrices[(s, t)][p][q]`` is the coefficient of
    the dual of target generator ``q`` in the image, read at source generator ``p``."""

    source_name: str
    target_name: str
    matrices: dict[tuple[int, int], tuple[tuple[int, ...], ...]]
    direction: str = "Ext(target) -> Ext(source)"

    def rank(self, s: int, t: int) -> int:
        rows = self.matrices.get((s, t), ())
        return f2.image_rank([f2.F2Vector.from_list(r).bits for r in rows]) if rows else 0


def _apply_chain(R: Resolution, Q: Resolution, F: list[list[int]], s: int, t: int, v: int) -> int:
    """Apply the A-linear extension of ``F[s]`` (images of generators) to ``v`` in ``(P_s)_t``."""
    st = R.stages[s]
    offs, _ = st.layout(t)
    out = 0
    for pos in f2.bits_of(v):
        g = st.block_of(t, pos)
        da = t - st.degrees[g]
        ia = pos - offs[g]
        out ^= Q.act_free(s, da, ia, st.degrees[g], F[s][g])
    return out


def induced_ext_map(f: ModuleMap, R_src: Resolution, R_tgt: Resolution) -> ExtMap:
    """Lift ``f`` to a chain map ``P -> Q`` of resolutions and read off the
    induced map on Ext, which runs from the target's Ext to the source's."""
    rep = check_module_map(f)
    if not rep.ok:
        raise LiftError(f"map is not A-linear: {rep.first()}")
    s_max = min(R_src.s_max, R_tgt.s_max)
    t_max = min(R_src.t_max, R_tgt.t_max)
    F: list[list[int]] = []
    for s in range(s_max + 1):
        row = []
        P = R_src.stages[s]
        for g, t in enumerate(P.degrees):
            if t > t_max:
                row.append(0)
                continue
            if s == 0:
                want = f.apply(t, P.images[g])
            else:
                want = _apply_chain(R_src, R_tgt, F, s - 1, t, P.images[g])
            x = f2.solve_columns(R_tgt.differential(s, t), want)
            if x is None:
                raise LiftError(f"no lift at s={s}, t={t}")
            row.append(x)
        F.append(row)
    matrices: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
    for s in range(s_max + 1):
        P, Qs = R_src.stages[s], R_tgt.stages[s]
        for t in range(t_max + 1):
            ps = [g for g, d in enumerate(P.degrees) if d == t]
            qs = [h for h, d in enumerate(Qs.degrees) if d == t]
            if not ps or not qs:
                continue
            offs, _ = Qs.layout(t)
            matrices[(s, t)] = tuple(tuple((F[s][p] >> offs[q]) & 1 for q in qs) for p in ps)
    return ExtMap(R_src.module.name, R_tgt.module.name, matrices)


# -- subadditivity ---------------------------------------------------------------


@dataclass
class SubadditivityReport:
    violations: list[tuple[int, int, int, int, int]]  # s, t, dim A, dim B, dim C
    checked: int
    equalities: int

    @property
    def ok(self) -> bool:
        return not self.violations


def safe_window(chart: ExtChart) -> tuple[int, int]:
    return chart.s_max - 1, chart.t_max - 1


def subadditivity_check(a: ExtChart, b: ExtChart, c: ExtChart) -> SubadditivityReport:
    """``dim Ext(B) <= dim Ext(A) + dim Ext(C)`` for a short exact sequence
    ``0 -> A -> B -> C -> 0``, on the common safe window."""
    s_hi = min(safe_window(x)[0] for x in (a, b, c))
    t_hi = min(safe_window(x)[1] for x in (a, b, c))
    bad, checked, eq = [], 0, 0
    for s in range(s_hi + 1):
        for t in range(t_hi + 1):
            da, db, dc = a.dim(s, t), b.dim(s, t), c.dim(s, t)
            checked += 1
            if db > da + dc:
                bad.append((s, t, da, db, dc))
            elif db == da + dc:
                eq += 1
    return SubadditivityReport(bad, checked, eq)

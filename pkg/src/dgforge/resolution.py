"""Truncated minimal semifree resolutions with certified windows.

A resolution is a list of generators; each generator carries a degree,
an idempotent e with d(e) = 0 (so its stage summand is e·A, a free
summand when e = 1), differential coefficients into earlier generators
and an augmentation value.  Stages kill the cohomology of the cone of
the augmentation; a Gaussian elimination pass then removes generator
pairs linked by an invertible coefficient, after which all coefficients
lie in the radical.

Truncation honesty: the final cone cohomology support S bounds the
degrees of every generator any deeper truncation could add, via the
interval S + n*[h_min - 1, h_max - 1] (n >= 0) where [h_min, h_max]
hulls the support of H(A).  Degrees that no future generator can touch
are certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complexes import CohomologyTable, Complex
from .dga import FdDga, basis_vec, vec_add, vec_neg, vec_scale, vec_zero
from .linalg import Matrix, Subspace, solve_vec
from .modules import DgBimodule, DgModule, ModuleMap, submodule_module
from .radical import dg_ideals, underlying_radical, frame_idempotents


class ResolutionError(ValueError):
    pass


INF = float("inf")

# resolutions with fast Betti growth explode exponentially; refuse to
# materialize monsters rather than thrash
SIZE_GUARD = 50000


@dataclass
class Generator:
    degree: int
    stage: int
    idem: list                      # idempotent e, global algebra vector
    span: Subspace                  # e·A as a subspace of A
    dcoeffs: dict                   # earlier gen index -> coefficient in e_u·A·e_t
    aug: list                       # value in the target module

    @property
    def rank(self) -> int:
        return self.span.dim


def _span_of_idem(a: FdDga, e) -> Subspace:
    vecs = [a.mul_vec(e, basis_vec(a.field, a.dim, j)) for j in range(a.dim)]
    return Subspace.from_vectors(a.field, a.dim, vecs)


def _top_dims(a: FdDga, e, jm_sub: Subspace):
    """Graded dims of e·(A/J-): the semisimple top a generator covers."""
    span = _span_of_idem(a, e)
    ej = Subspace.from_vectors(
        a.field, a.dim,
        [a.mul_vec(e, list(r)) for r in jm_sub.basis.data])
    by_deg = {}
    for row in span.basis.data:
        d = a.vec_degree(list(row))
        by_deg[d] = by_deg.get(d, 0) + 1
    for row in ej.basis.data:
        d = a.vec_degree(list(row))
        by_deg[d] = by_deg.get(d, 0) - 1
    return {d: n for d, n in by_deg.items() if n}


class TruncatedResolution:
    """Staged semifree resolution of a strictly finite dimensional module."""

    def __init__(self, target: DgModule):
        self.target = target
        self.algebra = target.algebra
        self.gens: list[Generator] = []
        self.complete = False
        self.minimal = False
        self.stages_run = 0
        self.defect_support: list[int] = []   # degrees of H(cone) at truncation
        self.next_generator_degrees: list[int] = []
        self._module = None
        self._offsets = None

    # -- the underlying semifree module -----------------------------------

    def _invalidate(self):
        self._module = None
        self._offsets = None

    def offsets(self):
        if self._offsets is None:
            off = []
            c = 0
            for g in self.gens:
                off.append(c)
                c += g.rank
            self._offsets = (off, c)
        return self._offsets

    def module(self) -> DgModule:
        """Materialize the resolution as a DgModule."""
        if self._module is not None:
            return self._module
        a = self.algebra
        f = a.field
        off, total = self.offsets()
        names, degrees = [], []
        for t, g in enumerate(self.gens):
            for b, row in enumerate(g.span.basis.data):
                names.append(f"r{t}.{b}")
                degrees.append(g.degree + a.vec_degree(list(row)))
        action = []
        diff = []
        for t, g in enumerate(self.gens):
            sgn = f.one() if g.degree % 2 == 0 else -f.one()
            for row in g.span.basis.data:
                x = list(row)
                arow = []
                for j in range(a.dim):
                    img = a.mul_vec(x, basis_vec(f, a.dim, j))
                    v = vec_zero(f, total)
                    coords = g.span.coords_of(img)
                    for b, c in enumerate(coords):
                        if c:
                            v[off[t] + b] = c
                    arow.append(v)
                action.append(arow)
                dv = vec_zero(f, total)
                for u, coeff in g.dcoeffs.items():
                    img = a.mul_vec(coeff, x)
                    coords = self.gens[u].span.coords_of(img)
                    if coords is None:
                        raise ResolutionError("coefficient leaves its generator span")
                    for b, c in enumerate(coords):
                        if c:
                            dv[off[u] + b] = dv[off[u] + b] + c
                dx = a.diff_vec(x)
                coords = g.span.coords_of(dx)
                if coords is None:
                    raise ResolutionError("generator span is not d-closed")
                for b, c in enumerate(coords):
                    if c:
                        dv[off[t] + b] = dv[off[t] + b] + sgn * c
                diff.append(dv)
        self._module = DgModule(a, names, degrees, action, diff)
        return self._module

    def augmentation(self) -> ModuleMap:
        """The chain map from the resolution onto the target."""
        m = self.module()
        tgt = self.target
        f = m.field
        cols = []
        for t, g in enumerate(self.gens):
            for row in g.span.basis.data:
                cols.append(tgt.act_vec(g.aug, list(row)))
        mat = Matrix(f, tgt.dim, m.dim,
                     [[cols[c][r] for c in range(m.dim)] for r in range(tgt.dim)])
        return ModuleMap(m, tgt, 0, mat)

    # -- cone bookkeeping ---------------------------------------------------

    def _cone(self):
        """(Complex, split) for cone(augmentation); split maps degrees to
        (F-index list at degree+1, M-index list at degree)."""
        F = self.module()
        M = self.target
        f = M.field
        fdeg = {}
        for i, d in enumerate(F.degrees):
            fdeg.setdefault(d, []).append(i)
        mdeg = {}
        for i, d in enumerate(M.degrees):
            mdeg.setdefault(d, []).append(i)
        degs = sorted(set(d - 1 for d in fdeg) | set(mdeg))
        split = {}
        spaces = {}
        for d in degs:
            fi = fdeg.get(d + 1, [])
            mi = mdeg.get(d, [])
            split[d] = (fi, mi)
            if fi or mi:
                spaces[d] = len(fi) + len(mi)
        aug = self.augmentation()
        diffs = {}
        for d in spaces:
            fi, mi = split[d]
            fi2, mi2 = split.get(d + 1, ([], []))
            rows = len(fi2) + len(mi2)
            cols = len(fi) + len(mi)
            data = [[f.zero()] * cols for _ in range(rows)]
            for c, i in enumerate(fi):
                dF = F.diff[i]
                for r, i2 in enumerate(fi2):
                    if dF[i2]:
                        data[r][c] = -dF[i2]
                ev = aug.matrix.col(i)
                for r, i2 in enumerate(mi2):
                    if ev[i2]:
                        data[len(fi2) + r][c] = ev[i2]
            for c, i in enumerate(mi):
                dM = M.diff[i]
                for r, i2 in enumerate(mi2):
                    if dM[i2]:
                        data[len(fi2) + r][len(fi) + c] = dM[i2]
            diffs[d] = Matrix(f, rows, cols, data)
        return Complex(f, spaces, diffs), split

    def cone_cohomology(self) -> CohomologyTable:
        return self._cone()[0].cohomology()

    # -- certification --------------------------------------------------------

    def _future_interval(self):
        """Interval hull of degrees where deeper truncations may add generators."""
        if self.complete or not self.next_generator_degrees:
            return None
        hs = self.algebra.h_support()
        if hs is None:
            return None
        lo = min(self.next_generator_degrees)
        hi = max(self.next_generator_degrees)
        step_lo, step_hi = hs[0] - 1, hs[1] - 1
        glo = -INF if step_lo < 0 else lo
        ghi = INF if step_hi > 0 else hi
        return (glo, ghi)

    def tensor_certified(self, n_amp):
        """Degree certification for F ⊗ N given N's amplitude."""
        fut = self._future_interval()
        if fut is None:
            return lambda j: True
        ulo = fut[0] + n_amp[0]
        uhi = fut[1] + n_amp[1]
        return lambda j: not (ulo <= j <= uhi + 1)

    def hom_certified(self, n_amp):
        """Degree certification for Hom(F, N) given N's amplitude.

        Unlike the tensor side, deeper stages also change the
        differential out of existing slots (maps are composed with the
        new generators' differentials), so degree j additionally needs
        j+1 untouched.
        """
        fut = self._future_interval()
        if fut is None:
            return lambda j: True
        ulo = n_amp[0] - fut[1]
        uhi = n_amp[1] - fut[0]
        return lambda j: not (ulo - 1 <= j <= uhi + 1)

    def generator_summary(self):
        out = []
        for g in self.gens:
            out.append({"stage": g.stage, "degree": g.degree, "rank": g.rank})
        return out


# -- building: the general cone path ------------------------------------------


def _class_killed(rep, killed: Subspace) -> bool:
    return killed.contains(rep)


def _act_on_cone(F: DgModule, M: DgModule, split, deg, rep, e):
    """Right action of an algebra element on a cone vector, degreewise."""
    fi, mi = split[deg]
    fvec = vec_zero(F.field, F.dim)
    for c, i in enumerate(fi):
        if rep[c]:
            fvec[i] = rep[c]
    mvec = vec_zero(M.field, M.dim)
    for c, i in enumerate(mi):
        if rep[len(fi) + c]:
            mvec[i] = rep[len(fi) + c]
    fvec = F.act_vec(fvec, e)
    mvec = M.act_vec(mvec, e)
    out = [F.field.zero()] * (len(fi) + len(mi))
    fset = set(fi)
    for c, i in enumerate(fi):
        out[c] = fvec[i]
    for c, i in enumerate(mi):
        out[len(fi) + c] = mvec[i]
    # a degree 0 idempotent cannot leave the degree piece
    for i, x in enumerate(fvec):
        if x and i not in fset:
            raise ResolutionError("cone action left its degree")
    return out, fvec, mvec


def _resolve_cone_path(res: TruncatedResolution, max_stages: int):
    a = res.algebra
    f = a.field
    M = res.target
    frame = frame_idempotents(a)
    for stage in range(max_stages):
        res.stages_run = stage + 1
        if res.offsets()[1] > SIZE_GUARD:
            raise ResolutionError(
                f"resolution exceeds {SIZE_GUARD} basis elements; lower the stage budget")
        cx, split = res._cone()
        table = cx.cohomology()
        if table.is_zero():
            res.complete = True
            res.defect_support = []
            res.next_generator_degrees = []
            return
        F = res.module()
        added_any = False
        sweep_gens = []

        def new_boundaries(gen, deg):
            # boundaries a new generator g with d(g) = -f0, eps(g) = m0
            # contributes at this old-cone degree: (f0·x, m0·x) for
            # cycles x of e·A at the matching degree
            fi, mi = split[deg]
            zdim = len(fi) + len(mi)
            vecs = []
            want = deg - gen.degree
            f0 = gen._f0 + [f.zero()] * (F.dim - len(gen._f0))
            for row in gen.span.basis.data:
                x = list(row)
                if a.vec_degree(x) != want or any(a.diff_vec(x)):
                    continue
                fv = F.act_vec(f0, x)
                mv = M.act_vec(gen.aug, x)
                out = [f.zero()] * zdim
                for c, i in enumerate(fi):
                    out[c] = fv[i]
                for c, i in enumerate(mi):
                    out[len(fi) + c] = mv[i]
                if any(out):
                    vecs.append(out)
            return vecs

        for deg in table.nonzero_degrees():
            reps = [list(r) for r in cx.cohomology_basis(deg)]
            killed = cx.boundary_space(deg)
            zdim = killed.ambient_dim
            for g in sweep_gens:
                vecs = new_boundaries(g, deg)
                if vecs:
                    killed = killed.sum(Subspace.from_vectors(f, zdim, vecs))
            for rep in reps:
                # one generator per frame piece, so that every stage
                # summand is e·A for a frame idempotent e and Gaussian
                # elimination can always cancel unit coefficients
                for e in frame:
                    acted, fvec, mvec = _act_on_cone(F, M, split, deg, rep, e)
                    if killed.contains(acted):
                        continue
                    span = _span_of_idem(a, e)
                    off, _ = res.offsets()
                    dcoeffs = {}
                    for t, g in enumerate(res.gens):
                        block = vec_zero(f, a.dim)
                        coords = [(-fvec[off[t] + b]) for b in range(g.rank)]
                        if any(coords):
                            for b, c in enumerate(coords):
                                if c:
                                    block = vec_add(block,
                                                    vec_scale(c, list(g.span.basis.data[b])))
                            dcoeffs[t] = block
                    gen = Generator(degree=deg, stage=stage, idem=e, span=span,
                                    dcoeffs=dcoeffs, aug=mvec)
                    gen._f0 = list(fvec)
                    res.gens.append(gen)
                    res._invalidate()
                    F = res.module()
                    sweep_gens.append(gen)
                    vecs = new_boundaries(gen, deg)
                    if vecs:
                        killed = killed.sum(Subspace.from_vectors(f, zdim, vecs))
                    added_any = True
        if not added_any:
            # every class was already covered; nothing further can change
            break
    cx, _ = res._cone()
    table = cx.cohomology()
    res.defect_support = table.nonzero_degrees()
    res.complete = table.is_zero()
    res.next_generator_degrees = list(res.defect_support)


# -- building: the classical path (all differentials zero) ---------------------


def _is_classical(m: DgModule) -> bool:
    a = m.algebra
    return all(not any(v) for v in a.diff) and all(not any(v) for v in m.diff)


def _cover_module(a: FdDga, m: DgModule, jm_sub: Subspace, stage: int):
    """Projective cover data of a plain module: list of (degree, idem, value)."""
    f = a.field
    frame = frame_idempotents(a)
    rad = Subspace.from_vectors(
        f, m.dim,
        [m.act_vec(basis_vec(f, m.dim, i), list(r))
         for i in range(m.dim) for r in jm_sub.basis.data])
    covered = rad
    gens = []
    for i in range(m.dim):
        v = basis_vec(f, m.dim, i)
        if covered.contains(v):
            continue
        pieces = []
        for e in frame:
            if not covered.contains(m.act_vec(v, e)):
                pieces.append(e)
        if not pieces:
            continue
        e_c = vec_zero(f, a.dim)
        for e in pieces:
            e_c = vec_add(e_c, e)
        val = m.act_vec(v, e_c)
        gens.append((m.degrees[i], e_c, val))
        img = [m.act_vec(val, basis_vec(f, a.dim, j)) for j in range(a.dim)]
        covered = covered.sum(Subspace.from_vectors(f, m.dim, img))
    if not all(covered.contains(basis_vec(f, m.dim, i)) for i in range(m.dim)):
        raise ResolutionError("cover is not surjective")
    return gens


def _kernel_of_cover(a: FdDga, m: DgModule, gens):
    """The syzygy module of a cover, with its inclusion data."""
    f = a.field
    spans = [_span_of_idem(a, e) for _, e, _ in gens]
    cols = []
    for (gd, e, val), span in zip(gens, spans):
        for row in span.basis.data:
            cols.append(m.act_vec(val, list(row)))
    total = sum(s.dim for s in spans)
    mat = Matrix(f, m.dim, total,
                 [[cols[c][r] for c in range(total)] for r in range(m.dim)])
    from .linalg import kernel_basis
    ker = kernel_basis(mat)
    return spans, Subspace.from_vectors(f, total, ker), mat


def _cover_as_module(a: FdDga, gens, spans) -> DgModule:
    """The cover ⊕ e·A placed at the degrees of the covered classes."""
    f = a.field
    names, degrees, action, diff = [], [], [], []
    off = []
    c = 0
    for (gd, e, val), span in zip(gens, spans):
        off.append(c)
        c += span.dim
    total = c
    for t, ((gd, e, val), span) in enumerate(zip(gens, spans)):
        base = gd  # generator sits at the degree of its top class
        for row in span.basis.data:
            names.append(f"c{t}.{len(names)}")
            degrees.append(base + a.vec_degree(list(row)))
            arow = []
            for j in range(a.dim):
                img = a.mul_vec(list(row), basis_vec(f, a.dim, j))
                v = vec_zero(f, total)
                for b, cc in enumerate(span.coords_of(img)):
                    if cc:
                        v[off[t] + b] = cc
                arow.append(v)
            action.append(arow)
            diff.append(vec_zero(f, total))
    return DgModule(a, names, degrees, action, diff)


def classical_syzygies(m: DgModule, max_stages: int):
    """[(cover gens, syzygy module)] for a module over a zero-differential
    algebra; syzygy bases are canonical so table equality is meaningful."""
    a = m.algebra
    jm, _ = dg_ideals(a)
    out = []
    current = m
    for _ in range(max_stages):
        gens = _cover_module(a, current, jm.subspace, 0)
        spans, ker, _ = _kernel_of_cover(a, current, gens)
        cover = _cover_as_module(a, gens, spans)
        if ker.dim == 0:
            out.append((gens, None))
            return out, True
        syz, _ = submodule_module(cover, ker, name_prefix="w")
        out.append((gens, syz))
        current = syz
    return out, False


def detect_periodicity(m: DgModule, max_stages: int):
    """(s, t, shift, tower) when syzygy s and t have identical tables up
    to a uniform degree shift; None otherwise.  Zero-differential only."""
    if not _is_classical(m):
        return None
    tower, finished = classical_syzygies(m, max_stages)
    if finished:
        return None
    mods = [m] + [syz for _, syz in tower if syz is not None]
    for t in range(1, len(mods)):
        for s in range(t):
            a, b = mods[s], mods[t]
            if a.dim != b.dim or a.dim == 0:
                continue
            shifts = {db - da for da, db in zip(a.degrees, b.degrees)}
            if len(shifts) != 1:
                continue
            delta = shifts.pop()
            if b.degrees == [d + delta for d in a.degrees] and \
                    b.action == a.action and b.diff == a.diff:
                return (s, t, delta, tower)
    return None


def _resolve_classical(res: TruncatedResolution, max_stages: int):
    a = res.algebra
    f = a.field
    jm, _ = dg_ideals(a)
    current = res.target
    inclusion_rows = None  # syzygy basis vectors inside the previous cover
    prev_gen_start = 0
    for stage in range(max_stages):
        res.stages_run = stage + 1
        if res.offsets()[1] > SIZE_GUARD:
            raise ResolutionError(
                f"resolution exceeds {SIZE_GUARD} basis elements; lower the stage budget")
        gens = _cover_module(a, current, jm.subspace, stage)
        spans, ker, _ = _kernel_of_cover(a, current, gens)
        start = len(res.gens)
        for (gd, e, val), span in zip(gens, spans):
            if stage == 0:
                dcoeffs = {}
                aug = val
            else:
                # val lives in the syzygy module: decode into cover coords
                dcoeffs = {}
                vec = vec_zero(f, len(inclusion_rows[0]))
                for i, c in enumerate(val):
                    if c:
                        vec = vec_add(vec, vec_scale(c, inclusion_rows[i]))
                off = 0
                for u in range(prev_gen_start, start):
                    g = res.gens[u]
                    block = vec_zero(f, a.dim)
                    got = False
                    for b in range(g.rank):
                        c = vec[off + b]
                        if c:
                            block = vec_add(block, vec_scale(c, list(g.span.basis.data[b])))
                            got = True
                    if got:
                        dcoeffs[u] = block
                    off += g.rank
                aug = vec_zero(f, res.target.dim)
            res.gens.append(Generator(degree=gd - stage, stage=stage, idem=e,
                                      span=span, dcoeffs=dcoeffs, aug=aug))
        res._invalidate()
        if ker.dim == 0:
            res.complete = True
            res.defect_support = []
            res.next_generator_degrees = []
            return
        syz, _ = submodule_module(_cover_as_module(a, gens, spans), ker, name_prefix="w")
        inclusion_rows = [list(r) for r in ker.basis.data]
        prev_gen_start = start
        current = syz
    # truncated: the next generators would cover top(current) one stage down
    jm_sub = jm.subspace
    rad = Subspace.from_vectors(
        f, current.dim,
        [current.act_vec(basis_vec(f, current.dim, i), list(r))
         for i in range(current.dim) for r in jm_sub.basis.data])
    degs = sorted({current.degrees[i] - res.stages_run
                   for i in rad.free_coordinates()})
    res.defect_support = degs
    res.next_generator_degrees = degs
    res.complete = False


# -- minimization ---------------------------------------------------------------


def _try_partial_inverse(a: FdDga, c, e_t, e_u):
    """y with c·y = e_u and y·c = e_t, or None."""
    f = a.field
    n = a.dim
    lc = a.left_mult_matrix(c)
    rc = a.right_mult_matrix(c)
    rows = []
    rhs = []
    for r in range(n):
        rows.append(list(lc.data[r]))
        rhs.append(e_u[r])
    for r in range(n):
        rows.append(list(rc.data[r]))
        rhs.append(e_t[r])
    sol = solve_vec(Matrix(f, len(rows), n, rows), rhs)
    if sol is None:
        return None
    y = a.mul_vec(a.mul_vec(e_t, sol), e_u)
    if a.mul_vec(c, y) != e_u or a.mul_vec(y, c) != e_t:
        return None
    return y


def _cancellation_safe(res: TruncatedResolution, u: int, t: int) -> bool:
    """Eliminating (u, t) must keep the generator dependency digraph
    acyclic, so an exhaustive filtration with e·A quotients survives.

    Conservative: corrections are counted as edges whether or not the
    corrected coefficient happens to vanish.
    """
    kept = [i for i in range(len(res.gens)) if i not in (u, t)]
    edges = {i: set() for i in kept}
    for s in kept:
        edges[s] = {v for v in res.gens[s].dcoeffs if v in edges}
    vs = [v for v in res.gens[t].dcoeffs if v not in (u, t)]
    for s in kept:
        if u in res.gens[s].dcoeffs:
            edges[s].update(vs)
    state = {}

    def cyclic(node):
        state[node] = 1
        for nxt in edges[node]:
            mark = state.get(nxt)
            if mark == 1:
                return True
            if mark is None and cyclic(nxt):
                return True
        state[node] = 2
        return False

    return not any(state.get(n) is None and cyclic(n) for n in kept)


def minimize_resolution(res: TruncatedResolution):
    """Cancel generator pairs whose connecting coefficient is invertible."""
    a = res.algebra
    j = underlying_radical(a)
    changed = True
    while changed:
        changed = False
        for t in range(len(res.gens)):
            g_t = res.gens[t]
            for u, c in sorted(g_t.dcoeffs.items()):
                if j.subspace.contains(c):
                    continue
                if not _cancellation_safe(res, u, t):
                    continue
                y = _try_partial_inverse(a, c, g_t.idem, res.gens[u].idem)
                if y is None:
                    continue
                _eliminate_pair(res, u, t, y)
                changed = True
                break
            if changed:
                break
    res.minimal = all(
        j.subspace.contains(c) for g in res.gens for c in g.dcoeffs.values())
    res._invalidate()


def _eliminate_pair(res: TruncatedResolution, u: int, t: int, y):
    a = res.algebra
    gens = res.gens
    g_t = gens[t]
    for s, g_s in enumerate(gens):
        if s in (u, t):
            continue
        a_us = g_s.dcoeffs.get(u)
        if a_us is None:
            continue
        corr = a.mul_vec(y, a_us)
        for v, a_vt in g_t.dcoeffs.items():
            if v in (u, t):
                continue
            delta = a.mul_vec(a_vt, corr)
            if any(delta):
                cur = g_s.dcoeffs.get(v, vec_zero(a.field, a.dim))
                new = vec_add(cur, vec_neg(delta))
                if any(new):
                    g_s.dcoeffs[v] = new
                else:
                    g_s.dcoeffs.pop(v, None)
        if any(g_t.aug):
            g_s.aug = vec_add(g_s.aug, vec_neg(res.target.act_vec(g_t.aug, corr)))
    keep = [i for i in range(len(gens)) if i not in (u, t)]
    remap = {old: new for new, old in enumerate(keep)}
    new_gens = []
    for old in keep:
        g = gens[old]
        g.dcoeffs = {remap[v]: c for v, c in g.dcoeffs.items()
                     if v in remap and any(c)}
        new_gens.append(g)
    res.gens = new_gens
    res._invalidate()


# -- entry point ------------------------------------------------------------------


def resolve_minimal(m: DgModule, max_stages: int,
                    _force_cone: bool = False) -> TruncatedResolution:
    """Minimal staged resolution of a strictly fd module, truncated."""
    if max_stages <= 0:
        raise ResolutionError("stage budget must be positive")
    key = ("resolution", max_stages, _force_cone)
    if key in m._cache:
        return m._cache[key]
    dg_ideals(m.algebra)  # field and radical preconditions surface here
    res = TruncatedResolution(m)
    if _is_classical(m) and not _force_cone:
        _resolve_classical(res, max_stages)
    else:
        _resolve_cone_path(res, max_stages)
        minimize_resolution(res)
        cx, _ = res._cone()
        table = cx.cohomology()
        res.defect_support = table.nonzero_degrees()
        res.next_generator_degrees = list(res.defect_support)
        res.complete = table.is_zero()
    if not res.minimal:
        j = underlying_radical(m.algebra)
        res.minimal = all(
            j.subspace.contains(c) for g in res.gens for c in g.dcoeffs.values())
    m._cache[key] = res
    return res


@dataclass
class BettiTable:
    entries: dict = dc_field(default_factory=dict)   # (stage, degree) -> count
    total_per_degree: dict = dc_field(default_factory=dict)
    complete: bool = False

    def stage_totals(self):
        out = {}
        for (s, _), n in self.entries.items():
            out[s] = out.get(s, 0) + n
        return [out.get(s, 0) for s in range(max(out) + 1)] if out else []

    def to_json(self):
        return {
            "entries": {f"{s},{d}": n for (s, d), n in sorted(self.entries.items())},
            "total_per_degree": {str(d): n for d, n in sorted(self.total_per_degree.items())},
            "complete": self.complete,
        }


def betti_table(res: TruncatedResolution, cross_check: bool = True) -> BettiTable:
    """Semisimple top counts per (stage, degree) of a minimal resolution.

    When A/J- has zero differential and a null radical action, the table
    is cross-checked against F ⊗ A/J-: the induced differential must
    vanish, making the counts the certified dims of H(M ⊗^L A/J-).
    """
    if not res.minimal and res.gens:
        raise ResolutionError("betti table requires a minimal resolution")
    a = res.algebra
    jm, _ = dg_ideals(a)
    out = BettiTable(complete=res.complete)
    for g in res.gens:
        for d, n in _top_dims(a, g.idem, jm.subspace).items():
            key = (g.stage, g.degree + d)
            out.entries[key] = out.entries.get(key, 0) + n
            out.total_per_degree[g.degree + d] = \
                out.total_per_degree.get(g.degree + d, 0) + n
    if cross_check and res.gens and not a.is_zero_ring:
        from .dga import opposite_dga
        from .modules import quotient_module, regular_module
        n0, _ = quotient_module(regular_module(opposite_dga(a)), jm.subspace)
        null = all(not any(v) for v in n0.diff) and all(
            n0.action_matrix(list(r)).is_zero()
            for r in underlying_radical(a).subspace.basis.data)
        if null:
            cx = res_tensor_complex(res, n0)
            if not all(m.is_zero() for m in cx.diffs.values()):
                raise ResolutionError(
                    "induced differential on F ⊗ A/J- is nonzero for a "
                    "resolution flagged minimal")
            dims = {d: cx.dim(d) for d in cx.degrees()}
            if dims != out.total_per_degree:
                raise ResolutionError("betti totals disagree with F ⊗ A/J-")
    return out


# -- fast derived complexes off a resolution ---------------------------------------


def _left_act(n: DgModule, avec, nvec, adeg_table):
    """a·n = (-1)^{|a||n|} n·a^op for a module over the opposite algebra."""
    f = n.field
    out = vec_zero(f, n.dim)
    for j, ac in enumerate(avec):
        if not ac:
            continue
        for i, nc in enumerate(nvec):
            if not nc:
                continue
            c = ac * nc
            if (adeg_table[j] * n.degrees[i]) % 2:
                c = -c
            row = n.action[i][j]
            for k, x in enumerate(row):
                if x:
                    out[k] = out[k] + c * x
    return out


def res_tensor_complex(res: TruncatedResolution, n: DgModule):
    """F ⊗_A N as a complex, for N a right module over the opposite algebra.

    Uses e·A ⊗_A N = e·N summandwise, so no coequalizer is needed.
    """
    a = res.algebra
    f = a.field
    adeg = a.degrees
    slots = []   # (gen index, Subspace basis of e·N)
    for tgen, g in enumerate(res.gens):
        vecs = [_left_act(n, g.idem, basis_vec(f, n.dim, i), adeg)
                for i in range(n.dim)]
        sub = Subspace.from_vectors(f, n.dim, vecs)
        slots.append(sub)
    entries = []  # (gen, row index, degree)
    for tgen, sub in enumerate(slots):
        g = res.gens[tgen]
        for b, row in enumerate(sub.basis.data):
            degs = {n.degrees[i] for i, c in enumerate(row) if c}
            entries.append((tgen, b, g.degree + degs.pop()))
    by_deg = {}
    for c, (tgen, b, d) in enumerate(entries):
        by_deg.setdefault(d, []).append(c)
    pos = {(entries[c][0], entries[c][1]): c for c in range(len(entries))}

    def diff_of(c):
        tgen, b, d = entries[c]
        g = res.gens[tgen]
        w = list(slots[tgen].basis.data[b])
        out = {}
        for u, coeff in g.dcoeffs.items():
            img = _left_act(n, coeff, w, adeg)
            for bb, cc in enumerate(slots[u].coords_of(img)):
                if cc:
                    key = pos[(u, bb)]
                    out[key] = out.get(key, f.zero()) + cc
        sgn = f.one() if g.degree % 2 == 0 else -f.one()
        img = n.diff_vec(w)
        coords = slots[tgen].coords_of(img)
        if coords is None:
            raise ResolutionError("slot is not d-closed")
        for bb, cc in enumerate(coords):
            if cc:
                key = pos[(tgen, bb)]
                out[key] = out.get(key, f.zero()) + sgn * cc
        return out

    spaces = {d: len(ix) for d, ix in by_deg.items()}
    diffs = {}
    for d, ix in by_deg.items():
        tgt = by_deg.get(d + 1, [])
        tpos = {c: r for r, c in enumerate(tgt)}
        data = [[f.zero()] * len(ix) for _ in range(len(tgt))]
        for col, c in enumerate(ix):
            for key, val in diff_of(c).items():
                data[tpos[key]][col] = data[tpos[key]][col] + val
        diffs[d] = Matrix(f, len(tgt), len(ix), data)
    return Complex(f, spaces, diffs)


def res_hom_complex(res: TruncatedResolution, n: DgModule):
    """Hom_A(F, N) as a complex, slotwise via Hom(e·A, N) = N·e."""
    a = res.algebra
    f = a.field
    slots = []
    for g in res.gens:
        vecs = [n.act_vec(basis_vec(f, n.dim, i), g.idem) for i in range(n.dim)]
        slots.append(Subspace.from_vectors(f, n.dim, vecs))
    entries = []
    for tgen, sub in enumerate(slots):
        g = res.gens[tgen]
        for b, row in enumerate(sub.basis.data):
            degs = {n.degrees[i] for i, c in enumerate(row) if c}
            entries.append((tgen, b, degs.pop() - g.degree))
    by_deg = {}
    for c, (tgen, b, d) in enumerate(entries):
        by_deg.setdefault(d, []).append(c)
    pos = {(entries[c][0], entries[c][1]): c for c in range(len(entries))}
    # reverse coefficient map: which later generators hit gen t
    hits = {}
    for s, g in enumerate(res.gens):
        for u in g.dcoeffs:
            hits.setdefault(u, []).append(s)

    def diff_of(c):
        tgen, b, hdeg = entries[c]
        w = list(slots[tgen].basis.data[b])
        out = {}
        img = n.diff_vec(w)
        coords = slots[tgen].coords_of(img)
        for bb, cc in enumerate(coords):
            if cc:
                key = pos[(tgen, bb)]
                out[key] = out.get(key, f.zero()) + cc
        sgn = f.one() if hdeg % 2 == 0 else -f.one()
        for s in hits.get(tgen, []):
            coeff = res.gens[s].dcoeffs[tgen]
            img = n.act_vec(w, coeff)
            coords = slots[s].coords_of(img)
            if coords is None:
                raise ResolutionError("hom slot is not closed")
            for bb, cc in enumerate(coords):
                if cc:
                    key = pos[(s, bb)]
                    out[key] = out.get(key, f.zero()) - sgn * cc
        return out

    spaces = {d: len(ix) for d, ix in by_deg.items()}
    diffs = {}
    for d, ix in by_deg.items():
        tgt = by_deg.get(d + 1, [])
        tpos = {c: r for r, c in enumerate(tgt)}
        data = [[f.zero()] * len(ix) for _ in range(len(tgt))]
        for col, c in enumerate(ix):
            for key, val in diff_of(c).items():
                data[tpos[key]][col] = data[tpos[key]][col] + val
        diffs[d] = Matrix(f, len(tgt), len(ix), data)
    return Complex(f, spaces, diffs), entries, slots


def res_tensor_bimodule(res: TruncatedResolution, bim: DgBimodule) -> DgModule:
    """F ⊗_A B as a right A-module, for a bimodule B."""
    a = res.algebra
    f = a.field
    slots = []
    for g in res.gens:
        vecs = [bim.left_vec(g.idem, basis_vec(f, bim.dim, i)) for i in range(bim.dim)]
        slots.append(Subspace.from_vectors(f, bim.dim, vecs))
    entries = []
    for tgen, sub in enumerate(slots):
        g = res.gens[tgen]
        for b, row in enumerate(sub.basis.data):
            degs = {bim.degrees[i] for i, c in enumerate(row) if c}
            entries.append((tgen, b, g.degree + degs.pop()))
    pos = {(entries[c][0], entries[c][1]): c for c in range(len(entries))}
    total = len(entries)
    names = [f"t{t}.{b}" for t, b, _ in entries]
    degrees = [d for _, _, d in entries]
    action = []
    diff = []
    for c, (tgen, b, d) in enumerate(entries):
        g = res.gens[tgen]
        w = list(slots[tgen].basis.data[b])
        arow = []
        for j in range(a.dim):
            img = bim.right_vec(w, basis_vec(f, a.dim, j))
            v = vec_zero(f, total)
            coords = slots[tgen].coords_of(img)
            if coords is None:
                raise ResolutionError("bimodule slot not right-closed")
            for bb, cc in enumerate(coords):
                if cc:
                    v[pos[(tgen, bb)]] = cc
            arow.append(v)
        action.append(arow)
        dv = vec_zero(f, total)
        for u, coeff in g.dcoeffs.items():
            img = bim.left_vec(coeff, w)
            coords = slots[u].coords_of(img)
            if coords is None:
                raise ResolutionError("bimodule slot not left-closed")
            for bb, cc in enumerate(coords):
                if cc:
                    dv[pos[(u, bb)]] = dv[pos[(u, bb)]] + cc
        sgn = f.one() if g.degree % 2 == 0 else -f.one()
        coords = slots[tgen].coords_of(bim.diff_vec(w))
        for bb, cc in enumerate(coords):
            if cc:
                dv[pos[(tgen, bb)]] = dv[pos[(tgen, bb)]] + sgn * cc
        diff.append(dv)
    return DgModule(a, names, degrees, action, diff)

"""Jacobson radical, DG ideals, quotients, filtrations and separability.

The radical of the underlying ungraded algebra is computed by the trace
form criterion, which is valid over the rationals and over F_p with
p > dim A; smaller prime fields are rejected.  Everything the criterion
returns is re-verified: two-sidedness, nilpotency, semisimple quotient
and per-degree decomposability, with a hard error on failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .dga import (DgaMorphism, FdDga, basis_vec, enveloping_dga,
                  tensor_dga, vec_add, vec_neg, vec_zero)
from .linalg import Matrix, Subspace, solve_vec
from .modules import (DgModule, envelope_module, quotient_module,
                      submodule_module, validate_module)


class RadicalError(ValueError):
    pass


class FieldTooSmall(RadicalError):
    pass


class NonGradedRadical(RadicalError):
    pass


class DgIdeal:
    """Two-sided ideal of an FdDga, stored as a homogeneous global subspace."""

    __slots__ = ("parent", "subspace", "d_closed")

    def __init__(self, parent: FdDga, subspace: Subspace, d_closed: bool):
        self.parent = parent
        self.subspace = subspace
        self.d_closed = d_closed

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def contains(self, vec) -> bool:
        return self.subspace.contains(vec)

    def per_degree(self):
        """degree -> list of basis vectors concentrated in that degree."""
        out = {}
        for row in self.subspace.basis.data:
            degs = {self.parent.degrees[i] for i, c in enumerate(row) if c}
            if len(degs) != 1:
                raise NonGradedRadical("ideal basis vector is not homogeneous")
            out.setdefault(degs.pop(), []).append(list(row))
        return out

    def __repr__(self):
        return f"DgIdeal(dim {self.dim} in dim {self.parent.dim})"


def _homogeneous_components(a: FdDga, vec):
    comps = {}
    for i, c in enumerate(vec):
        if c:
            comps.setdefault(a.degrees[i], vec_zero(a.field, a.dim))[i] = c
    return comps


def _homogenize_subspace(a: FdDga, sub: Subspace) -> Subspace:
    """Replace a graded subspace basis by homogeneous vectors, or raise."""
    vecs = []
    for row in sub.basis.data:
        for comp in _homogeneous_components(a, row).values():
            if not sub.contains(comp):
                raise NonGradedRadical(
                    "radical does not decompose by degree; input is not a graded algebra")
            vecs.append(comp)
    out = Subspace.from_vectors(a.field, a.dim, vecs)
    if out.dim != sub.dim:
        raise NonGradedRadical("homogenization changed the subspace")
    return out


def _is_two_sided(a: FdDga, sub: Subspace) -> bool:
    for row in sub.basis.data:
        for j in range(a.dim):
            e = basis_vec(a.field, a.dim, j)
            if not sub.contains(a.mul_vec(e, list(row))):
                return False
            if not sub.contains(a.mul_vec(list(row), e)):
                return False
    return True


def _subspace_product(a: FdDga, u: Subspace, v: Subspace) -> Subspace:
    vecs = []
    for x in u.basis.data:
        for y in v.basis.data:
            vecs.append(a.mul_vec(list(x), list(y)))
    return Subspace.from_vectors(a.field, a.dim, vecs)


def ideal_powers(a: FdDga, sub: Subspace):
    """[I, I^2, ...] down to and including the zero subspace."""
    powers = [sub]
    while powers[-1].dim:
        nxt = _subspace_product(a, powers[-1], sub)
        if nxt.dim >= powers[-1].dim and nxt.dim != 0:
            if len(powers) > a.dim + 1:
                raise RadicalError("ideal is not nilpotent")
        powers.append(nxt)
    return powers


def _trace_kernel(field, dim, mul):
    """Kernel of the trace form tr(L_{xy}) on an ungraded table."""
    # tr(L_{b_k}) for each k
    traces = []
    for k in range(dim):
        t = field.zero()
        for j in range(dim):
            t = t + mul[k][j][j]
        traces.append(t)
    rows = []
    for j in range(dim):
        row = []
        for i in range(dim):
            s = field.zero()
            for k, c in enumerate(mul[i][j]):
                if c and traces[k]:
                    s = s + c * traces[k]
            row.append(s)
        rows.append(row)
    gram = Matrix(field, dim, dim, rows)
    from .linalg import kernel_basis
    return kernel_basis(gram)


def underlying_radical(a: FdDga) -> DgIdeal:
    """Jacobson radical of the underlying algebra, as a graded subspace.

    Not d-closed in general; dg_ideals derives the DG ideals from it.
    """
    key = "radical"
    if key in a._cache:
        return a._cache[key]
    if a.is_zero_ring:
        ideal = DgIdeal(a, Subspace.zero(a.field, 0), True)
        a._cache[key] = ideal
        return ideal
    if a.field.p is not None and a.field.p <= a.dim:
        raise FieldTooSmall(
            f"trace criterion needs p > dim A ({a.field.p} <= {a.dim})")
    sub = Subspace.from_vectors(a.field, a.dim, _trace_kernel(a.field, a.dim, a.mul))
    sub = _homogenize_subspace(a, sub)
    if not _is_two_sided(a, sub):
        raise RadicalError("trace form kernel is not a two-sided ideal")
    powers = ideal_powers(a, sub)
    if powers[-1].dim != 0:
        raise RadicalError("radical candidate is not nilpotent")
    # the quotient must have zero radical (ungraded check)
    free = sub.free_coordinates()
    f = a.field

    def project(vec):
        res = sub.reduce(vec)
        return [res[j] for j in free]

    qmul = [[project(a.mul_vec(basis_vec(f, a.dim, i), basis_vec(f, a.dim, j)))
             for j in free] for i in free]
    if any(any(v) for v in _trace_kernel(f, len(free), qmul)):
        raise RadicalError("quotient by the radical candidate is not semisimple")
    ideal = DgIdeal(a, sub, False)
    a._cache[key] = ideal
    # powers = [J^1, ..., J^N] with J^N the first zero power
    a._cache["radical_nilpotency"] = len(powers) if sub.dim else 1
    return ideal


def radical_nilpotency_index(a: FdDga) -> int:
    """Least N with J^N = 0 (N = 1 for semisimple A)."""
    underlying_radical(a)
    if a.is_zero_ring:
        return 1
    n = a._cache.get("radical_nilpotency", 1)
    return max(1, n)


def minus_part(a: FdDga, sub: Subspace) -> Subspace:
    """{r in I : d(r) in I} for a subspace I."""
    n = a.dim
    cols = [a.diff[i] for i in range(n)]
    dmat = Matrix(a.field, n, n, [[cols[j][i] for j in range(n)] for i in range(n)])
    return sub.intersect(sub.preimage(dmat))


def dg_ideals(a: FdDga):
    """(J_minus, J_plus): the d-closed ideals {r in J : d(r) in J} and J + d(J)."""
    key = "dg_ideals"
    if key in a._cache:
        return a._cache[key]
    j = underlying_radical(a)
    jm_sub = _homogenize_subspace(a, minus_part(a, j.subspace))
    dj = [a.diff_vec(list(row)) for row in j.subspace.basis.data]
    jp_sub = _homogenize_subspace(
        a, j.subspace.sum(Subspace.from_vectors(a.field, a.dim, dj)))
    for name, sub in (("J-", jm_sub), ("J+", jp_sub)):
        if not _is_two_sided(a, sub):
            raise RadicalError(f"{name} is not a two-sided ideal")
        for row in sub.basis.data:
            if not sub.contains(a.diff_vec(list(row))):
                raise RadicalError(f"{name} is not closed under d")
    if not j.subspace.contains_subspace(jm_sub):
        raise RadicalError("J- is not inside J")
    if not jp_sub.contains_subspace(j.subspace):
        raise RadicalError("J is not inside J+")
    out = (DgIdeal(a, jm_sub, True), DgIdeal(a, jp_sub, True))
    a._cache[key] = out
    return out


def ideal_complex_table(a: FdDga, sub: Subspace):
    """Cohomology of a d-closed graded subspace of A."""
    from .complexes import Complex
    by_deg = {}
    for row in sub.basis.data:
        degs = {a.degrees[i] for i, c in enumerate(row) if c}
        by_deg.setdefault(degs.pop(), []).append(list(row))
    degrees = sorted(by_deg)
    spaces = {d: len(by_deg[d]) for d in degrees}
    diffs = {}
    for d in degrees:
        tgt = by_deg.get(d + 1, [])
        tgt_sub = Subspace.from_vectors(a.field, a.dim, tgt)
        cols = []
        for row in by_deg[d]:
            img = a.diff_vec(list(row))
            coords = tgt_sub.coords_of(img)
            if coords is None:
                raise RadicalError("subspace not closed under d")
            cols.append(coords)
        diffs[d] = Matrix(a.field, len(tgt), len(by_deg[d]),
                          [[cols[c][r] for c in range(len(by_deg[d]))]
                           for r in range(len(tgt))])
    return Complex(a.field, spaces, diffs).cohomology()


def quotient_dga(a: FdDga, ideal: DgIdeal):
    """(A/I, projection).  I = A yields the zero ring.

    Quotient basis: the pivot-free coordinates of the ideal, with a
    deterministic basis repair in the rare case the image of 1 is not
    itself a coordinate vector.
    """
    if ideal.parent is not a and not ideal.parent.same_tables(a):
        raise RadicalError("ideal does not belong to this algebra")
    sub = ideal.subspace
    if not _is_two_sided(a, sub):
        raise RadicalError("quotient requires a two-sided ideal")
    for row in sub.basis.data:
        if not sub.contains(a.diff_vec(list(row))):
            raise RadicalError("quotient requires a d-closed ideal")
    f = a.field
    if sub.dim == a.dim:
        z = FdDga.zero_ring(f)
        return z, DgaMorphism(a, z, Matrix.zero(f, 0, a.dim))
    free = sub.free_coordinates()
    k = len(free)

    def project(vec):
        res = sub.reduce(vec)
        return [res[j] for j in free]

    cols = [project(basis_vec(f, a.dim, c)) for c in range(a.dim)]
    proj = Matrix(f, k, a.dim, [[cols[c][r] for c in range(a.dim)] for r in range(k)])
    names = [a.names[j] for j in free]
    degrees = [a.degrees[j] for j in free]
    unit_img = project(a.one_vec())
    nz = [i for i, c in enumerate(unit_img) if c]
    unit = None
    if len(nz) == 1 and unit_img[nz[0]] == f.one():
        unit = nz[0]
        section = [basis_vec(f, a.dim, free[i]) for i in range(k)]
    else:
        # repair: swap the first coordinate the unit touches for 1 itself
        u = nz[0]
        section = [basis_vec(f, a.dim, free[i]) for i in range(k)]
        section[u] = a.one_vec()
        names[u] = "1"
        unit = u
        # recompute projection so that project(section[i]) = e_i
        smat = Matrix(f, k, k, [[project(section[c])[r] for c in range(k)]
                                for r in range(k)])
        inv = _invert(smat)
        proj = inv.mul(proj)

        def project(vec, _inv=inv, _sub=sub, _free=free):
            res = _sub.reduce(vec)
            return _inv.apply([res[j] for j in _free])

    mul = [[project(a.mul_vec(section[i], section[j])) for j in range(k)]
           for i in range(k)]
    diff = [project(a.diff_vec(section[i])) for i in range(k)]
    q = FdDga(f, names, degrees, unit, mul, diff)
    return q, DgaMorphism(a, q, proj)


def _invert(m: Matrix) -> Matrix:
    from .linalg import solve
    inv = solve(m, Matrix.identity(m.field, m.rows))
    if inv is None:
        raise RadicalError("basis repair matrix is singular")
    return inv


def semisimple_quotient(a: FdDga):
    """(A/J+, projection), cached."""
    key = "ss_quotient"
    if key not in a._cache:
        _, jp = dg_ideals(a)
        a._cache[key] = quotient_dga(a, jp)
    return a._cache[key]


# -- separability -------------------------------------------------------------


class SeparabilityIdempotent:
    """Element p of A ⊗ A with mu(p) = 1 and (a⊗1)p = p(1⊗a) for all a."""

    __slots__ = ("parent", "vector")

    def __init__(self, parent: FdDga, vector):
        self.parent = parent
        self.vector = list(vector)  # flat pair coordinates, index i*n + j

    def terms(self):
        n = self.parent.dim
        return [(i // n, i % n, c) for i, c in enumerate(self.vector) if c]

    def violations(self):
        a = self.parent
        f = a.field
        n = a.dim
        out = []
        if a.is_zero_ring:
            return out
        mu = vec_zero(f, n)
        for i, j, c in self.terms():
            prod = a.mul[i][j]
            for k, x in enumerate(prod):
                if x:
                    mu[k] = mu[k] + c * x
        if mu != a.one_vec():
            out.append("mu(p) != 1")
        for i, j, c in self.terms():
            if a.degrees[i] + a.degrees[j] != 0:
                out.append("p is not concentrated in total degree 0")
                break
        for u in range(n):
            lhs = [f.zero()] * (n * n)
            for i, j, c in self.terms():
                for i2, x in enumerate(a.mul[u][i]):
                    if x:
                        lhs[i2 * n + j] = lhs[i2 * n + j] + c * x
                for j2, x in enumerate(a.mul[j][u]):
                    if x:
                        lhs[i * n + j2] = lhs[i * n + j2] - c * x
            if any(lhs):
                out.append(f"not central at {a.names[u]}")
        return out


def is_separable(a: FdDga):
    """A separability idempotent of the underlying algebra, or None.

    The search space is restricted to total degree 0, which loses
    nothing: the degree 0 component of any solution is a solution.
    """
    if a.is_zero_ring:
        return SeparabilityIdempotent(a, [])
    f = a.field
    n = a.dim
    pairs = [(i, j) for i in range(n) for j in range(n)
             if a.degrees[i] + a.degrees[j] == 0]
    pos = {p: c for c, p in enumerate(pairs)}
    rows = []
    rhs = []
    one = a.one_vec()
    for k in range(n):
        row = [f.zero()] * len(pairs)
        for c, (i, j) in enumerate(pairs):
            x = a.mul[i][j][k]
            if x:
                row[c] = x
        rows.append(row)
        rhs.append(one[k])
    for u in range(n):
        block = {}
        for c, (i, j) in enumerate(pairs):
            for i2, x in enumerate(a.mul[u][i]):
                if x:
                    block.setdefault((i2, j), {})[c] = block.get((i2, j), {}).get(c, f.zero()) + x
            for j2, x in enumerate(a.mul[j][u]):
                if x:
                    block.setdefault((i, j2), {})[c] = block.get((i, j2), {}).get(c, f.zero()) - x
        for _, entries in sorted(block.items()):
            row = [f.zero()] * len(pairs)
            for c, x in entries.items():
                row[c] = x
            if any(row):
                rows.append(row)
                rhs.append(f.zero())
    mat = Matrix(f, len(rows), len(pairs), rows)
    sol = solve_vec(mat, rhs)
    if sol is None:
        return None
    vec = [f.zero()] * (n * n)
    for c, (i, j) in enumerate(pairs):
        vec[i * n + j] = sol[c]
    p = SeparabilityIdempotent(a, vec)
    bad = p.violations()
    if bad:
        raise RadicalError(f"solver returned a non-idempotent: {bad}")
    return p


def tensor_idempotent(pa: SeparabilityIdempotent, pb: SeparabilityIdempotent,
                      tensor: FdDga | None = None) -> SeparabilityIdempotent:
    """Separability idempotent of the graded tensor product.

    p = sum (-1)^{|b_j||a_i'|} (a_i ⊗ b_j) ⊗ (a_i' ⊗ b_j'), after
    projecting both inputs to total degree 0.  The output is checked
    against the idempotent axioms; failure is a hard error.
    """
    a, b = pa.parent, pb.parent
    t = tensor or tensor_dga(a, b)
    f = a.field
    na, nb = a.dim, b.dim
    nt = t.dim

    def proj0(p):
        alg = p.parent
        n = alg.dim
        return [(i, j, c) for i, j, c in p.terms()
                if alg.degrees[i] + alg.degrees[j] == 0]

    vec = [f.zero()] * (nt * nt)
    for i, i2, ca in proj0(pa):
        for j, j2, cb in proj0(pb):
            sgn = f.one() if (b.degrees[j] * a.degrees[i2]) % 2 == 0 else -f.one()
            left = i * nb + j
            right = i2 * nb + j2
            vec[left * nt + right] = vec[left * nt + right] + sgn * ca * cb
    p = SeparabilityIdempotent(t, vec)
    bad = p.violations()
    if bad:
        raise RadicalError(f"tensor idempotent fails its axioms: {bad}")
    return p


def separable_semisimple_quotient(a: FdDga) -> bool:
    """Whether A/J+ carries a separability idempotent (cached)."""
    key = "ssq_separable"
    if key not in a._cache:
        q, _ = semisimple_quotient(a)
        a._cache[key] = is_separable(q) is not None
    return a._cache[key]


# -- filtrations ---------------------------------------------------------------


@dataclass
class FiltrationWitness:
    """Descending chain from the subject to zero with semisimple-side factors."""

    subject: object
    chain: list = dc_field(default_factory=list)      # list of Subspace
    factors: list = dc_field(default_factory=list)    # list of DgModule
    factor_dims: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.chain) - 1


def _module_subspace_product(m: DgModule, sub: Subspace, ideal_sub: Subspace) -> Subspace:
    vecs = []
    for x in sub.basis.data:
        for r in ideal_sub.basis.data:
            # extend the ideal vector to an algebra element and act
            vecs.append(m.act_vec(list(x), list(r)))
    return Subspace.from_vectors(m.field, m.dim, vecs)


def _subquotient_module(m: DgModule, outer: Subspace, inner: Subspace) -> DgModule:
    sub, _ = submodule_module(m, outer)
    inner_local = []
    for row in inner.basis.data:
        coords = outer.coords_of(list(row))
        if coords is None:
            raise RadicalError("filtration chain is not nested")
        inner_local.append(coords)
    inner_sub = Subspace.from_vectors(m.field, sub.dim, inner_local)
    q, _ = quotient_module(sub, inner_sub, keep_names=False)
    return q


def radical_filtration(m: DgModule) -> FiltrationWitness:
    """M ⊇ MJ- ⊇ MJ-^2 ⊇ ... ⊇ 0 with J- acting as zero on every factor."""
    a = m.algebra
    jm, _ = dg_ideals(a)
    chain = [Subspace.full(m.field, m.dim)]
    while chain[-1].dim:
        nxt = _module_subspace_product(m, chain[-1], jm.subspace)
        if nxt.dim >= chain[-1].dim:
            raise RadicalError("module radical filtration does not descend")
        chain.append(nxt)
    w = FiltrationWitness(subject=m, chain=chain)
    for t in range(len(chain) - 1):
        fct = _subquotient_module(m, chain[t], chain[t + 1])
        bad = validate_module(fct)
        if bad:
            raise RadicalError(f"filtration factor invalid: {bad}")
        for r in jm.subspace.basis.data:
            mat = fct.action_matrix(list(r))
            if not mat.is_zero():
                raise RadicalError("factor is not annihilated by J-")
        w.factors.append(fct)
        w.factor_dims.append(fct.dim)
    return w


def bimodule_filtration(a: FdDga) -> FiltrationWitness:
    """Powers of J- filtering A as a module over the enveloping algebra."""
    jm, _ = dg_ideals(a)
    env = enveloping_dga(a)
    m = envelope_module(a, env)
    powers = [Subspace.full(a.field, a.dim)] + \
        (ideal_powers(a, jm.subspace) if jm.dim else [Subspace.zero(a.field, a.dim)])
    # drop a duplicated zero tail
    chain = []
    for s in powers:
        chain.append(s)
        if s.dim == 0:
            break
    w = FiltrationWitness(subject=m, chain=chain)
    na = a.dim
    f = a.field
    for t in range(len(chain) - 1):
        fct = _subquotient_module(m, chain[t], chain[t + 1])
        bad = validate_module(fct)
        if bad:
            raise RadicalError(f"bimodule factor invalid: {bad}")
        for r in jm.subspace.basis.data:
            for side in ("left", "right"):
                ev = vec_zero(f, env.dim)
                for i, c in enumerate(r):
                    if c:
                        if side == "left":
                            ev[i * na + a.unit] = c
                        else:
                            ev[a.unit * na + i] = c
                if not fct.action_matrix(ev).is_zero():
                    raise RadicalError(f"bimodule factor not killed by J- on the {side}")
        w.factors.append(fct)
        w.factor_dims.append(fct.dim)
    return w


# -- idempotent frames ---------------------------------------------------------


def frame_idempotents(a: FdDga):
    """Orthogonal degree 0 idempotents with d(e) = 0 summing to 1.

    Built from pairwise commuting idempotent basis elements; the frame
    is {1} when none exist.  Used to pick projective covers.
    """
    key = "frame"
    if key in a._cache:
        return a._cache[key]
    f = a.field
    one = a.one_vec()
    cands = []
    for i in range(a.dim):
        if a.degrees[i] != 0 or i == a.unit:
            continue
        e = basis_vec(f, a.dim, i)
        if a.mul[i][i] == e and not any(a.diff[i]):
            cands.append(e)
    chosen = []
    for e in cands:
        if all(a.mul_vec(e, c) == a.mul_vec(c, e) for c in chosen):
            chosen.append(e)
    frame = [one]
    for u in chosen:
        new = []
        for g in frame:
            gu = a.mul_vec(g, u)
            if any(gu):
                new.append(gu)
            rest = vec_add(g, vec_neg(gu))
            if any(rest):
                new.append(rest)
        frame = new
    # sanity: orthogonal idempotent decomposition of 1
    total = vec_zero(f, a.dim)
    for g in frame:
        total = vec_add(total, g)
        if a.mul_vec(g, g) != g:
            raise RadicalError("frame element is not idempotent")
    if total != one:
        raise RadicalError("frame does not sum to 1")
    for i, g in enumerate(frame):
        for h in frame[i + 1:]:
            if any(a.mul_vec(g, h)) or any(a.mul_vec(h, g)):
                raise RadicalError("frame is not orthogonal")
    a._cache[key] = frame
    return frame

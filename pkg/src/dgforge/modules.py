"""Strictly finite dimensional right DG modules over an FdDga.

Left modules never get their own type: they are right modules over the
graded opposite algebra, converted by side_swap, and bimodules carry
both action tables.  All sign rules follow from the shift convention
that suspension lowers the degree of the underlying graded piece.
"""

from __future__ import annotations

import random

from .complexes import CohomologyTable, Complex
from .dga import (FdDga, basis_vec, enveloping_dga, opposite_dga,
                  vec_add, vec_neg, vec_scale, vec_zero)
from .linalg import Matrix, PresolvedSystem, Subspace, kernel_basis


class ModuleError(ValueError):
    pass


def _sign(field, parity: int):
    return field.one() if parity % 2 == 0 else -field.one()


class DgModule:
    """Right DG module given by structure constants.

    action[i][j] is the coefficient vector of m_i * b_j over the module
    basis, diff[i] the vector of d(m_i).
    """

    __slots__ = ("algebra", "names", "degrees", "action", "diff", "_cache")

    def __init__(self, algebra: FdDga, names, degrees, action, diff):
        self.algebra = algebra
        self.names = list(names)
        self.degrees = list(degrees)
        self.action = action
        self.diff = diff
        self._cache = {}
        if len(self.degrees) != len(self.names):
            raise ModuleError("names/degrees length mismatch")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def field(self):
        return self.algebra.field

    def basis_by_degree(self):
        key = "by_degree"
        if key not in self._cache:
            out = {}
            for i, d in enumerate(self.degrees):
                out.setdefault(d, []).append(i)
            self._cache[key] = out
        return self._cache[key]

    def amplitude(self):
        if self.dim == 0:
            return (0, 0)
        return (min(self.degrees), max(self.degrees))

    def act_vec(self, mvec, avec):
        out = vec_zero(self.field, self.dim)
        for i, c in enumerate(mvec):
            if not c:
                continue
            row = self.action[i]
            for j, a in enumerate(avec):
                if not a:
                    continue
                coeff = c * a
                t = row[j]
                for k, x in enumerate(t):
                    if x:
                        out[k] = out[k] + coeff * x
        return out

    def diff_vec(self, mvec):
        out = vec_zero(self.field, self.dim)
        for i, c in enumerate(mvec):
            if not c:
                continue
            t = self.diff[i]
            for k, x in enumerate(t):
                if x:
                    out[k] = out[k] + c * x
        return out

    def restrict_to_degree(self, vec, degree: int):
        return [vec[i] for i in self.basis_by_degree().get(degree, [])]

    def diff_matrix(self, degree: int) -> Matrix:
        by_deg = self.basis_by_degree()
        src = by_deg.get(degree, [])
        tgt = by_deg.get(degree + 1, [])
        cols = [self.restrict_to_degree(self.diff[i], degree + 1) for i in src]
        rows = [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]
        return Matrix(self.field, len(tgt), len(src), rows)

    def as_complex(self) -> Complex:
        key = "complex"
        if key not in self._cache:
            by_deg = self.basis_by_degree()
            spaces = {d: len(ix) for d, ix in by_deg.items()}
            diffs = {d: self.diff_matrix(d) for d in spaces}
            self._cache[key] = Complex(self.field, spaces, diffs)
        return self._cache[key]

    def cohomology(self) -> CohomologyTable:
        return self.as_complex().cohomology()

    def action_matrix(self, avec) -> Matrix:
        """Matrix of m -> m*a on global module coordinates."""
        cols = [self.act_vec(basis_vec(self.field, self.dim, i), avec)
                for i in range(self.dim)]
        return Matrix(self.field, self.dim, self.dim,
                      [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def same_tables(self, other: "DgModule") -> bool:
        return (self.degrees == other.degrees and self.action == other.action
                and self.diff == other.diff)

    def __repr__(self):
        degs = {}
        for d in self.degrees:
            degs[d] = degs.get(d, 0) + 1
        body = ", ".join(f"{d}:{n}" for d, n in sorted(degs.items()))
        return f"DgModule(dim {self.dim}; {body})"


def validate_module(m: DgModule):
    """Module axioms; returns a list of violation strings."""
    out = []
    a = m.algebra
    f = m.field
    if a.is_zero_ring:
        if m.dim:
            out.append("nonzero module over the zero ring")
        return out
    n, na = m.dim, a.dim
    for i in range(n):
        for j in range(na):
            want = m.degrees[i] + a.degrees[j]
            for k, c in enumerate(m.action[i][j]):
                if c and m.degrees[k] != want:
                    out.append(f"action ({m.names[i]},{a.names[j]}) leaves degree {want}")
                    break
    one = a.one_vec()
    for i in range(n):
        e = basis_vec(f, n, i)
        if m.act_vec(e, one) != e:
            out.append(f"unit does not act as identity at {m.names[i]}")
    for i in range(n):
        for j in range(na):
            for k in range(na):
                lhs = m.act_vec(m.action[i][j], basis_vec(f, na, k))
                rhs = m.act_vec(basis_vec(f, n, i), a.mul[j][k])
                if lhs != rhs:
                    out.append(
                        f"associativity fails at ({m.names[i]},{a.names[j]},{a.names[k]})")
    for i in range(n):
        di = m.diff[i]
        deg = m.degrees[i]
        for k, c in enumerate(di):
            if c and m.degrees[k] != deg + 1:
                out.append(f"differential of {m.names[i]} is not degree +1")
                break
        if any(m.diff_vec(di)):
            out.append(f"d∘d nonzero at {m.names[i]}")
    for i in range(n):
        for j in range(na):
            lhs = m.diff_vec(m.action[i][j])
            rhs = vec_add(m.act_vec(m.diff[i], basis_vec(f, na, j)),
                          vec_scale(_sign(f, m.degrees[i]),
                                    m.act_vec(basis_vec(f, n, i), a.diff[j])))
            if lhs != rhs:
                out.append(f"module Leibniz fails at ({m.names[i]},{a.names[j]})")
    return out


# -- constructions -----------------------------------------------------------


def regular_module(a: FdDga) -> DgModule:
    """A as a right module over itself."""
    n = a.dim
    action = [[list(a.mul[i][j]) for j in range(n)] for i in range(n)]
    return DgModule(a, list(a.names), list(a.degrees), action,
                    [list(v) for v in a.diff])


def zero_module(a: FdDga) -> DgModule:
    return DgModule(a, [], [], [], [])


def shift(m: DgModule, n: int) -> DgModule:
    """Suspension to the n-th power: degrees drop by n, d picks up (-1)^n."""
    if n == 0:
        return m
    sgn = _sign(m.field, n)
    return DgModule(m.algebra, list(m.names), [d - n for d in m.degrees],
                    [[list(v) for v in row] for row in m.action],
                    [vec_scale(sgn, v) for v in m.diff])


def direct_sum(m1: DgModule, m2: DgModule) -> DgModule:
    if m1.algebra is not m2.algebra and not m1.algebra.same_tables(m2.algebra):
        raise ModuleError("direct sum over different algebras")
    f = m1.field
    n1, n2 = m1.dim, m2.dim
    names = [f"l.{s}" for s in m1.names] + [f"r.{s}" for s in m2.names]
    degrees = list(m1.degrees) + list(m2.degrees)
    na = m1.algebra.dim
    action = []
    diff = []
    zero1, zero2 = vec_zero(f, n1), vec_zero(f, n2)
    for i in range(n1):
        action.append([list(m1.action[i][j]) + zero2 for j in range(na)])
        diff.append(list(m1.diff[i]) + zero2)
    for i in range(n2):
        action.append([zero1 + list(m2.action[i][j]) for j in range(na)])
        diff.append(zero1 + list(m2.diff[i]))
    return DgModule(m1.algebra, names, degrees, action, diff)


def free_module(a: FdDga, generator_degrees) -> DgModule:
    """Direct sum of shifted copies of A, one per generator degree."""
    f = a.field
    na = a.dim
    names, degrees, action, diff = [], [], [], []
    gens = list(generator_degrees)
    for t, g in enumerate(gens):
        sgn = _sign(f, g)
        for j in range(na):
            names.append(f"g{t}.{a.names[j]}")
            degrees.append(g + a.degrees[j])
        for j in range(na):
            row = []
            for b in range(na):
                v = vec_zero(f, na * len(gens))
                for k, c in enumerate(a.mul[j][b]):
                    if c:
                        v[t * na + k] = c
                row.append(v)
            action.append(row)
            dv = vec_zero(f, na * len(gens))
            for k, c in enumerate(a.diff[j]):
                if c:
                    dv[t * na + k] = sgn * c
            diff.append(dv)
    return DgModule(a, names, degrees, action, diff)


class ModuleMap:
    """Graded A-linear map of right modules, given globally by a matrix.

    A degree t map satisfies f(m*a) = f(m)*a; the Koszul signs of the
    Hom complex live in its differential d(f) = d∘f - (-1)^t f∘d.
    """

    __slots__ = ("source", "target", "degree", "matrix")

    def __init__(self, source: DgModule, target: DgModule, degree: int, matrix: Matrix):
        self.source = source
        self.target = target
        self.degree = degree
        self.matrix = matrix
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ModuleError("module map matrix has wrong shape")

    @staticmethod
    def zero(source: DgModule, target: DgModule, degree: int = 0) -> "ModuleMap":
        return ModuleMap(source, target, degree,
                         Matrix.zero(source.field, target.dim, source.dim))

    @staticmethod
    def identity(m: DgModule) -> "ModuleMap":
        return ModuleMap(m, m, 0, Matrix.identity(m.field, m.dim))

    def apply(self, vec):
        return self.matrix.apply(vec)

    def violations(self):
        out = []
        s, t = self.source, self.target
        f = s.field
        for j in range(s.dim):
            img = self.matrix.col(j)
            for k, c in enumerate(img):
                if c and t.degrees[k] != s.degrees[j] + self.degree:
                    out.append(f"not homogeneous of degree {self.degree} at {s.names[j]}")
                    break
        na = s.algebra.dim
        for j in range(s.dim):
            for b in range(na):
                lhs = self.apply(s.action[j][b])
                rhs = t.act_vec(self.matrix.col(j), basis_vec(f, na, b))
                if lhs != rhs:
                    out.append(f"not A-linear at ({s.names[j]},{s.algebra.names[b]})")
        return out

    def hom_differential(self) -> "ModuleMap":
        """d(f) = d_target ∘ f - (-1)^{deg f} f ∘ d_source."""
        s, t = self.source, self.target
        f = s.field
        cols = []
        sgn = _sign(f, self.degree)
        for j in range(s.dim):
            v = vec_add(t.diff_vec(self.matrix.col(j)),
                        vec_scale(-sgn, self.apply(s.diff[j])))
            cols.append(v)
        mat = Matrix(f, t.dim, s.dim,
                     [[cols[j][i] for j in range(s.dim)] for i in range(t.dim)])
        return ModuleMap(s, t, self.degree + 1, mat)

    def is_chain_map(self) -> bool:
        return self.hom_differential().matrix.is_zero()

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.source, self.target, self.degree + other.degree,
                         self.matrix.mul(other.matrix))


def cone(f: ModuleMap) -> DgModule:
    """Mapping cone of a degree 0 chain map: shift(source, 1) ⊕ target."""
    if f.degree != 0:
        raise ModuleError("cone requires a degree 0 map")
    if f.violations() or not f.is_chain_map():
        raise ModuleError("cone requires an A-linear chain map")
    src, tgt = f.source, f.target
    fld = src.field
    n1, n2 = src.dim, tgt.dim
    names = [f"s.{s}" for s in src.names] + [f"t.{s}" for s in tgt.names]
    degrees = [d - 1 for d in src.degrees] + list(tgt.degrees)
    na = src.algebra.dim
    zero1, zero2 = vec_zero(fld, n1), vec_zero(fld, n2)
    action, diff = [], []
    for i in range(n1):
        action.append([list(src.action[i][j]) + zero2 for j in range(na)])
        diff.append(vec_neg(src.diff[i]) + f.matrix.col(i))
    for i in range(n2):
        action.append([zero1 + list(tgt.action[i][j]) for j in range(na)])
        diff.append(zero1 + list(tgt.diff[i]))
    return DgModule(src.algebra, names, degrees, action, diff)


def cone_inclusion(f: ModuleMap, c: DgModule) -> ModuleMap:
    """The canonical chain map target -> cone(f)."""
    fld = f.source.field
    n1, n2 = f.source.dim, f.target.dim
    data = [[fld.zero()] * n2 for _ in range(n1 + n2)]
    for i in range(n2):
        data[n1 + i][i] = fld.one()
    return ModuleMap(f.target, c, 0, Matrix(fld, n1 + n2, n2, data))


# -- sub and quotient modules -------------------------------------------------


def graded_subspace(m: DgModule, vectors) -> Subspace:
    """Span of homogeneous global vectors (checked)."""
    for v in vectors:
        degs = {m.degrees[i] for i, c in enumerate(v) if c}
        if len(degs) > 1:
            raise ModuleError("subspace generator is not homogeneous")
    return Subspace.from_vectors(m.field, m.dim, vectors)


def submodule_module(m: DgModule, sub: Subspace, name_prefix: str = "s"):
    """(DgModule on the subspace, inclusion map).

    The subspace must be action- and d-closed; violations raise.
    """
    f = m.field
    rows = [list(r) for r in sub.basis.data]
    k = len(rows)
    names = [f"{name_prefix}{i}" for i in range(k)]
    degrees = []
    for r in rows:
        degs = {m.degrees[i] for i, c in enumerate(r) if c}
        if len(degs) != 1:
            raise ModuleError("submodule basis vector is not homogeneous")
        degrees.append(degs.pop())
    na = m.algebra.dim
    action, diff = [], []
    for r in rows:
        arow = []
        for j in range(na):
            img = m.act_vec(r, basis_vec(f, na, j))
            coords = sub.coords_of(img)
            if coords is None:
                raise ModuleError("subspace is not closed under the action")
            arow.append(coords)
        action.append(arow)
        dimg = m.diff_vec(r)
        coords = sub.coords_of(dimg)
        if coords is None:
            raise ModuleError("subspace is not closed under the differential")
        diff.append(coords)
    subm = DgModule(m.algebra, names, degrees, action, diff)
    inc = Matrix(f, m.dim, k, [[rows[j][i] for j in range(k)] for i in range(m.dim)])
    return subm, ModuleMap(subm, m, 0, inc)


def quotient_module(m: DgModule, sub: Subspace, keep_names: bool = True):
    """(DgModule on the pivot-free coordinates, projection map)."""
    f = m.field
    free = sub.free_coordinates()
    k = len(free)
    names = [m.names[j] if keep_names else f"q{i}" for i, j in enumerate(free)]
    degrees = [m.degrees[j] for j in free]

    def project(vec):
        res = sub.reduce(vec)
        return [res[j] for j in free]

    na = m.algebra.dim
    action, diff = [], []
    for j in free:
        e = basis_vec(f, m.dim, j)
        action.append([project(m.act_vec(e, basis_vec(f, na, b))) for b in range(na)])
        diff.append(project(m.diff_vec(e)))
    q = DgModule(m.algebra, names, degrees, action, diff)
    cols = [project(basis_vec(f, m.dim, c)) for c in range(m.dim)]
    proj = Matrix(f, k, m.dim, [[cols[c][r] for c in range(m.dim)] for r in range(k)])
    return q, ModuleMap(m, q, 0, proj)


def quotient_by_ideal_module(a: FdDga, ideal_sub: Subspace) -> DgModule:
    """A/I as a right A-module, on the pivot-free coordinate basis."""
    q, _ = quotient_module(regular_module(a), ideal_sub)
    return q


# -- duals and side conversion ------------------------------------------------


def _twist(n: int) -> int:
    # parity of n(n+1)/2; makes the double dual the identity on tables
    return (n * (n + 1) // 2) % 2


def k_dual(m: DgModule) -> DgModule:
    """Hom_k(M, k) as a right module over the graded opposite algebra."""
    a = m.algebra
    f = m.field
    op = opposite_dga(a)
    n = m.dim
    names = [f"{s}*" for s in m.names]
    degrees = [-d for d in m.degrees]
    # twisted dual basis: delta_i = (-1)^{d_i(d_i+1)/2} m_i^*
    action = []
    for i in range(n):
        row = []
        for b in range(a.dim):
            v = vec_zero(f, n)
            t = a.degrees[b]
            sgn_b = _sign(f, _twist(t))
            for j in range(n):
                # R_{ji}: coefficient of m_i in m_j * b
                c = m.action[j][b][i]
                if c:
                    v[j] = sgn_b * c
            row.append(v)
        action.append(row)
    diff = []
    for i in range(n):
        v = vec_zero(f, n)
        for j in range(n):
            c = m.diff[j][i]
            if c:
                v[j] = -c
        diff.append(v)
    return DgModule(op, names, degrees, action, diff)


def side_swap(m: DgModule, direction: str = "to_opposite") -> DgModule:
    """Reinterpret an action table across the opposite algebra.

    For a table that encodes a left action, the result is the genuine
    right module over the opposite algebra, with the Koszul sign
    (-1)^{|m||a|}; applying it twice restores the original tables.
    """
    if direction not in ("to_opposite", "from_opposite"):
        raise ModuleError(f"unknown direction {direction!r}")
    a = m.algebra
    f = m.field
    op = opposite_dga(a)
    n = m.dim
    action = []
    for i in range(n):
        row = []
        for b in range(a.dim):
            v = list(m.action[i][b])
            if (m.degrees[i] * a.degrees[b]) % 2:
                v = vec_neg(v)
            row.append(v)
        action.append(row)
    return DgModule(op, list(m.names), list(m.degrees), action,
                    [list(v) for v in m.diff])


def rebind_algebra(m: DgModule, a: FdDga) -> DgModule:
    """Replace the algebra reference by one with identical tables."""
    if not m.algebra.same_tables(a):
        raise ModuleError("rebind requires identical algebra tables")
    return DgModule(a, list(m.names), list(m.degrees),
                    [[list(v) for v in row] for row in m.action],
                    [list(v) for v in m.diff])


# -- bimodules ----------------------------------------------------------------


class DgBimodule:
    """DG bimodule over one algebra: commuting left and right tables."""

    __slots__ = ("algebra", "names", "degrees", "left", "right", "diff")

    def __init__(self, algebra, names, degrees, left, right, diff):
        self.algebra = algebra
        self.names = list(names)
        self.degrees = list(degrees)
        self.left = left    # left[j][i]: b_j * m_i as a module vector
        self.right = right  # right[i][j]: m_i * b_j
        self.diff = diff

    @property
    def dim(self):
        return len(self.names)

    @property
    def field(self):
        return self.algebra.field

    def left_vec(self, avec, mvec):
        out = vec_zero(self.field, self.dim)
        for j, a in enumerate(avec):
            if not a:
                continue
            for i, c in enumerate(mvec):
                if not c:
                    continue
                coeff = a * c
                for k, x in enumerate(self.left[j][i]):
                    if x:
                        out[k] = out[k] + coeff * x
        return out

    def right_vec(self, mvec, avec):
        out = vec_zero(self.field, self.dim)
        for i, c in enumerate(mvec):
            if not c:
                continue
            for j, a in enumerate(avec):
                if not a:
                    continue
                coeff = c * a
                for k, x in enumerate(self.right[i][j]):
                    if x:
                        out[k] = out[k] + coeff * x
        return out

    def diff_vec(self, mvec):
        out = vec_zero(self.field, self.dim)
        for i, c in enumerate(mvec):
            if c:
                for k, x in enumerate(self.diff[i]):
                    if x:
                        out[k] = out[k] + c * x
        return out

    def as_right_module(self) -> DgModule:
        return DgModule(self.algebra, list(self.names), list(self.degrees),
                        [[list(v) for v in row] for row in self.right],
                        [list(v) for v in self.diff])

    def as_op_module(self) -> DgModule:
        """The left structure as a right module over the opposite algebra.

        m * a^op = (-1)^{|a||m|} a * m.
        """
        a = self.algebra
        action = []
        for i in range(self.dim):
            row = []
            for j in range(a.dim):
                v = list(self.left[j][i])
                if (self.degrees[i] * a.degrees[j]) % 2:
                    v = vec_neg(v)
                row.append(v)
            action.append(row)
        return DgModule(opposite_dga(a), list(self.names), list(self.degrees),
                        action, [list(v) for v in self.diff])

    def to_envelope_module(self, env: FdDga | None = None) -> DgModule:
        """Right module over A^e = A^op ⊗ A: m*(u^op⊗v) = ±u*m*v."""
        a = self.algebra
        f = self.field
        e = env or enveloping_dga(a)
        na = a.dim
        action = []
        for i in range(self.dim):
            row = []
            for u in range(na):
                left_part = self.left_vec(basis_vec(f, na, u), basis_vec(f, self.dim, i))
                flip = (a.degrees[u] * self.degrees[i]) % 2 == 1
                for v in range(na):
                    w = self.right_vec(left_part, basis_vec(f, na, v))
                    row.append(vec_neg(w) if flip else w)
            action.append(row)
        return DgModule(e, list(self.names), list(self.degrees), action,
                        [list(v) for v in self.diff])

    def violations(self):
        out = []
        rm = self.as_right_module()
        out += [f"right: {v}" for v in validate_module(rm)]
        lm = self.as_op_module()
        out += [f"left: {v}" for v in validate_module(lm)]
        a = self.algebra
        f = self.field
        for u in range(a.dim):
            for i in range(self.dim):
                for v in range(a.dim):
                    lhs = self.right_vec(self.left[u][i], basis_vec(f, a.dim, v))
                    rhs = self.left_vec(basis_vec(f, a.dim, u), self.right[i][v])
                    if lhs != rhs:
                        out.append(f"actions do not commute at ({u},{i},{v})")
        return out


def diagonal_bimodule(a: FdDga) -> DgBimodule:
    n = a.dim
    left = [[list(a.mul[j][i]) for i in range(n)] for j in range(n)]
    right = [[list(a.mul[i][j]) for j in range(n)] for i in range(n)]
    return DgBimodule(a, list(a.names), list(a.degrees), left, right,
                      [list(v) for v in a.diff])


def dual_diagonal_bimodule(a: FdDga) -> DgBimodule:
    """A^∨ = Hom_k(A, k) with its two induced actions.

    The right action dualizes left multiplication on A, the left action
    dualizes right multiplication; both are expressed through k_dual so
    all three tables share one dual-basis convention.
    """
    n = a.dim
    # right action: dual of A as a left module (encoded over the opposite)
    right_mod = k_dual(regular_module(opposite_dga(a)))
    if not right_mod.algebra.same_tables(a):
        raise ModuleError("opposite involution failed on the dual")
    # left action: dual of the right regular module, decoded from op
    left_mod = k_dual(regular_module(a))
    left = [[vec_zero(a.field, n) for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            v = list(left_mod.action[i][j])
            if (a.degrees[j] * left_mod.degrees[i]) % 2:
                v = vec_neg(v)
            left[j][i] = v
    return DgBimodule(a, list(right_mod.names), list(right_mod.degrees),
                      left, [[list(v) for v in row] for row in right_mod.action],
                      [list(v) for v in right_mod.diff])


def quotient_bimodule(a: FdDga, ideal_sub: Subspace) -> DgBimodule:
    """A/I with both actions, on the pivot-free coordinates."""
    f = a.field
    free = ideal_sub.free_coordinates()
    k = len(free)

    def project(vec):
        res = ideal_sub.reduce(vec)
        return [res[j] for j in free]

    names = [a.names[j] for j in free]
    degrees = [a.degrees[j] for j in free]
    n = a.dim
    left = [[project(a.mul_vec(basis_vec(f, n, b), basis_vec(f, n, i)))
             for i in free] for b in range(n)]
    right = [[project(a.mul_vec(basis_vec(f, n, i), basis_vec(f, n, b)))
              for b in range(n)] for i in free]
    diff = [project(a.diff_vec(basis_vec(f, n, i))) for i in free]
    return DgBimodule(a, names, degrees, left, right, diff)


def envelope_module(a: FdDga, env: FdDga | None = None) -> DgModule:
    """A as a right module over its enveloping algebra."""
    return diagonal_bimodule(a).to_envelope_module(env)


# -- strict Hom and tensor ----------------------------------------------------


class HomComplex:
    """Hom_A(M, N) with a chosen basis of maps in every degree."""

    __slots__ = ("source", "target", "field", "maps", "_complex", "_solvers")

    def __init__(self, source: DgModule, target: DgModule):
        if source.algebra is not target.algebra and \
                not source.algebra.same_tables(target.algebra):
            raise ModuleError("Hom requires modules over the same algebra")
        self.source = source
        self.target = target
        self.field = source.field
        self.maps = {}
        self._complex = None
        self._solvers = {}
        self._build()

    def _degree_range(self):
        if self.source.dim == 0 or self.target.dim == 0:
            return []
        lo = min(self.target.degrees) - max(self.source.degrees)
        hi = max(self.target.degrees) - min(self.source.degrees)
        return range(lo, hi + 1)

    def _pairs(self, t: int):
        src, tgt = self.source, self.target
        return [(l, i) for l in range(tgt.dim) for i in range(src.dim)
                if tgt.degrees[l] == src.degrees[i] + t]

    def _build(self):
        src, tgt = self.source, self.target
        f = self.field
        na = src.algebra.dim
        for t in self._degree_range():
            pairs = self._pairs(t)
            if not pairs:
                continue
            pos = {p: c for c, p in enumerate(pairs)}
            rows = []
            for i in range(src.dim):
                for j in range(na):
                    acted = src.action[i][j]
                    for l in range(tgt.dim):
                        row = [f.zero()] * len(pairs)
                        touched = False
                        # f(m_i * a_j) component on n_l
                        for i2, c in enumerate(acted):
                            if c and (l, i2) in pos:
                                row[pos[(l, i2)]] = row[pos[(l, i2)]] + c
                                touched = True
                        # minus (f(m_i) * a_j) component on n_l
                        for l2 in range(tgt.dim):
                            if (l2, i) in pos:
                                c = tgt.action[l2][j][l]
                                if c:
                                    row[pos[(l2, i)]] = row[pos[(l2, i)]] - c
                                    touched = True
                        if touched:
                            rows.append(row)
            if rows:
                mat = Matrix(f, len(rows), len(pairs), rows)
                basis = kernel_basis(mat)
            else:
                basis = Matrix.identity(f, len(pairs)).data
            out = []
            for vec in basis:
                data = [[f.zero()] * src.dim for _ in range(tgt.dim)]
                for c, (l, i) in enumerate(pairs):
                    if vec[c]:
                        data[l][i] = vec[c]
                out.append(ModuleMap(src, tgt, t, Matrix(f, tgt.dim, src.dim, data)))
            if out:
                self.maps[t] = out

    def dims(self):
        return {t: len(ms) for t, ms in self.maps.items()}

    def coords_of(self, mm: ModuleMap):
        """Coordinates of a map in the chosen basis of its degree."""
        t = mm.degree
        basis = self.maps.get(t, [])
        pairs = self._pairs(t)
        if not basis:
            if all(not mm.matrix.data[l][i] for (l, i) in pairs):
                return []
            return None
        target = [mm.matrix.data[l][i] for (l, i) in pairs]
        solver = self._solvers.get(t)
        if solver is None or solver[1] is not basis:
            cols = [[b.matrix.data[l][i] for (l, i) in pairs] for b in basis]
            mat = Matrix(self.field, len(pairs), len(basis),
                         [[cols[c][r] for c in range(len(basis))]
                          for r in range(len(pairs))])
            solver = (PresolvedSystem(mat), basis)
            self._solvers[t] = solver
        return solver[0].solve(target)

    def complex(self) -> Complex:
        if self._complex is None:
            f = self.field
            spaces = {t: len(ms) for t, ms in self.maps.items()}
            diffs = {}
            for t, ms in self.maps.items():
                nxt = self.maps.get(t + 1, [])
                cols = []
                for mm in ms:
                    dm = mm.hom_differential()
                    coords = self.coords_of(dm)
                    if coords is None:
                        raise ModuleError("hom differential leaves the computed basis")
                    cols.append(coords)
                diffs[t] = Matrix(f, len(nxt), len(ms),
                                  [[cols[c][r] for c in range(len(ms))]
                                   for r in range(len(nxt))])
            self._complex = Complex(f, spaces, diffs)
        return self._complex

    def cohomology(self) -> CohomologyTable:
        return self.complex().cohomology()


def strict_hom(m: DgModule, n: DgModule) -> HomComplex:
    return HomComplex(m, n)


def end_dga(m: DgModule):
    """(strict endomorphism DGA of m, the underlying HomComplex).

    The degree 0 basis is repaired so the identity map is literally a
    basis element, which the FdDga unit slot requires.
    """
    h = HomComplex(m, m)
    f = m.field
    idmap = ModuleMap.identity(m)
    id_coords = h.coords_of(idmap)
    if id_coords is None:
        raise ModuleError("identity map missing from its Hom complex")
    first = next((i for i, c in enumerate(id_coords) if c), None)
    if first is None:
        raise ModuleError("identity map is zero")
    if [c for c in id_coords] != [f.one() if i == first else f.zero()
                                  for i in range(len(id_coords))]:
        repaired = list(h.maps[0])
        repaired[first] = idmap
        h.maps[0] = repaired
        h._complex = None
        h._solvers.pop(0, None)
    entries = [(t, k) for t in sorted(h.maps) for k in range(len(h.maps[t]))]
    pos = {e: c for c, e in enumerate(entries)}
    n = len(entries)
    names = [f"h{t}_{k}" for t, k in entries]
    degrees = [t for t, _ in entries]

    def coords_global(mm: ModuleMap):
        coords = h.coords_of(mm)
        if coords is None:
            raise ModuleError("composition leaves the computed Hom basis")
        v = vec_zero(f, n)
        for k, c in enumerate(coords):
            if c:
                v[pos[(mm.degree, k)]] = c
        return v

    unit_vec = coords_global(idmap)
    unit = next((i for i, c in enumerate(unit_vec) if c), None)
    if unit is None or unit_vec != basis_vec(f, n, unit):
        raise ModuleError("identity is not a basis element of End after repair")
    mul = []
    for t1, k1 in entries:
        row = []
        g1 = h.maps[t1][k1]
        for t2, k2 in entries:
            row.append(coords_global(g1.compose(h.maps[t2][k2])))
        mul.append(row)
    diff = [coords_global(h.maps[t][k].hom_differential()) for t, k in entries]
    alg = FdDga(f, names, degrees, unit, mul, diff)
    return alg, h


def hom_end_module(m: DgModule, n: DgModule, e: FdDga, h_mm: HomComplex) -> DgModule:
    """Hom_A(m, n) as a right module over e = End(m), acting by composition."""
    h = HomComplex(m, n)
    f = m.field
    entries = [(t, k) for t in sorted(h.maps) for k in range(len(h.maps[t]))]
    pos = {en: c for c, en in enumerate(entries)}
    nn = len(entries)
    names = [f"p{t}_{k}" for t, k in entries]
    degrees = [t for t, _ in entries]
    e_entries = [(t, k) for t in sorted(h_mm.maps) for k in range(len(h_mm.maps[t]))]

    def coords_global(mm: ModuleMap):
        coords = h.coords_of(mm)
        if coords is None:
            raise ModuleError("action leaves the computed Hom basis")
        v = vec_zero(f, nn)
        for k, c in enumerate(coords):
            if c:
                v[pos[(mm.degree, k)]] = c
        return v

    action = []
    for t1, k1 in entries:
        phi = h.maps[t1][k1]
        row = []
        for t2, k2 in e_entries:
            row.append(coords_global(phi.compose(h_mm.maps[t2][k2])))
        action.append(row)
    diff = [coords_global(h.maps[t][k].hom_differential()) for t, k in entries]
    return DgModule(e, names, degrees, action, diff)


class TensorComplex:
    """M ⊗_A N for a right module M and a left module N (given over A^op).

    The coequalizer is taken degreewise on the pair basis; quotient
    coordinates are the pivot-free pair coordinates.
    """

    __slots__ = ("m", "n", "field", "pair_names", "pair_degrees", "relations",
                 "free", "_complex")

    def __init__(self, m: DgModule, n: DgModule):
        if not m.algebra.same_tables(opposite_dga(n.algebra)):
            raise ModuleError("tensor factors are not over opposite algebras")
        self.m = m
        self.n = n
        self.field = m.field
        f = m.field
        nm, nn = m.dim, n.dim
        self.pair_names = [f"{a}⊗{b}" for a in m.names for b in n.names]
        self.pair_degrees = [m.degrees[i] + n.degrees[l]
                             for i in range(nm) for l in range(nn)]
        na = m.algebra.dim
        rels = []
        for i in range(nm):
            for j in range(na):
                acted = m.action[i][j]
                for l in range(nn):
                    v = vec_zero(f, nm * nn)
                    for i2, c in enumerate(acted):
                        if c:
                            v[i2 * nn + l] = v[i2 * nn + l] + c
                    # a·n = (-1)^{|a||n|} n·a^op
                    sgn = _sign(f, m.algebra.degrees[j] * n.degrees[l])
                    for l2, c in enumerate(n.action[l][j]):
                        if c:
                            v[i * nn + l2] = v[i * nn + l2] - sgn * c
                    if any(v):
                        rels.append(v)
        self.relations = Subspace.from_vectors(f, nm * nn, rels)
        self.free = self.relations.free_coordinates()
        self._complex = None

    def project(self, pair_vec):
        res = self.relations.reduce(pair_vec)
        return [res[j] for j in self.free]

    def pair_diff(self, flat_index: int):
        nm, nn = self.m.dim, self.n.dim
        i, l = divmod(flat_index, nn)
        f = self.field
        v = vec_zero(f, nm * nn)
        for i2, c in enumerate(self.m.diff[i]):
            if c:
                v[i2 * nn + l] = v[i2 * nn + l] + c
        sgn = _sign(f, self.m.degrees[i])
        for l2, c in enumerate(self.n.diff[l]):
            if c:
                v[i * nn + l2] = v[i * nn + l2] + sgn * c
        return v

    def quotient_degrees(self):
        return [self.pair_degrees[j] for j in self.free]

    def complex(self) -> Complex:
        if self._complex is None:
            f = self.field
            degrees = self.quotient_degrees()
            by_deg = {}
            for c, d in enumerate(degrees):
                by_deg.setdefault(d, []).append(c)
            spaces = {d: len(ix) for d, ix in by_deg.items()}
            diffs = {}
            for d, ix in by_deg.items():
                tgt = by_deg.get(d + 1, [])
                cols = []
                for c in ix:
                    img = self.project(self.pair_diff(self.free[c]))
                    cols.append([img[r] for r in tgt])
                diffs[d] = Matrix(f, len(tgt), len(ix),
                                  [[cols[cc][r] for cc in range(len(ix))]
                                   for r in range(len(tgt))])
            self._complex = Complex(f, spaces, diffs)
        return self._complex

    def cohomology(self) -> CohomologyTable:
        return self.complex().cohomology()

    def total_dim(self) -> int:
        return len(self.free)


def strict_tensor(m: DgModule, n: DgModule) -> TensorComplex:
    return TensorComplex(m, n)


# -- seeded random modules ----------------------------------------------------


def random_module(a: FdDga, seed: int, size_budget: int) -> DgModule:
    """Iterated cones of shifts of A and A/J- along random chain maps.

    Valid by construction and reproducible per seed.
    """
    from .radical import dg_ideals  # local import, radical depends on modules

    rng = random.Random(seed)
    if a.is_zero_ring:
        return zero_module(a)
    blocks = [regular_module(a)]
    if not a.cohomology().is_zero():
        j_minus, _ = dg_ideals(a)
        aj = quotient_by_ideal_module(a, j_minus.subspace)
        if aj.dim:
            blocks.append(aj)

    def pick_block():
        b = blocks[rng.randrange(len(blocks))]
        return shift(b, rng.randrange(-1, 2))

    m = pick_block()
    for _ in range(max(0, size_budget - 1)):
        p = pick_block()
        h = strict_hom(p, m)
        cocycles = []
        zero_maps = h.maps.get(0, [])
        if zero_maps:
            cx = h.complex()
            for vec in cx.cocycles(0):
                cocycles.append(vec)
        if cocycles:
            f = a.field
            combo = [f.zero()] * len(zero_maps)
            for vec in cocycles:
                c = f.of(rng.randrange(-2, 3))
                if c:
                    combo = [x + c * v for x, v in zip(combo, vec)]
            data = [[f.zero()] * p.dim for _ in range(m.dim)]
            for k, c in enumerate(combo):
                if c:
                    bm = zero_maps[k].matrix
                    for r in range(m.dim):
                        for s in range(p.dim):
                            if bm.data[r][s]:
                                data[r][s] = data[r][s] + c * bm.data[r][s]
            fmap = ModuleMap(p, m, 0, Matrix(f, m.dim, p.dim, data))
        else:
            fmap = ModuleMap.zero(p, m, 0)
        m = cone(fmap)
    return shift(m, rng.randrange(-1, 2))

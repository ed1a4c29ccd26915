"""Finite dimensional DG algebras given by structure constants.

An FdDga is a graded basis with a multiplication table, a unit basis
element and a degree +1 differential.  The zero ring (empty basis) is a
legal value; quotients by the whole algebra produce it and downstream
operations short-circuit on it.
"""

from __future__ import annotations

from .complexes import CohomologyTable, Complex
from .field import FieldSpec
from .linalg import Matrix


class DgaError(ValueError):
    pass


def vec_zero(field, n):
    return [field.zero()] * n


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, u):
    return [c * a for a in u]


def vec_neg(u):
    return [-a for a in u]


def basis_vec(field, n, i):
    v = vec_zero(field, n)
    v[i] = field.one()
    return v


class FdDga:
    """Structure-constant DGA.  Treat instances as immutable.

    mul[i][j] is the coefficient vector of b_i * b_j, diff[i] the vector
    of d(b_i).  unit is the index of the basis element 1, or None for
    the zero ring.
    """

    __slots__ = ("field", "names", "degrees", "unit", "mul", "diff", "_cache")

    def __init__(self, field: FieldSpec, names, degrees, unit, mul, diff):
        self.field = field
        self.names = list(names)
        self.degrees = list(degrees)
        self.unit = unit
        self.mul = mul
        self.diff = diff
        self._cache = {}
        n = len(self.names)
        if len(self.degrees) != n:
            raise DgaError("names/degrees length mismatch")
        if n and (unit is None or not 0 <= unit < n):
            raise DgaError("unit index out of range")
        if len(set(self.names)) != n:
            raise DgaError("duplicate basis names")

    # -- basic structure ------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def is_zero_ring(self) -> bool:
        return self.dim == 0

    @staticmethod
    def zero_ring(field: FieldSpec) -> "FdDga":
        return FdDga(field, [], [], None, [], [])

    @staticmethod
    def build(field: FieldSpec, basis, unit_name: str, mul_entries, diff_entries) -> "FdDga":
        """Construct from sparse tables keyed by basis names.

        basis: list of (name, degree); mul_entries: (left, right) ->
        {name: coeff}; diff_entries: name -> {name: coeff}.  Unspecified
        entries are zero.
        """
        names = [b[0] for b in basis]
        degrees = [b[1] for b in basis]
        index = {name: i for i, name in enumerate(names)}
        if unit_name not in index:
            raise DgaError(f"unit {unit_name!r} is not a basis element")
        n = len(names)

        def combo(d):
            v = vec_zero(field, n)
            for name, c in d.items():
                if name not in index:
                    raise DgaError(f"unknown basis element {name!r}")
                v[index[name]] = v[index[name]] + field.of(c)
            return v

        mul = [[vec_zero(field, n) for _ in range(n)] for _ in range(n)]
        for (ln, rn), d in mul_entries.items():
            if ln not in index or rn not in index:
                raise DgaError(f"unknown basis element in product ({ln!r}, {rn!r})")
            mul[index[ln]][index[rn]] = combo(d)
        diff = [vec_zero(field, n) for _ in range(n)]
        for name, d in diff_entries.items():
            if name not in index:
                raise DgaError(f"unknown basis element {name!r} in differential")
            diff[index[name]] = combo(d)
        return FdDga(field, names, degrees, index[unit_name], mul, diff)

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def basis_by_degree(self):
        key = "by_degree"
        if key not in self._cache:
            out = {}
            for i, d in enumerate(self.degrees):
                out.setdefault(d, []).append(i)
            self._cache[key] = out
        return self._cache[key]

    def degrees_present(self):
        return sorted(self.basis_by_degree())

    def amplitude(self):
        """(min degree, max degree) of the underlying graded space."""
        if self.is_zero_ring:
            return (0, 0)
        return (min(self.degrees), max(self.degrees))

    def one_vec(self):
        return basis_vec(self.field, self.dim, self.unit)

    # -- element arithmetic ---------------------------------------------

    def mul_vec(self, u, v):
        n = self.dim
        out = vec_zero(self.field, n)
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mul[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                tij = row[j]
                for k, t in enumerate(tij):
                    if t:
                        out[k] = out[k] + c * t
        return out

    def diff_vec(self, u):
        n = self.dim
        out = vec_zero(self.field, n)
        for i, a in enumerate(u):
            if not a:
                continue
            di = self.diff[i]
            for k, t in enumerate(di):
                if t:
                    out[k] = out[k] + a * t
        return out

    def left_mult_matrix(self, u) -> Matrix:
        """Matrix of x -> u*x on global coordinates."""
        cols = [self.mul_vec(u, basis_vec(self.field, self.dim, j)) for j in range(self.dim)]
        return Matrix(self.field, self.dim, self.dim,
                      [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def right_mult_matrix(self, u) -> Matrix:
        cols = [self.mul_vec(basis_vec(self.field, self.dim, j), u) for j in range(self.dim)]
        return Matrix(self.field, self.dim, self.dim,
                      [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def vec_degree(self, u):
        """Degree of a homogeneous vector, or None for 0 / mixed."""
        degs = {self.degrees[i] for i, a in enumerate(u) if a}
        if len(degs) != 1:
            return None
        return degs.pop()

    # -- the underlying complex -----------------------------------------

    def local_index(self):
        """degree -> list of global indices, plus global -> (degree, pos)."""
        key = "local_index"
        if key not in self._cache:
            by_deg = self.basis_by_degree()
            pos = {}
            for d, idxs in by_deg.items():
                for p, i in enumerate(idxs):
                    pos[i] = (d, p)
            self._cache[key] = (by_deg, pos)
        return self._cache[key]

    def restrict_to_degree(self, vec, degree: int):
        by_deg = self.basis_by_degree()
        return [vec[i] for i in by_deg.get(degree, [])]

    def diff_matrix(self, degree: int) -> Matrix:
        """d: A^degree -> A^{degree+1} in per-degree coordinates."""
        by_deg = self.basis_by_degree()
        src = by_deg.get(degree, [])
        tgt = by_deg.get(degree + 1, [])
        rows = []
        cols = [self.restrict_to_degree(self.diff[i], degree + 1) for i in src]
        for r in range(len(tgt)):
            rows.append([cols[c][r] for c in range(len(src))])
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

    def h_support(self):
        """(min, max) degree of nonzero cohomology, or None when acyclic."""
        degs = self.cohomology().nonzero_degrees()
        if not degs:
            return None
        return (degs[0], degs[-1])

    # -- comparison ------------------------------------------------------

    def same_tables(self, other: "FdDga") -> bool:
        return (self.field == other.field and self.names == other.names
                and self.degrees == other.degrees and self.unit == other.unit
                and self.mul == other.mul and self.diff == other.diff)

    def __repr__(self):
        if self.is_zero_ring:
            return "FdDga(zero ring)"
        degs = ",".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"FdDga({self.field.label}; {degs})"


def validate_dga(a: FdDga):
    """All axioms; returns a list of violation strings, empty when valid."""
    out = []
    if a.is_zero_ring:
        return out
    n = a.dim
    f = a.field
    if a.degrees[a.unit] != 0:
        out.append(f"unit basis element {a.names[a.unit]!r} is not in degree 0")
    for i in range(n):
        for j in range(n):
            want = a.degrees[i] + a.degrees[j]
            for k, c in enumerate(a.mul[i][j]):
                if c and a.degrees[k] != want:
                    out.append(
                        f"product ({a.names[i]},{a.names[j]}) has a component "
                        f"{a.names[k]} outside degree {want}")
                    break
    one = basis_vec(f, n, a.unit)
    for i in range(n):
        e = basis_vec(f, n, i)
        if a.mul_vec(one, e) != e:
            out.append(f"unit fails on the left at {a.names[i]}")
        if a.mul_vec(e, one) != e:
            out.append(f"unit fails on the right at {a.names[i]}")
    for i in range(n):
        for j in range(n):
            ij = a.mul[i][j]
            for k in range(n):
                lhs = a.mul_vec(ij, basis_vec(f, n, k))
                rhs = a.mul_vec(basis_vec(f, n, i), a.mul[j][k])
                if lhs != rhs:
                    out.append(f"associativity fails at ({a.names[i]},{a.names[j]},{a.names[k]})")
    for i in range(n):
        di = a.diff[i]
        deg = a.degrees[i]
        for k, c in enumerate(di):
            if c and a.degrees[k] != deg + 1:
                out.append(f"differential of {a.names[i]} is not homogeneous of degree +1")
                break
        if any(a.diff_vec(di)):
            out.append(f"d∘d nonzero at {a.names[i]}")
    for i in range(n):
        for j in range(n):
            lhs = a.diff_vec(a.mul[i][j])
            sign = f.one() if a.degrees[i] % 2 == 0 else -f.one()
            rhs = vec_add(a.mul_vec(a.diff[i], basis_vec(f, n, j)),
                          vec_scale(sign, a.mul_vec(basis_vec(f, n, i), a.diff[j])))
            if lhs != rhs:
                out.append(f"Leibniz fails at ({a.names[i]},{a.names[j]})")
    return out


def opposite_dga(a: FdDga) -> FdDga:
    """Graded opposite: x *op y = (-1)^{|x||y|} y * x, same differential."""
    if a.is_zero_ring:
        return a
    n = a.dim
    f = a.field
    mul = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = a.mul[j][i]
            if (a.degrees[i] * a.degrees[j]) % 2:
                v = vec_neg(v)
            mul[i][j] = list(v)
    return FdDga(f, list(a.names), list(a.degrees), a.unit, mul,
                 [list(v) for v in a.diff])


def tensor_dga(a: FdDga, b: FdDga) -> FdDga:
    """Graded tensor product with the Koszul sign (-1)^{|y||x'|}.

    Basis pairs are ordered with the left factor outermost, so the pair
    (i, j) sits at index i*dim(b) + j.
    """
    if a.field != b.field:
        raise DgaError("tensor factors live over different fields")
    if a.is_zero_ring or b.is_zero_ring:
        return FdDga.zero_ring(a.field)
    f = a.field
    na, nb = a.dim, b.dim
    n = na * nb
    names = [f"({an}⊗{bn})" for an in a.names for bn in b.names]
    degrees = [a.degrees[i] + b.degrees[j] for i in range(na) for j in range(nb)]
    unit = a.unit * nb + b.unit

    def embed(va, vb, sign_flip: bool):
        out = vec_zero(f, n)
        for i, ca in enumerate(va):
            if not ca:
                continue
            for j, cb in enumerate(vb):
                if cb:
                    c = ca * cb
                    out[i * nb + j] = out[i * nb + j] + (-c if sign_flip else c)
        return out

    mul = [[None] * n for _ in range(n)]
    for i in range(na):
        for j in range(nb):
            for i2 in range(na):
                flip = (b.degrees[j] * a.degrees[i2]) % 2 == 1
                prod_a = a.mul[i][i2]
                for j2 in range(nb):
                    mul[i * nb + j][i2 * nb + j2] = embed(prod_a, b.mul[j][j2], flip)

    diff = []
    for i in range(na):
        for j in range(nb):
            v = embed(a.diff[i], basis_vec(f, nb, j), False)
            sign_flip = a.degrees[i] % 2 == 1
            v = vec_add(v, embed(basis_vec(f, na, i), b.diff[j], sign_flip))
            diff.append(v)
    return FdDga(f, names, degrees, unit, mul, diff)


def enveloping_dga(a: FdDga) -> FdDga:
    """A^e = A^op ⊗ A."""
    return tensor_dga(opposite_dga(a), a)


class DgaMorphism:
    """Degree 0 algebra map given by its matrix on global coordinates."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FdDga, target: FdDga, matrix: Matrix):
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise DgaError("morphism matrix has wrong shape")

    def apply(self, vec):
        return self.matrix.apply(vec)

    def violations(self):
        out = []
        s, t = self.source, self.target
        for j in range(s.dim):
            img = self.matrix.col(j)
            for k, c in enumerate(img):
                if c and t.degrees[k] != s.degrees[j]:
                    out.append(f"image of {s.names[j]} is not degree preserving")
                    break
        if s.dim and t.dim and self.apply(s.one_vec()) != t.one_vec():
            out.append("unit is not preserved")
        for j in range(s.dim):
            if self.apply(s.diff[j]) != t.diff_vec(self.matrix.col(j)):
                out.append(f"does not commute with d at {s.names[j]}")
        for i in range(s.dim):
            for j in range(s.dim):
                lhs = self.apply(s.mul[i][j])
                rhs = t.mul_vec(self.matrix.col(i), self.matrix.col(j))
                if lhs != rhs:
                    out.append(f"not multiplicative at ({s.names[i]},{s.names[j]})")
        return out


# -- built-in example algebras -------------------------------------------


def builtin_example(name: str, field: FieldSpec | None = None) -> FdDga:
    """The six stock algebras used throughout the test corpus."""
    f = field or FieldSpec()
    if name == "point":
        return FdDga.build(f, [("1", 0)], "1", {("1", "1"): {"1": 1}}, {})
    if name == "dual_numbers":
        return FdDga.build(
            f, [("1", 0), ("x", 0)], "1",
            {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}},
            {})
    if name == "dual_numbers_deg1":
        return FdDga.build(
            f, [("1", 0), ("x", 1)], "1",
            {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}},
            {})
    if name == "acyclic":
        return FdDga.build(
            f, [("1", 0), ("e", -1)], "1",
            {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1}, ("e", "1"): {"e": 1}},
            {"e": {"1": 1}})
    if name == "a2_path":
        # upper triangular 2x2 matrices in the basis {1, e11, e12}
        return FdDga.build(
            f, [("1", 0), ("e11", 0), ("e12", 0)], "1",
            {("1", "1"): {"1": 1}, ("1", "e11"): {"e11": 1}, ("1", "e12"): {"e12": 1},
             ("e11", "1"): {"e11": 1}, ("e11", "e11"): {"e11": 1}, ("e11", "e12"): {"e12": 1},
             ("e12", "1"): {"e12": 1}},
            {})
    if name == "local_square_zero_2":
        return FdDga.build(
            f, [("1", 0), ("x", 0), ("y", 0)], "1",
            {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("1", "y"): {"y": 1},
             ("x", "1"): {"x": 1}, ("y", "1"): {"y": 1}},
            {})
    raise DgaError(f"unknown builtin algebra {name!r}")


BUILTIN_NAMES = ("point", "dual_numbers", "dual_numbers_deg1", "acyclic",
                 "a2_path", "local_square_zero_2")


def make_qq2(field: FieldSpec | None = None) -> FdDga:
    """k x k in the basis {1, e} with e^2 = e."""
    f = field or FieldSpec()
    return FdDga.build(
        f, [("1", 0), ("e", 0)], "1",
        {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1}, ("e", "1"): {"e": 1},
         ("e", "e"): {"e": 1}},
        {})


def _m2_tables():
    # M2(k) in the basis {1, a=e12, b=e21, c=e22}
    return {
        ("1", "1"): {"1": 1}, ("1", "a"): {"a": 1}, ("1", "b"): {"b": 1}, ("1", "c"): {"c": 1},
        ("a", "1"): {"a": 1}, ("b", "1"): {"b": 1}, ("c", "1"): {"c": 1},
        ("a", "b"): {"1": 1, "c": -1}, ("a", "c"): {"a": 1},
        ("b", "a"): {"c": 1},
        ("c", "b"): {"b": 1}, ("c", "c"): {"c": 1},
    }


def make_m2(field: FieldSpec | None = None) -> FdDga:
    """The 2x2 matrix algebra, concentrated in degree 0."""
    f = field or FieldSpec()
    return FdDga.build(f, [("1", 0), ("a", 0), ("b", 0), ("c", 0)], "1", _m2_tables(), {})


def make_m2_graded(field: FieldSpec | None = None) -> FdDga:
    """M2(k) with |e12| = 1 and |e21| = -1: semisimple with odd part."""
    f = field or FieldSpec()
    return FdDga.build(f, [("1", 0), ("a", 1), ("b", -1), ("c", 0)], "1", _m2_tables(), {})

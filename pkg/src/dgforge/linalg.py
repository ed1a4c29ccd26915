"""Deterministic exact linear algebra: matrices, rref, solving, subspaces.

Pivoting is always first-nonzero-column, topmost-row, so every reduced
form, kernel basis and quotient coordinate produced downstream is
reproducible bit for bit.  No floating point anywhere.
"""

from __future__ import annotations

from .field import FieldSpec


class LinAlgError(ValueError):
    pass


class Matrix:
    """Dense matrix over a FieldSpec.  Treat instances as immutable."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data):
        # data: list of row lists, already coerced scalars
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        if len(data) != rows or any(len(r) != cols for r in data):
            raise LinAlgError("matrix shape mismatch")

    @staticmethod
    def from_rows(field: FieldSpec, rows_in) -> "Matrix":
        data = [[field.of(x) for x in row] for row in rows_in]
        cols = len(data[0]) if data else 0
        return Matrix(field, len(data), cols, data)

    @staticmethod
    def zero(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        m = Matrix.zero(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @property
    def entries(self):
        """Row-major flat list of all entries."""
        return [x for row in self.data for x in row]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Matrix(self.field, self.cols, self.rows, data)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinAlgError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero()
        out = []
        odata = other.data
        for row in self.data:
            acc = [zero] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                orow = odata[k]
                for j, b in enumerate(orow):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.field, self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix times column vector (a flat list)."""
        if len(vec) != self.cols:
            raise LinAlgError("vector length mismatch")
        zero = self.field.zero()
        out = []
        for row in self.data:
            s = zero
            for a, v in zip(row, vec):
                if a and v:
                    s = s + a * v
            out.append(s)
        return out

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError("shape mismatch in add")
        data = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        return Matrix(self.field, self.rows, self.cols, data)

    def scale(self, c) -> "Matrix":
        data = [[c * a for a in row] for row in self.data]
        return Matrix(self.field, self.rows, self.cols, data)

    def neg(self) -> "Matrix":
        return self.scale(-self.field.one())

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise LinAlgError("column mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      [list(r) for r in self.data] + [list(r) for r in other.data])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise LinAlgError("row mismatch in hstack")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [list(r1) + list(r2) for r1, r2 in zip(self.data, other.data)])

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def _rref_rows(field: FieldSpec, rows):
    """In-place style rref on a list of row lists; returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        # first nonzero entry in column c at or below row r, topmost wins
        src = None
        for i in range(r, nrows):
            if rows[i][c]:
                src = i
                break
        if src is None:
            continue
        if src != r:
            rows[r], rows[src] = rows[src], rows[r]
        piv = rows[r][c]
        if piv != field.one():
            inv = field.one() / piv
            row_r = rows[r]
            for j in range(c, ncols):
                if row_r[j]:
                    row_r[j] = row_r[j] * inv
        row_r = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i = rows[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = row_i[j] - f * row_r[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix):
    """Reduced row echelon form and its pivot columns."""
    rows, pivots = _rref_rows(m.field, m.data)
    return Matrix(m.field, m.rows, m.cols, rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(a: Matrix, b: Matrix):
    """Some x with a.x = b, or None when inconsistent.

    Deterministic choice: free variables are set to zero after rref of
    the augmented system.
    """
    if a.rows != b.rows:
        raise LinAlgError("solve: row count mismatch")
    aug = a.hstack(b)
    red, pivots = rref(aug)
    for p in pivots:
        if p >= a.cols:
            return None  # pivot in the RHS block: inconsistent
    zero = a.field.zero()
    x = [[zero] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = red.data[i][a.cols + j]
    return Matrix(a.field, a.cols, b.cols, x)


def solve_vec(a: Matrix, vec):
    """solve() for a single column vector; returns a flat list or None."""
    b = Matrix(a.field, len(vec), 1, [[v] for v in vec])
    x = solve(a, b)
    return None if x is None else [row[0] for row in x.data]


def kernel_basis(m: Matrix):
    """Row vectors spanning the right kernel {v : m.v = 0}, rref order."""
    red, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    zero, one = m.field.zero(), m.field.one()
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for i, p in enumerate(pivots):
            coeff = red.data[i][f]
            if coeff:
                v[p] = -coeff
        basis.append(v)
    return basis


class PresolvedSystem:
    """a·x = b solved repeatedly for one a: rref with transform, computed once.

    Keeps the deterministic free-variables-zero convention of solve().
    """

    __slots__ = ("field", "rows", "cols", "reduced", "transform", "pivots")

    def __init__(self, a: Matrix):
        self.field = a.field
        self.rows = a.rows
        self.cols = a.cols
        aug = a.hstack(Matrix.identity(a.field, a.rows))
        red, pivots = rref(aug)
        self.pivots = [p for p in pivots if p < a.cols]
        self.reduced = [row[: a.cols] for row in red.data]
        self.transform = [row[a.cols:] for row in red.data]

    def solve(self, b):
        """x with a·x = b, free variables zero, or None."""
        f = self.field
        w = []
        for row in self.transform:
            s = f.zero()
            for c, v in zip(row, b):
                if c and v:
                    s = s + c * v
            w.append(s)
        rank = len(self.pivots)
        for i in range(rank, self.rows):
            if w[i]:
                return None
        x = [f.zero()] * self.cols
        for i, p in enumerate(self.pivots):
            x[p] = w[i]
        # consistency beyond the pivot block (non-pivot reduced rows vanish)
        return x


class Subspace:
    """Subspace of k^n stored as a reduced-echelon row basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Matrix, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @staticmethod
    def from_vectors(field: FieldSpec, ambient_dim: int, vectors) -> "Subspace":
        vecs = [list(v) for v in vectors if any(v)]
        if not vecs:
            return Subspace(field, ambient_dim, Matrix(field, 0, ambient_dim, []), [])
        rows, pivots = _rref_rows(field, vecs)
        rows = rows[: len(pivots)]
        return Subspace(field, ambient_dim, Matrix(field, len(rows), ambient_dim, rows), pivots)

    @staticmethod
    def zero(field: FieldSpec, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, Matrix(field, 0, ambient_dim, []), [])

    @staticmethod
    def full(field: FieldSpec, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, Matrix.identity(field, ambient_dim),
                        list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def reduce(self, vec):
        """Residual of vec after subtracting its pivot components."""
        res = list(vec)
        for i, p in enumerate(self.pivots):
            c = res[p]
            if c:
                row = self.basis.data[i]
                for j in range(self.ambient_dim):
                    if row[j]:
                        res[j] = res[j] - c * row[j]
        return res

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.data)

    def coords_of(self, vec):
        """Coefficients of vec in the echelon basis, or None."""
        res = list(vec)
        coords = []
        for i, p in enumerate(self.pivots):
            c = res[p]
            coords.append(c)
            if c:
                row = self.basis.data[i]
                for j in range(self.ambient_dim):
                    if row[j]:
                        res[j] = res[j] - c * row[j]
        if any(res):
            return None
        return coords

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("ambient dimension mismatch in sum")
        return Subspace.from_vectors(self.field, self.ambient_dim,
                                     list(self.basis.data) + list(other.basis.data))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("ambient dimension mismatch in intersect")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # kernel trick: vectors c with c.U = d.V for some d
        stacked = self.basis.transpose().hstack(other.basis.transpose().neg())
        vecs = []
        for k in kernel_basis(stacked):
            c = k[: self.dim]
            vec = [self.field.zero()] * self.ambient_dim
            for i, ci in enumerate(c):
                if ci:
                    row = self.basis.data[i]
                    for j in range(self.ambient_dim):
                        if row[j]:
                            vec[j] = vec[j] + ci * row[j]
            vecs.append(vec)
        return Subspace.from_vectors(self.field, self.ambient_dim, vecs)

    def preimage(self, linmap: Matrix) -> "Subspace":
        """{v : linmap.v in self}; linmap maps k^cols into k^ambient."""
        if linmap.rows != self.ambient_dim:
            raise LinAlgError("map target does not match ambient dimension")
        # residual-after-reduction is linear; its kernel is the preimage
        res_rows = []
        for i in range(self.ambient_dim):
            res_rows.append(list(linmap.data[i]))
        for i, p in enumerate(self.pivots):
            brow = self.basis.data[i]
            prow = linmap.data[p]
            for r in range(self.ambient_dim):
                c = brow[r]
                if c:
                    row = res_rows[r]
                    for j in range(linmap.cols):
                        if prow[j]:
                            row[j] = row[j] - c * prow[j]
        residual = Matrix(self.field, self.ambient_dim, linmap.cols, res_rows)
        return Subspace.from_vectors(self.field, linmap.cols, kernel_basis(residual))

    def complement(self) -> "Subspace":
        """Coordinate subspace on the pivot-free coordinates."""
        pivset = set(self.pivots)
        zero, one = self.field.zero(), self.field.one()
        vecs = []
        for j in range(self.ambient_dim):
            if j not in pivset:
                v = [zero] * self.ambient_dim
                v[j] = one
                vecs.append(v)
        return Subspace.from_vectors(self.field, self.ambient_dim, vecs)

    def free_coordinates(self):
        pivset = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in pivset]

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"


def subspace_combine(kind: str, *args) -> Subspace:
    """Dispatch for sum / intersect / preimage / complement."""
    if kind == "sum":
        u, v = args
        return u.sum(v)
    if kind == "intersect":
        u, v = args
        return u.intersect(v)
    if kind == "preimage":
        linmap, target = args
        return target.preimage(linmap)
    if kind == "complement":
        (u,) = args
        return u.complement()
    raise LinAlgError(f"unknown subspace operation {kind!r}")

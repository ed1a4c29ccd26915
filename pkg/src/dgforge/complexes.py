"""Finite cochain complexes over a field and their cohomology tables."""

from __future__ import annotations

from .field import FieldSpec
from .linalg import LinAlgError, Matrix, Subspace, kernel_basis, rank, solve_vec


class CohomologyTable:
    """Map degree -> (dimension, certified flag).

    Degrees absent from the table are zero; for windowed computations a
    degree may carry certified=False, meaning the reported dimension is
    what the truncation sees and deeper truncations may change it.
    """

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = dict(entries or {})

    def set(self, degree: int, dim: int, certified: bool = True):
        self.entries[degree] = (dim, certified)

    def dim(self, degree: int) -> int:
        return self.entries.get(degree, (0, True))[0]

    def certified(self, degree: int) -> bool:
        return self.entries.get(degree, (0, True))[1]

    def degrees(self):
        return sorted(self.entries)

    def nonzero_degrees(self):
        return sorted(d for d, (n, _) in self.entries.items() if n)

    def certified_nonzero_degrees(self):
        return sorted(d for d, (n, c) in self.entries.items() if n and c)

    def is_zero(self) -> bool:
        return not self.nonzero_degrees()

    def total_dim(self) -> int:
        return sum(n for n, _ in self.entries.values())

    def restrict(self, lo: int, hi: int) -> "CohomologyTable":
        return CohomologyTable({d: v for d, v in self.entries.items() if lo <= d <= hi})

    def dims_equal(self, other: "CohomologyTable") -> bool:
        degs = set(self.entries) | set(other.entries)
        return all(self.dim(d) == other.dim(d) for d in degs)

    def to_json(self):
        return {str(d): {"dim": n, "certified": c} for d, (n, c) in sorted(self.entries.items())}

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        degs = set(self.entries) | set(other.entries)
        return all(self.entries.get(d, (0, True)) == other.entries.get(d, (0, True))
                   for d in degs)

    def __repr__(self):
        parts = [f"{d}: {n}{'' if c else '?'}" for d, (n, c) in sorted(self.entries.items()) if n or not c]
        return "H{" + ", ".join(parts) + "}"


class Complex:
    """Cochain complex with finitely many nonzero finite pieces.

    spaces: degree -> dimension, diffs: degree i -> Matrix C^i -> C^{i+1}.
    """

    __slots__ = ("field", "spaces", "diffs", "_cache")

    def __init__(self, field: FieldSpec, spaces, diffs, check: bool = True):
        self.field = field
        self.spaces = {d: n for d, n in spaces.items() if n}
        self.diffs = {}
        for d, m in diffs.items():
            if m.rows != self.spaces.get(d + 1, 0) or m.cols != self.spaces.get(d, 0):
                raise LinAlgError(f"differential at degree {d} has wrong shape")
            if not m.is_zero():
                self.diffs[d] = m
        self._cache = {}
        if check:
            bad = self.composite_violations()
            if bad:
                raise LinAlgError(f"not a complex: d∘d nonzero at degrees {bad}")

    def composite_violations(self):
        bad = []
        for d, m in self.diffs.items():
            nxt = self.diffs.get(d + 1)
            if nxt is not None and not nxt.mul(m).is_zero():
                bad.append(d)
        return bad

    def dim(self, degree: int) -> int:
        return self.spaces.get(degree, 0)

    def degrees(self):
        return sorted(self.spaces)

    def diff(self, degree: int) -> Matrix:
        m = self.diffs.get(degree)
        if m is None:
            m = Matrix.zero(self.field, self.dim(degree + 1), self.dim(degree))
        return m

    def cocycles(self, degree: int):
        """Row basis of ker d^degree."""
        n = self.dim(degree)
        if n == 0:
            return []
        if degree not in self.diffs:
            return Matrix.identity(self.field, n).data
        return kernel_basis(self.diffs[degree])

    def boundary_space(self, degree: int) -> Subspace:
        """Image of d^{degree-1} inside C^degree."""
        n = self.dim(degree)
        prev = self.diffs.get(degree - 1)
        if prev is None or n == 0:
            return Subspace.zero(self.field, n)
        return Subspace.from_vectors(self.field, n, prev.transpose().data)

    def cohomology(self) -> CohomologyTable:
        key = "cohomology"
        if key not in self._cache:
            table = CohomologyTable()
            for d in self.degrees():
                n = self.dim(d)
                r_out = rank(self.diffs[d]) if d in self.diffs else 0
                r_in = rank(self.diffs[d - 1]) if d - 1 in self.diffs else 0
                h = n - r_out - r_in
                if h:
                    table.set(d, h, True)
            self._cache[key] = table
        return self._cache[key]

    def cohomology_basis(self, degree: int):
        """Representative cocycles for a basis of H^degree (deterministic)."""
        key = ("hbasis", degree)
        if key not in self._cache:
            bnd = self.boundary_space(degree)
            reps = []
            span = Subspace.from_vectors(self.field, self.dim(degree), bnd.basis.data)
            for z in self.cocycles(degree):
                if not span.contains(z):
                    reps.append(z)
                    span = span.sum(Subspace.from_vectors(self.field, self.dim(degree), [z]))
            self._cache[key] = reps
        return self._cache[key]

    def class_coords(self, degree: int, vec):
        """Coordinates of a cocycle's class in the cohomology_basis, or None.

        None signals that vec is not a cocycle-plus-boundary combination,
        which cannot happen for genuine cocycles.
        """
        reps = self.cohomology_basis(degree)
        bnd = self.boundary_space(degree)
        cols = [list(r) for r in reps] + [list(b) for b in bnd.basis.data]
        if not cols:
            return [] if not any(vec) else None
        m = Matrix(self.field, len(vec), len(cols),
                   [[cols[j][i] for j in range(len(cols))] for i in range(len(vec))])
        x = solve_vec(m, list(vec))
        if x is None:
            return None
        return x[: len(reps)]


def cohomology_of_complex(spaces, diffs, field: FieldSpec | None = None) -> CohomologyTable:
    """Cohomology of a strict finite complex; every entry is certified."""
    if field is None:
        for m in diffs.values():
            field = m.field
            break
        else:
            field = FieldSpec()
    return Complex(field, spaces, diffs).cohomology()

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgforge.field import FieldSpec, Fp
from dgforge.linalg import (Matrix, Subspace, kernel_basis, rref, solve,
                            subspace_combine)

QQ = FieldSpec()
F2 = FieldSpec(2)
F5 = FieldSpec(5)


def mat(field, rows):
    return Matrix.from_rows(field, rows)


def test_rref_identity():
    m = Matrix.identity(QQ, 2)
    red, piv = rref(m)
    assert red == m and piv == [0, 1]


def test_rref_rank_one():
    red, piv = rref(mat(QQ, [[2, 4], [1, 2]]))
    assert red == mat(QQ, [[1, 2], [0, 0]])
    assert piv == [0]


def test_rref_char_two():
    red, piv = rref(mat(F2, [[1, 1], [1, 1]]))
    assert red == mat(F2, [[1, 1], [0, 0]])
    assert piv == [0]


def test_solve_identity():
    b = mat(QQ, [[3], [5]])
    assert solve(Matrix.identity(QQ, 2), b) == b


def test_solve_free_variable_tie_break():
    # free variables are set to zero
    x = solve(mat(QQ, [[1, 1]]), mat(QQ, [[2]]))
    assert x == mat(QQ, [[2], [0]])


def test_solve_inconsistent():
    assert solve(mat(QQ, [[0]]), mat(QQ, [[1]])) is None


def test_subspace_sum_basis_vectors():
    e1 = Subspace.from_vectors(QQ, 3, [[1, 0, 0]])
    e2 = Subspace.from_vectors(QQ, 3, [[0, 1, 0]])
    s = subspace_combine("sum", e1, e2)
    assert s.dim == 2 and s.contains([Fraction(1), Fraction(1), Fraction(0)])


def test_subspace_intersect_trivial():
    u = Subspace.from_vectors(QQ, 2, [[1, 1]])
    v = Subspace.from_vectors(QQ, 2, [[1, 0]])
    assert subspace_combine("intersect", u, v).dim == 0


def test_subspace_preimage_projection():
    # (x, y) -> x e1: preimage of span{e1} is the whole plane
    proj = mat(QQ, [[1, 0], [0, 0]])
    target = Subspace.from_vectors(QQ, 2, [[1, 0]])
    pre = subspace_combine("preimage", proj, target)
    assert pre.dim == 2


def test_complement_of_plane():
    u = Subspace.from_vectors(QQ, 3, [[1, 0, 2], [0, 1, 3]])
    c = subspace_combine("complement", u)
    assert c.dim == 1
    assert c.sum(u).dim == 3
    assert c.intersect(u).dim == 0


small_entries = st.integers(min_value=-4, max_value=4)


def matrices(field, max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(small_entries, min_size=c, max_size=c),
                               min_size=r, max_size=r))).map(
        lambda rows: Matrix.from_rows(field, rows))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(matrices(QQ))
def test_rref_idempotent(m):
    red, piv = rref(m)
    red2, piv2 = rref(red)
    assert red2 == red and piv2 == piv


@settings(max_examples=60, deadline=None, derandomize=True)
@given(matrices(F5))
def test_rref_idempotent_fp(m):
    red, piv = rref(m)
    assert rref(red)[0] == red


@settings(max_examples=60, deadline=None, derandomize=True)
@given(matrices(QQ), st.lists(small_entries, min_size=1, max_size=4))
def test_solve_is_exact(m, xs):
    # build a solvable system and check a·solve(a,b) = b exactly
    x = [Fraction(v) for v in xs[: m.cols]] + [Fraction(0)] * max(0, m.cols - len(xs))
    b = m.apply(x)
    bm = Matrix(QQ, m.rows, 1, [[v] for v in b])
    sol = solve(m, bm)
    assert sol is not None
    assert m.mul(sol) == bm


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(1, 4),
       st.lists(st.lists(small_entries, min_size=4, max_size=4), min_size=0, max_size=3),
       st.lists(st.lists(small_entries, min_size=4, max_size=4), min_size=0, max_size=3))
def test_dimension_formula(n, us, vs):
    u = Subspace.from_vectors(QQ, 4, [[Fraction(x) for x in r] for r in us])
    v = Subspace.from_vectors(QQ, 4, [[Fraction(x) for x in r] for r in vs])
    assert u.sum(v).dim + u.intersect(v).dim == u.dim + v.dim


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.lists(st.lists(small_entries, min_size=4, max_size=4), min_size=0, max_size=4))
def test_complement_decomposition(us):
    u = Subspace.from_vectors(QQ, 4, [[Fraction(x) for x in r] for r in us])
    c = u.complement()
    assert u.sum(c).dim == 4
    assert u.intersect(c).dim == 0


def test_kernel_basis_matches_solve():
    m = mat(QQ, [[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert not any(m.apply(v))


def test_fp_arithmetic():
    a, b = Fp(3, 5), Fp(4, 5)
    assert (a + b).val == 2
    assert (a * b).val == 2
    assert (a / b).val == (3 * pow(4, 3, 5)) % 5
    assert not Fp(0, 5)
    with pytest.raises(ZeroDivisionError):
        a / Fp(0, 5)


def test_field_spec_parsing():
    assert FieldSpec.parse("Q").p is None
    assert FieldSpec.parse("Fp:7").p == 7
    with pytest.raises(Exception):
        FieldSpec(6)

import random

import pytest
from fractions import Fraction

from dgforge.dga import builtin_example, opposite_dga
from dgforge.derived import simple_quotient_module, simple_quotient_op_module
from dgforge.linalg import Matrix, Subspace
from dgforge.modules import (DgModule, ModuleError, ModuleMap, cone,
                             cone_inclusion, envelope_module, free_module,
                             k_dual, quotient_module, random_module,
                             regular_module, shift, side_swap, strict_hom,
                             strict_tensor, submodule_module, validate_module)
from oracles import hom_space_dims
from conftest import t2_simple


def k_over(a):
    return simple_quotient_module(a)


def test_validate_free(D):
    assert validate_module(regular_module(D)) == []


def test_validate_trivial_action(D):
    assert validate_module(k_over(D)) == []


def test_validate_forced_failure(D):
    # x acting by 1 on k: x² acts by 1 but x² = 0
    f = D.field
    bad = DgModule(D, ["m"], [0],
                   [[[f.one()], [f.one()]]], [[f.zero()]])
    out = validate_module(bad)
    assert any("associativity" in v for v in out)


def test_shift_zero_is_identity(D):
    m = regular_module(D)
    assert shift(m, 0) is m


def test_shift_moves_cohomology(D):
    k = k_over(D)
    s = shift(k, 1)
    assert s.cohomology().dim(-1) == 1
    assert validate_module(s) == []


def test_shift_involution(X):
    m = regular_module(X)
    assert shift(shift(m, 1), -1).same_tables(m)


def test_cone_identity_acyclic(D, X, ACY):
    for a in (D, X, ACY):
        c = cone(ModuleMap.identity(regular_module(a)))
        assert validate_module(c) == []
        assert c.cohomology().is_zero()


def test_cone_zero_map_splits(D):
    k = k_over(D)
    m = regular_module(D)
    c = cone(ModuleMap.zero(k, m, 0))
    hc = c.cohomology()
    hk, hm = k.cohomology(), m.cohomology()
    for d in set(list(hc.entries) + list(hm.entries) + [e - 1 for e in hk.entries]):
        assert hc.dim(d) == hm.dim(d) + hk.dim(d + 1)


def test_cone_multiplication_by_x(D):
    # direct 4-dimensional computation: H(cone(D --x--> D)) is k in
    # degrees -1 and 0
    m = regular_module(D)
    x_mat = m.action_matrix([D.field.zero(), D.field.one()])
    f = ModuleMap(m, m, 0, x_mat)
    assert f.is_chain_map()
    c = cone(f)
    t = c.cohomology()
    assert t.dim(-1) == 1 and t.dim(0) == 1 and t.total_dim() == 2


def test_cone_requires_chain_map(ACY):
    m = regular_module(ACY)
    bad = ModuleMap(m, m, 0, Matrix.from_rows(ACY.field, [[0, 0], [1, 0]]))
    with pytest.raises(ModuleError):
        cone(bad)


def test_cone_of_quasi_isomorphism_is_acyclic(D):
    # augmentation of the cone construction itself: the inclusion of M
    # into cone(id ⊕ 0)-style quasi-isos
    m = regular_module(D)
    c = cone(ModuleMap.identity(m))
    inc = cone_inclusion(ModuleMap.identity(m), c)
    assert inc.is_chain_map()
    # M -> cone(id_M) is a quasi-isomorphism onto an acyclic target iff
    # M is acyclic; use the acyclic algebra instead for a genuine case
    acy = builtin_example("acyclic")
    r = regular_module(acy)
    z = DgModule(acy, [], [], [], [])
    q = ModuleMap.zero(r, z, 0)
    assert cone(q).cohomology().is_zero()


def test_k_dual_point(point):
    k = regular_module(point)
    d = k_dual(k)
    assert d.dim == 1 and d.degrees == [0]
    assert validate_module(d) == []


def test_k_dual_regular_socle_top_exchange(D):
    m = regular_module(D)
    d = k_dual(m)
    assert validate_module(d) == []
    assert {deg: len(ix) for deg, ix in d.basis_by_degree().items()} == {0: 2}
    # the dual of the regular module has simple socle at the unit's dual:
    # x acts nontrivially somewhere (top and socle exchanged)
    xop = [D.field.zero(), D.field.one()]
    assert not d.action_matrix(xop).is_zero()
    assert d.cohomology().dim(0) == 2


def test_k_dual_double_dual_identity(all_builtins):
    for a in all_builtins:
        for m in (regular_module(a), k_over(a)):
            dd = k_dual(k_dual(m))
            assert dd.same_tables(m)
            assert dd.algebra.same_tables(m.algebra)


def test_k_dual_flips_cohomology(all_builtins):
    rng = random.Random(7)
    for a in all_builtins:
        for m in (regular_module(a), random_module(a, rng.randrange(999), 2)):
            d = k_dual(m)
            assert validate_module(d) == []
            hm, hd = m.cohomology(), d.cohomology()
            for deg in set(hm.entries) | {-x for x in hd.entries}:
                assert hm.dim(deg) == hd.dim(-deg)


def test_strict_hom_free_source(D, X):
    for a in (D, X):
        m = regular_module(a)
        k = k_over(a)
        h = strict_hom(m, k)
        by_deg = {d: len(ix) for d, ix in k.basis_by_degree().items()}
        assert h.dims() == by_deg


def test_strict_hom_kk(D):
    h = strict_hom(k_over(D), k_over(D))
    assert h.dims() == {0: 1}


def test_strict_hom_socle(D):
    # Hom_D(k, D) = socle, dimension 1 in degree 0, by direct enumeration
    h = strict_hom(k_over(D), regular_module(D))
    assert h.dims() == {0: 1}
    assert hom_space_dims(k_over(D), regular_module(D)) == {0: 1}


def test_strict_hom_matches_enumeration_oracle(T2, L3):
    for a in (T2, L3):
        m = regular_module(a)
        k = k_over(a)
        assert strict_hom(k, m).dims() == hom_space_dims(k, m)
        assert strict_hom(m, k).dims() == hom_space_dims(m, k)


def test_strict_tensor_unit(D, X):
    for a in (D, X):
        m = random_module(a, 5, 2)
        n = regular_module(opposite_dga(a))  # A as a left module
        t = strict_tensor(m, n)
        assert t.total_dim() == m.dim
        hm, ht = m.cohomology(), t.cohomology()
        assert all(hm.dim(d) == ht.dim(d) for d in
                   set(hm.entries) | set(ht.entries))


def test_strict_tensor_kk(D):
    t = strict_tensor(k_over(D), simple_quotient_op_module(D))
    assert t.total_dim() == 1
    assert t.cohomology().dim(0) == 1


def test_strict_tensor_simple_squared(D):
    # D/J ⊗_D D/J has dimension 1 in degree 0 (coequalizer computation)
    t = strict_tensor(k_over(D), simple_quotient_op_module(D))
    assert t.quotient_degrees() == [0]


def test_free_module_single_generator(D):
    m = free_module(D, [0])
    assert m.same_tables(regular_module(D))


def test_free_module_two_generators(D):
    m = free_module(D, [0, 1])
    assert validate_module(m) == []
    assert {d: len(ix) for d, ix in m.basis_by_degree().items()} == {0: 2, 1: 2}


def test_free_module_empty(D):
    assert free_module(D, []).dim == 0


def test_side_swap_commutative_degree_zero(D):
    m = regular_module(D)
    s = side_swap(m)
    assert s.action == m.action
    assert validate_module(s) == []


def test_side_swap_sign_on_odd_pairs(X):
    m = regular_module(X)
    s = side_swap(m)
    ix = X.index_of("x")
    assert s.action[ix][ix] == m.action[ix][ix]  # x·x = 0 either way
    one = X.field.one()
    # odd element times odd element flips; (x, x) entries vanish so probe
    # the (x, 1) pair which has even product and no flip, and check the
    # flip pattern structurally
    for i in range(m.dim):
        for j in range(X.dim):
            expect = list(m.action[i][j])
            if (m.degrees[i] * X.degrees[j]) % 2:
                expect = [-c for c in expect]
            assert s.action[i][j] == expect


def test_side_swap_involution(all_builtins):
    for a in all_builtins:
        m = regular_module(a)
        assert side_swap(side_swap(m)).same_tables(m)


def test_submodule_quotient_roundtrip(D):
    m = regular_module(D)
    sub = Subspace.from_vectors(D.field, 2, [[Fraction(0), Fraction(1)]])
    s, inc = submodule_module(m, sub)
    q, proj = quotient_module(m, sub)
    assert validate_module(s) == [] and validate_module(q) == []
    assert s.dim == 1 and q.dim == 1
    assert inc.is_chain_map() and proj.is_chain_map()


def test_random_module_budget_one(D):
    m = random_module(D, 0, 1)
    assert m.dim in (1, 2)
    assert validate_module(m) == []


def test_random_module_deterministic(D):
    m1 = random_module(D, 42, 3)
    m2 = random_module(D, 42, 3)
    assert m1.same_tables(m2)
    m3 = random_module(D, 43, 3)
    assert not (m1.dim == m3.dim and m1.same_tables(m3))


def test_random_module_validates(all_builtins):
    for a in all_builtins:
        for seed in range(8):
            m = random_module(a, seed, 3)
            assert validate_module(m) == [], (a, seed)


def test_hom_free_matches_shift_formula(D):
    # Hom_A(free(g), M) agrees degreewise with shifted copies of M
    m = random_module(D, 3, 2)
    h = strict_hom(free_module(D, [0, 2]), m)
    expected = {}
    for g in (0, 2):
        for i in range(m.dim):
            d = m.degrees[i] - g
            expected[d] = expected.get(d, 0) + 1
    assert h.dims() == {d: n for d, n in expected.items() if n}


def test_envelope_module_validates(all_builtins):
    for a in all_builtins:
        em = envelope_module(a)
        assert validate_module(em) == []


def test_t2_simples_validate(T2):
    for v in (1, 2):
        s = t2_simple(T2, v)
        assert validate_module(s) == []


def test_tensor_with_free_left_module(D):
    # M ⊗_A (free left module) decomposes as shifted copies of M
    m = random_module(D, 21, 2)
    n = free_module(opposite_dga(D), [0, 1])  # free over the opposite
    t = strict_tensor(m, n)
    expected = {}
    for g in (0, 1):
        for i in range(m.dim):
            d = m.degrees[i] + g
            expected[d] = expected.get(d, 0) + 1
    got = {}
    for d in t.quotient_degrees():
        got[d] = got.get(d, 0) + 1
    assert got == expected

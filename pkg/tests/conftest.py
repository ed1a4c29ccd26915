import pytest

from dgforge.dga import (builtin_example, make_m2, make_m2_graded, make_qq2,
                         BUILTIN_NAMES)
from dgforge.field import FieldSpec
from dgforge.modules import DgModule


@pytest.fixture
def QQ():
    return FieldSpec()


@pytest.fixture
def point():
    return builtin_example("point")


@pytest.fixture
def D():
    return builtin_example("dual_numbers")


@pytest.fixture
def X():
    return builtin_example("dual_numbers_deg1")


@pytest.fixture
def ACY():
    return builtin_example("acyclic")


@pytest.fixture
def T2():
    return builtin_example("a2_path")


@pytest.fixture
def L3():
    return builtin_example("local_square_zero_2")


@pytest.fixture
def all_builtins():
    return [builtin_example(n) for n in BUILTIN_NAMES]


@pytest.fixture
def qq2():
    return make_qq2()


@pytest.fixture
def m2():
    return make_m2()


@pytest.fixture
def m2_graded():
    return make_m2_graded()


def t2_simple(t2, vertex):
    """The two simple right modules over the A2 path algebra."""
    f = t2.field
    one, zero = f.one(), f.zero()
    e11 = one if vertex == 1 else zero
    action = [[[one], [e11], [zero]]]
    return DgModule(t2, [f"s{vertex}"], [0], action, [[zero]])

import pytest

from semikit import gen_standard


@pytest.fixture
def z3():
    return gen_standard("cyclic", 3)


@pytest.fixture
def l2():
    return gen_standard("left_zero", 2)


@pytest.fixture
def t2():
    return gen_standard("t2")


@pytest.fixture
def pb():
    return gen_standard("paper_band")


@pytest.fixture
def rb22():
    return gen_standard("rect_band", 2, 2)


@pytest.fixture
def trivial():
    return gen_standard("trivial")

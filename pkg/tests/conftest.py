import pytest

from quasicheck import CayleyTable, Quasigroup


@pytest.fixture
def z3plus():
    """Addition mod 3: a group, satisfies N1."""
    return CayleyTable.from_rows([[0, 1, 2], [1, 2, 0], [2, 0, 1]])


@pytest.fixture
def z3minus():
    """Subtraction mod 3: a quasigroup that fails N1."""
    return CayleyTable.from_rows([[0, 2, 1], [1, 0, 2], [2, 1, 0]])


@pytest.fixture
def const2():
    """Order-2 constant magma: not Latin, yet satisfies N1 vacuously."""
    return CayleyTable.from_rows([[0, 0], [0, 0]])


@pytest.fixture
def q5lin():
    """x*y = 2x+y mod 5: a quasigroup with non-constant j."""
    return CayleyTable.from_rows(
        [[(2 * x + y) % 5 for y in range(5)] for x in range(5)]
    )


@pytest.fixture
def qz3plus(z3plus):
    return Quasigroup.from_table(z3plus)


@pytest.fixture
def qz3minus(z3minus):
    return Quasigroup.from_table(z3minus)


@pytest.fixture
def qq5lin(q5lin):
    return Quasigroup.from_table(q5lin)

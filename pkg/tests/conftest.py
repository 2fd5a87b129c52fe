import pytest

from drinfeld_tower.gf import make_field
from drinfeld_tower.tower import TowerState


@pytest.fixture(scope="session")
def F16():
    return make_field(2, 4)


@pytest.fixture(scope="session")
def F256():
    return make_field(2, 8)


@pytest.fixture(scope="session")
def tower5():
    st = TowerState(seed=0)
    st.factor(5)
    return st

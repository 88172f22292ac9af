import pytest

from liecheck.models import build_group_model
from liecheck.rootdata import build_root_system


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def t2():
    return build_root_system("T2")


@pytest.fixture(scope="session")
def su2():
    return build_group_model("SU2")


@pytest.fixture(scope="session")
def su3():
    return build_group_model("SU3")

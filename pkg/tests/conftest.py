import pytest

from chein_helper.classifier import default_battery
from chein_helper.group import StarMap, load_group


@pytest.fixture(scope="session")
def battery():
    return default_battery()


@pytest.fixture(scope="session")
def s3():
    return load_group("symmetric:3")


@pytest.fixture(scope="session")
def c4():
    return load_group("cyclic:4")


@pytest.fixture(scope="session")
def d4():
    return load_group("dihedral:4")


@pytest.fixture(scope="session")
def inverse():
    return StarMap.inverse

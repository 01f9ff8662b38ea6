import random

import pytest
from hypothesis import settings

from cfmkit.field import construct_field

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=50)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def f5():
    return construct_field(5, 1)


@pytest.fixture(scope="session")
def f7():
    return construct_field(7, 1)


@pytest.fixture(scope="session")
def f4():
    return construct_field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return construct_field(3, 2)


@pytest.fixture(scope="session")
def f25():
    return construct_field(5, 2)


@pytest.fixture()
def rng():
    return random.Random(20240211)

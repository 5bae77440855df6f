import pytest

from odoni import build_params_even, build_params_odd


@pytest.fixture(scope="session")
def golden_even_2():
    return build_params_even(2)


@pytest.fixture(scope="session")
def golden_odd_3():
    return build_params_odd(3)


@pytest.fixture(scope="session")
def golden_even_4():
    return build_params_even(4)


@pytest.fixture(scope="session")
def golden_odd_5():
    return build_params_odd(5)


@pytest.fixture(scope="session")
def golden_odd_9():
    return build_params_odd(9)

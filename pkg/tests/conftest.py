import pytest

from octabraid.quotient import GroupCtx


@pytest.fixture(scope="session")
def ctx3():
    return GroupCtx.build(3)


@pytest.fixture(scope="session")
def ctx4():
    return GroupCtx.build(4)


@pytest.fixture(scope="session")
def ctx5():
    return GroupCtx.build(5)


@pytest.fixture(scope="session")
def ctx3_twisted():
    return GroupCtx.build(3, "twisted")

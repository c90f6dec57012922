import pytest

from sullivan.cli import read_model_text
from sullivan.parser import parse_model


def load(name):
    return parse_model(read_model_text(name))


@pytest.fixture
def model():
    return load


@pytest.fixture(scope="session")
def defect_one():
    return load("gorenstein_defect_one")


@pytest.fixture(scope="session")
def non_noetherian():
    return load("non_noetherian")


@pytest.fixture(scope="session")
def triple_product():
    return load("triple_product")


@pytest.fixture(scope="session")
def two_stage():
    return load("two_stage_product")

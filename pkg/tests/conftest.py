import pytest

from kazhlip.precision import DEFAULT_DIGITS, set_precision


@pytest.fixture(autouse=True)
def _reset_precision():
    yield
    set_precision(DEFAULT_DIGITS)

import pytest

from moorepi.facts import load


@pytest.fixture(scope="session")
def fb():
    return load()


@pytest.fixture(scope="session")
def engine(fb):
    from moorepi.symbols import SymbolEngine

    return lambda r=1: SymbolEngine(fb, fb.default_env(r))

import pytest

from hyperlang.spec_io import load_fixture


@pytest.fixture(scope="session")
def fixture():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name + ".json")
        return cache[name]

    return get

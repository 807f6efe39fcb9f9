import pytest

from parakahler.chevalley import chevalley_constants
from parakahler.rootsys import SimpleType, build_root_system

_CACHE = {}


@pytest.fixture(scope="session")
def algebra():
    """Shared builder: algebra('G2') -> (RootSystem, LieAlgebraData)."""

    def get(name):
        if name not in _CACHE:
            rs = build_root_system(SimpleType.parse(name))
            _CACHE[name] = (rs, chevalley_constants(rs))
        return _CACHE[name]

    return get

import pytest

from ngontower.invariant_sets import build_invariant_sets
from ngontower.residues import FermatParams


@pytest.fixture(scope="session")
def params17():
    return FermatParams.from_n(17)


@pytest.fixture(scope="session")
def params257():
    return FermatParams.from_n(257)


@pytest.fixture(scope="session")
def params65537():
    return FermatParams.from_n(65537)


@pytest.fixture(scope="session")
def table17(params17):
    return build_invariant_sets(params17)


@pytest.fixture(scope="session")
def table257(params257):
    return build_invariant_sets(params257)


@pytest.fixture(scope="session")
def table65537(params65537):
    return build_invariant_sets(params65537)


@pytest.fixture(scope="session")
def tower257_full():
    from ngontower.tower import build_tower

    return build_tower(257, kind="full")


@pytest.fixture(scope="session")
def tower65537():
    """The pruned 65537 tower at 512 bits; built once, reused everywhere."""
    from ngontower.tower import build_tower

    return build_tower(65537, kind="pruned", precision=512)

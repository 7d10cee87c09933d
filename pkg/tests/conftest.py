import pytest

from ydweyl.groupdata import make_abelian_group, sign_cocycle
from ydweyl.ydcat import ModuleTuple, preset_module


@pytest.fixture(scope="session")
def z2cubed():
    group = make_abelian_group([2, 2, 2])
    return group, sign_cocycle(group)


@pytest.fixture(scope="session")
def w_presets(z2cubed):
    group, phi = z2cubed
    return {k: preset_module(f"W{k}", group, phi) for k in range(1, 7)}


@pytest.fixture(scope="session")
def w_triple(w_presets):
    return ModuleTuple([w_presets[1], w_presets[2], w_presets[3]])


@pytest.fixture(scope="session")
def w_pair(w_presets):
    return ModuleTuple([w_presets[1], w_presets[2]])

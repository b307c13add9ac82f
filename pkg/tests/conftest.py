import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from diractime import ModelParams, PacketSpec, build_gaussian, make_grid, make_line_grid

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def params():
    return ModelParams(m0=1.0, tau0=0.0)


@pytest.fixture(scope="session")
def rest_grid():
    # centred sigma = 0.08 packets stay below 1e-10 at both boundaries
    return make_grid(32, 0.8)


@pytest.fixture(scope="session")
def moving_grid():
    return make_grid((32, 32, 64), (0.8, 0.8, 1.6))


@pytest.fixture(scope="session")
def line():
    return make_line_grid(4096, 2.0)


@pytest.fixture(scope="session")
def moving_packet(moving_grid):
    p = ModelParams(1.0, 0.0)
    return build_gaussian(PacketSpec(p_center=(0, 0, 0.75), sigma_p=0.08, spin_axis=(0, 0, 1)), moving_grid, p)


def random_hermitian(rng, scale=1.0):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return scale * (a + a.conj().T) / 2


def centred_packet(grid, params, **kw):
    kw.setdefault("sigma_p", 0.08)
    return build_gaussian(PacketSpec(**kw), grid, params)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

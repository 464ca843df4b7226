import numpy as np
import pytest

from thermovisco import tensor3 as t3

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_defgrad(rng, size=()):
    """Near-identity deformation gradients with positive determinant."""
    size = (size,) if np.isscalar(size) else tuple(size)
    F = np.eye(3) + 0.3 * rng.standard_normal(size + (3, 3))
    flip = t3.det(F) < 0
    F[..., 0, :] = np.where(flip[..., None], -F[..., 0, :], F[..., 0, :])
    return F

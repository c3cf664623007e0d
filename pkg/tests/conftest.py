import numpy as np
import pytest

from octo_cr.core.rng import ball_shell, stream


@pytest.fixture
def rng() -> np.random.Generator:
    return stream(7, "tests")


@pytest.fixture
def points(rng: np.random.Generator) -> np.ndarray:
    """单位球内的 5 个点"""
    return ball_shell(rng, 5, 8, 0.1, 1.0)

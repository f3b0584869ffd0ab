import math
import sys

import numpy as np
import pytest

from qdft_uncertainty.io import ColorImage
from qdft_uncertainty.quaternion import Quaternion


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def scalar_dqft(data, inverse=False):
    """Reference transform written with scalar quaternions and math.cos/sin only."""
    M, N = data.shape[:2]
    sign = 1.0 if inverse else -1.0
    out = np.zeros_like(data, dtype=float)
    for u in range(M):
        for v in range(N):
            acc = Quaternion()
            for t in range(M):
                a = sign * 2 * math.pi * u * t / M
                left = Quaternion(math.cos(a), math.sin(a), 0, 0)
                for s in range(N):
                    b = sign * 2 * math.pi * v * s / N
                    right = Quaternion(math.cos(b), 0, math.sin(b), 0)
                    acc = acc + left * Quaternion.from_array(data[t, s]) * right
            out[u, v] = acc.to_array() / math.sqrt(M * N)
    return out


def synthetic_image(size=64, seed=7):
    """Smooth color pattern with mild noise: energy at every frequency scale."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / size
    r = 128 + 100 * np.sin(6 * x) * np.cos(4 * y)
    g = 128 + 90 * np.cos(9 * x * y)
    b = 255 * x
    px = np.stack([r, g, b], axis=-1) + rng.normal(0, 8, (size, size, 3))
    return ColorImage.from_array(np.clip(np.rint(px), 0, 255).astype(np.uint8))


@pytest.fixture
def test_image():
    return synthetic_image()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import math

import numpy as np
import pytest

from winding_kernel.homotopy import PolylinePath


def polygon_loop(n_vertices=4, radius=1.0, turns=1, center=(0.0, 0.0)):
    """Regular polygon traversed `turns` times (negative = clockwise), closed."""
    k = abs(turns) * n_vertices
    sign = 1 if turns >= 0 else -1
    ang = sign * 2 * math.pi * np.arange(k + 1) / n_vertices
    pts = np.c_[center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)]
    pts[-1] = pts[0]
    return PolylinePath.from_points(pts)


def atan2_turns(points, puncture=(0.0, 0.0)):
    """Oracle: unwrap the polar angle of each vertex and count turns."""
    p = np.asarray(points, dtype=float) - np.asarray(puncture)
    phi = np.unwrap(np.arctan2(p[:, 1], p[:, 0]))
    return (phi[-1] - phi[0]) / (2 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

"""Polygonal paths in the punctured plane and their winding classes.

Continuous paths are represented by polylines. The winding number about a
puncture is a homotopy invariant, so it can be computed exactly on the
polyline by summing the signed angle each segment subtends at the puncture.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EndpointMismatch, InputError, OpenPath, PunctureOnPath, WindingResidualError

__all__ = [
    "PolylinePath",
    "WindingClass",
    "ClassLabeling",
    "winding_number",
    "concat",
    "reverse",
    "relabel",
    "slit_class_to_winding",
    "winding_to_slit_class",
]

# relative to 2*pi
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class PolylinePath:
    """Ordered vertices of a piecewise-linear path in the plane."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 2:
            raise InputError("a path needs at least 2 vertices")
        if not all(math.isfinite(v) for p in verts for v in p):
            raise InputError("path vertices must be finite")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "PolylinePath":
        return cls(tuple((p[0], p[1]) for p in points))

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True, order=True)
class WindingClass:
    """Signed number of turns about the puncture."""

    w: int

    def __post_init__(self):
        if isinstance(self.w, bool) or int(self.w) != self.w:
            raise InputError(f"winding class must be an integer, got {self.w!r}")
        object.__setattr__(self, "w", int(self.w))

    def __int__(self):
        return self.w

    def __index__(self):
        return self.w

    def __add__(self, other):
        return WindingClass(self.w + int(other))


@dataclass(frozen=True)
class ClassLabeling:
    """A change of base-point paths; on an abelian group it shifts every label."""

    offset: int = 0

    def then(self, other: "ClassLabeling") -> "ClassLabeling":
        return ClassLabeling(self.offset + other.offset)


def _segment_distance(p, a, b):
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.hypot(*(p - a)))
    s = min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.hypot(*(p - (a + s * ab))))


def _check_clear_of(path: PolylinePath, puncture) -> np.ndarray:
    pts = path.as_array()
    p = np.asarray(puncture, dtype=float)
    scale = max(1.0, float(np.max(np.abs(pts - p))))
    for a, b in zip(pts[:-1], pts[1:]):
        if _segment_distance(p, a, b) <= 1e-12 * scale:
            raise PunctureOnPath(f"segment {tuple(a)} -> {tuple(b)} touches the puncture {tuple(p)}")
    return pts - p


def turning_angle(path: PolylinePath, puncture=(0.0, 0.0)) -> float:
    """Total signed angle swept about `puncture`, open or closed path."""
    rel = _check_clear_of(path, puncture)
    u, v = rel[:-1], rel[1:]
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    dot = np.einsum("ij,ij->i", u, v)
    # each increment lies strictly inside (-pi, pi) once the segment misses the puncture
    return float(math.fsum(np.arctan2(cross, dot)))


def winding_number(loop: PolylinePath, puncture=(0.0, 0.0)) -> int:
    """Winding number of a closed polyline about `puncture`.

    Raises
    ------
    OpenPath
        If the first and last vertices differ.
    PunctureOnPath
        If a vertex or segment touches the puncture.
    WindingResidualError
        If the turning angle is not within ``RESIDUAL_TOL * 2*pi`` of an integer
        number of turns (floating-point breakdown on puncture-grazing paths).
    """
    if not loop.is_closed:
        raise OpenPath("winding number needs a closed loop (first vertex == last vertex)")
    turns = turning_angle(loop, puncture) / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > RESIDUAL_TOL:
        raise WindingResidualError(f"turning angle residual {turns - w:.3e} turns")
    return int(w)


def concat(a: PolylinePath, b: PolylinePath) -> PolylinePath:
    """Traverse `a` then `b`; the shared endpoint appears once."""
    if a.vertices[-1] != b.vertices[0]:
        raise EndpointMismatch(f"{a.vertices[-1]} != {b.vertices[0]}")
    return PolylinePath(a.vertices + b.vertices[1:])


def reverse(a: PolylinePath) -> PolylinePath:
    return PolylinePath(a.vertices[::-1])


def relabel(classes, labeling: ClassLabeling):
    """Shift every class label by ``labeling.offset``; amplitudes are untouched."""
    s = int(labeling.offset)
    return [(WindingClass(int(w) + s), amp) for w, amp in classes]


# The Aharonov-Bohm class convention labels the two non-winding classes
# (above / below the solenoid) n = 0 and n = 1; n >= 2 winds n - 1 times
# counterclockwise and n <= -1 winds |n| times clockwise. A uniform shift
# w = n - 1 is a bijection onto ring winding indices and carries the
# reflection pairing n <-> 1 - n onto w <-> -w - 1.

def slit_class_to_winding(n: int) -> int:
    return int(n) - 1


def winding_to_slit_class(w: int) -> int:
    return int(w) + 1

"""Free-particle kernels in imaginary time and in regularised real time.

Both modes are expressed through one complex "Euclidean duration" ``tau``:

* imaginary time: ``tau = value`` (the heat kernel),
* real time: ``tau = i * t * (1 - i*epsilon)``, so ``Re(tau) = epsilon * t > 0``
  and every Gaussian and every spectral factor ``exp(-E tau / hbar)`` stays
  absolutely convergent.

All other modules build their class-partial amplitudes from these kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse, InputError, NonpositiveTime

__all__ = ["TimeParameter", "PhysicalConstants", "free_kernel", "compose_check"]

IMAGINARY = "imaginary"
REAL = "real"


@dataclass(frozen=True)
class TimeParameter:
    """Evolution interval ``t_b - t_a`` with its mode.

    Parameters
    ----------
    value : float
        Positive duration in natural units.
    mode : {"imaginary", "real"}
    epsilon : float
        Regulator for real time, ``t -> t (1 - i epsilon)``. Ignored in
        imaginary time.
    """

    value: float
    mode: str = IMAGINARY
    epsilon: float = 1e-3

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise NonpositiveTime(f"time must be positive, got {self.value!r}")
        if self.mode not in (IMAGINARY, REAL):
            raise InputError(f"mode must be 'imaginary' or 'real', got {self.mode!r}")
        if self.mode == REAL and not (self.epsilon > 0):
            raise NonpositiveTime(f"real-time regulator must be positive, got {self.epsilon!r}")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @classmethod
    def imaginary(cls, tau: float) -> "TimeParameter":
        return cls(tau, IMAGINARY)

    @classmethod
    def real(cls, t: float, epsilon: float = 1e-3) -> "TimeParameter":
        return cls(t, REAL, epsilon)

    @property
    def is_imaginary(self) -> bool:
        return self.mode == IMAGINARY

    @property
    def euclidean(self) -> complex:
        if self.mode == IMAGINARY:
            return complex(self.value)
        return 1j * self.value * (1 - 1j * self.epsilon)

    def plus(self, other: "TimeParameter") -> "TimeParameter":
        if self.mode != other.mode or (self.mode == REAL and self.epsilon != other.epsilon):
            raise InputError("can only add durations of the same mode")
        return TimeParameter(self.value + other.value, self.mode, self.epsilon)


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar, particle mass and moment of inertia; natural units by default."""

    hbar: float = 1.0
    mass: float = 1.0
    inertia: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "inertia"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InputError(f"{name} must be positive, got {v!r}")

    def with_mass(self, mass: float) -> "PhysicalConstants":
        return PhysicalConstants(self.hbar, mass, self.inertia)


NATURAL = PhysicalConstants()


def free_kernel(d, displacement, t: TimeParameter, c: PhysicalConstants = NATURAL):
    """Free propagator in ``d`` dimensions.

    ``(m / (2 pi hbar tau))**(d/2) * exp(-m |dx|**2 / (2 hbar tau))`` with the
    complex duration of `t`; the power uses the principal branch.

    Parameters
    ----------
    d : int
        Spatial dimension.
    displacement : float or array_like
        For ``d == 1`` a scalar or an array of scalars; otherwise a vector of
        length ``d`` or an array of shape ``(..., d)``.
    t : TimeParameter
    c : PhysicalConstants

    Returns
    -------
    complex or ndarray of complex
    """
    d = int(d)
    if d < 1:
        raise InputError("dimension must be >= 1")
    dx = np.asarray(displacement, dtype=float)
    if d == 1 and (dx.ndim == 0 or dx.shape[-1] != 1):
        r2 = dx * dx
    else:
        if dx.shape[-1] != d:
            raise InputError(f"displacement has shape {dx.shape}, expected trailing dimension {d}")
        r2 = np.sum(dx * dx, axis=-1)
    tau = t.euclidean
    if t.is_imaginary:
        pref = (c.mass / (2 * math.pi * c.hbar * tau.real)) ** (d / 2)
        out = pref * np.exp(-c.mass * r2 / (2 * c.hbar * tau.real)) + 0j
    else:
        pref = np.power(c.mass / (2 * np.pi * c.hbar * tau), d / 2)
        out = pref * np.exp(-c.mass * r2 / (2 * c.hbar * tau))
    if np.ndim(out) == 0:
        return complex(out)
    return out


def compose_check(a, b_final, t1: TimeParameter, t2: TimeParameter, grid,
                  c: PhysicalConstants = NATURAL, tol: float = 1e-8) -> complex:
    """Integrate out the intermediate point of two successive 1-D kernels.

    Returns the trapezoidal value of ``int K(b_final, x; t2) K(x, a; t1) dx`` over
    `grid`, which should equal ``free_kernel(1, b_final - a, t1 + t2)``.

    Raises
    ------
    GridTooCoarse
        If the grid has fewer than 3 points, if the integrand at the grid ends
        is not negligible (truncation), or if halving the resolution changes
        the result by more than `tol` relative (discretisation).
    """
    if not (t1.is_imaginary and t2.is_imaginary):
        raise InputError("compose_check works in imaginary time only")
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 3 or not np.all(np.diff(x) > 0):
        raise GridTooCoarse("quadrature grid needs at least 3 increasing points")
    f = free_kernel(1, b_final - x, t2, c).real * free_kernel(1, x - a, t1, c).real
    peak = float(np.max(np.abs(f)))
    if peak == 0.0 or max(abs(f[0]), abs(f[-1])) > tol * peak:
        raise GridTooCoarse("integrand is not negligible at the grid ends")
    fine = np.trapezoid(f, x)
    coarse = np.trapezoid(f[::2], x[::2]) if x.size >= 5 else np.inf
    if not abs(fine - coarse) <= tol * abs(fine):
        raise GridTooCoarse(f"quadrature error estimate {abs(fine - coarse):.3e} above tolerance")
    return complex(fine)

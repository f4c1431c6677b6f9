"""Aharonov-Bohm amplitude on a ring around a solenoid.

The annulus around the solenoid is replaced by a ring of fixed radius, which
keeps its fundamental group (the integers) and lets every winding-class
partial amplitude be computed exactly. Class w picks up the gauge phase
``exp(i alpha (dphi + 2 pi w))``, where ``alpha = e Phi / (2 pi hbar c)``, and
the character weight ``exp(-i w delta)``.

The true two-dimensional annulus partials are not computed. The ring model
reproduces the topological statements (flux periodicity, reflection symmetry
at zero flux, the cancellation that rules out ``delta = pi``) but not the
distance-dependent bright/dark pattern of a real double-slit geometry.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .characters import IntegerCharacter
from .circle import Truncation, class_sum, class_terms
from .errors import InputError, NumericalError
from .kernels import NATURAL, PhysicalConstants, TimeParameter

__all__ = [
    "ABSetup",
    "ab_amplitude",
    "intensity_scan",
    "delta_selector",
    "DeltaSelection",
    "flux_parameter",
    "gauge_function",
    "gauge_phase",
]

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class ABSetup:
    """Ring radius, source angle, dimensionless flux and character angle."""

    ring_radius: float = 1.0
    source_angle: float = 0.0
    flux_alpha: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.ring_radius) and self.ring_radius > 0):
            raise InputError(f"ring radius must be positive, got {self.ring_radius!r}")
        for name in ("source_angle", "flux_alpha", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise InputError(f"{name} must be finite")

    def with_flux(self, alpha: float) -> "ABSetup":
        return ABSetup(self.ring_radius, self.source_angle, alpha, self.delta)

    def with_delta(self, delta: float) -> "ABSetup":
        return ABSetup(self.ring_radius, self.source_angle, self.flux_alpha, delta)


def flux_parameter(field, solenoid_radius, charge=1.0, hbar=1.0, light_speed=1.0) -> float:
    """``e Phi / (2 pi hbar c)`` with ``Phi = pi R^2 B``."""
    flux = math.pi * solenoid_radius ** 2 * field
    return charge * flux / (TWO_PI * hbar * light_speed)


def gauge_function(phi, field, solenoid_radius):
    """Multivalued gauge function ``B R^2 phi / 2`` outside the solenoid.

    `phi` is an angle on the covering space, so it is not reduced.
    """
    return field * solenoid_radius ** 2 / 2 * phi


def gauge_phase(phi_i, phi_f, w, field, solenoid_radius, charge=1.0, hbar=1.0, light_speed=1.0) -> complex:
    """``exp(i e/(hbar c) [chi(phi_f + 2 pi w) - chi(phi_i)])`` on the w-th sheet."""
    diff = gauge_function(phi_f + TWO_PI * w, field, solenoid_radius) - gauge_function(phi_i, field, solenoid_radius)
    return cmath.exp(1j * charge / (hbar * light_speed) * diff)


def _weight(setup: ABSetup, dphi: float):
    chi = IntegerCharacter(setup.delta)
    alpha = setup.flux_alpha

    def weight(w):
        return cmath.exp(1j * alpha * (dphi + TWO_PI * w)) * chi(w)

    return weight


def ab_amplitude(setup: ABSetup, screen_angle: float, t: TimeParameter,
                 trunc: Truncation = Truncation(), c: PhysicalConstants = NATURAL) -> complex:
    """Sum over winding classes of gauge phase x character x free ring kernel.

    ``sum_w exp(i alpha (dphi + 2 pi w)) exp(-i w delta) K_free(rho (dphi + 2 pi w))``
    with ``dphi = screen_angle - source_angle`` taken as given, in ascending w.
    With zero flux and ``delta = 0`` this is exactly the ring propagator.
    """
    dphi = float(screen_angle) - setup.source_angle
    return class_sum(dphi, setup.ring_radius, t, _weight(setup, dphi), trunc, c)


def intensity_scan(setup: ABSetup, screen_angles, t: TimeParameter,
                   trunc: Truncation = Truncation(), c: PhysicalConstants = NATURAL):
    angles = [float(a) for a in screen_angles]
    if not angles:
        raise InputError("need at least one screen angle")
    return [(a, abs(ab_amplitude(setup, a, t, trunc, c)) ** 2) for a in angles]


@dataclass(frozen=True)
class DeltaSelection:
    delta: float
    center_zero: complex
    center_pi: complex
    paired_zero: complex
    paired_pi: complex


def _paired_center(setup: ABSetup, t, trunc, c) -> complex:
    """Center-screen amplitude summed as reflection pairs ``w`` and ``-w - 1``.

    With the screen center at ``source + pi`` the two members of a pair have
    lifts ``rho * (pi + 2 pi w)`` and ``-rho * (pi + 2 pi w)``, i.e. equal
    partial amplitudes.
    """
    ws, ks = class_terms(math.pi, setup.ring_radius, t, c, lambda w: 1.0, trunc.max_winding)
    by_w = dict(zip((int(w) for w in ws), ks.tolist()))
    chi = IntegerCharacter(setup.delta)
    total = 0j
    for w in range(0, int(ws[-1]) + 1):
        total += (chi(w) + chi(-w - 1)) * by_w[w]
    return total


def delta_selector(setup: ABSetup, t: TimeParameter, trunc: Truncation = Truncation(),
                   c: PhysicalConstants = NATURAL, tol: float = 1e-10) -> DeltaSelection:
    """Pick the character angle at zero flux from the center-screen amplitude.

    Reflection symmetry leaves ``delta in {0, pi}``. At the screen center the
    ``delta = pi`` amplitude cancels pairwise, so a nonzero center intensity
    requires ``delta = 0``. Both candidates are evaluated, in ascending-w
    order and as explicit reflection pairs.
    """
    if setup.flux_alpha != 0.0:
        raise InputError("delta selection is defined at zero flux")
    center = setup.source_angle + math.pi
    s0, spi = setup.with_delta(0.0), setup.with_delta(math.pi)
    k0 = ab_amplitude(s0, center, t, trunc, c)
    kpi = ab_amplitude(spi, center, t, trunc, c)
    p0 = _paired_center(s0, t, trunc, c)
    ppi = _paired_center(spi, t, trunc, c)
    scale = max(abs(k0), abs(p0))
    if not (abs(ppi) <= tol * scale and abs(kpi) <= tol * scale):
        raise NumericalError(f"delta = pi center amplitude {abs(ppi):.3e} does not cancel")
    delta = 0.0 if scale > 0.0 else math.nan
    return DeltaSelection(delta, k0, kpi, p0, ppi)

"""Free particle on a ring of radius rho.

The ring's fundamental group is the integers. The propagator is therefore a
character-weighted sum of the free kernel evaluated at every lift of the
target angle, ``rho * (dtheta + 2 pi w)``. Poisson summation turns that
sum into a sum over momentum eigenstates, which gives a second,
independent way to compute the same quantity (`spectral_sum`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characters import IntegerCharacter
from .errors import InputError, RadiusMismatch, TruncationInsufficient
from .homotopy import WindingClass
from .kernels import NATURAL, PhysicalConstants, TimeParameter, free_kernel

__all__ = [
    "CirclePoint",
    "Truncation",
    "winding_partials",
    "winding_sum",
    "spectral_sum",
    "MAX_TERMS",
]

TWO_PI = 2 * math.pi
MAX_TERMS = 10_000
# an edge term this small relative to the sum of |terms| cannot move the result
EDGE_TOL = 1e-17


@dataclass(frozen=True)
class CirclePoint:
    angle: float
    rho: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho > 0):
            raise InputError(f"radius must be positive, got {self.rho!r}")
        if not math.isfinite(self.angle):
            raise InputError("angle must be finite")
        object.__setattr__(self, "angle", float(self.angle) % TWO_PI)
        object.__setattr__(self, "rho", float(self.rho))


@dataclass(frozen=True)
class Truncation:
    """Starting half-widths of the winding (``max_winding``) and mode (``max_mode``) sums.

    Sums are enlarged by doubling until their edge terms are negligible, up to
    `MAX_TERMS` terms.
    """

    max_winding: int = 4
    max_mode: int = 16

    def __post_init__(self):
        for name in ("max_winding", "max_mode"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise InputError(f"{name} must be an integer >= 1, got {v!r}")


def _adaptive(term_fn: Callable[[np.ndarray], np.ndarray], n0: int):
    """Grow a symmetric index window [-n, n] until both edge terms are negligible.

    Returns ``(indices, terms)`` with terms already weighted.
    """
    n = int(n0)
    while True:
        if 2 * n + 1 > MAX_TERMS:
            raise TruncationInsufficient(f"sum not converged within {MAX_TERMS} terms")
        idx = np.arange(-n, n + 1)
        terms = term_fn(idx)
        mags = np.abs(terms)
        scale = float(np.sum(mags))
        if scale == 0.0 or max(mags[0], mags[-1]) <= EDGE_TOL * scale:
            return idx, terms
        n *= 2


def _ordered_sum(terms) -> complex:
    total = 0j
    for x in terms.tolist():
        total += x
    return total


def _dtheta(frm: CirclePoint, to: CirclePoint) -> float:
    if frm.rho != to.rho:
        raise RadiusMismatch(f"points lie on rings of radius {frm.rho} and {to.rho}")
    return to.angle - frm.angle


def class_terms(dtheta, rho, t, c, weight, n0):
    def terms(ws):
        k = free_kernel(1, rho * (dtheta + TWO_PI * ws), t, c)
        return np.array([weight(int(w)) for w in ws], dtype=complex) * k

    return _adaptive(terms, n0)


def winding_partials(dtheta: float, rho: float, t: TimeParameter,
                     trunc: Truncation = Truncation(), c: PhysicalConstants = NATURAL):
    """Class-partial amplitudes ``[(WindingClass(w), K_w), ...]``, ascending in w.

    `dtheta` is used as given (not reduced mod 2 pi), so callers can move the
    endpoint to another sheet of the covering line.
    """
    ws, ks = class_terms(float(dtheta), float(rho), t, c, lambda w: 1.0, trunc.max_winding)
    return [(WindingClass(int(w)), complex(k)) for w, k in zip(ws, ks)]


def class_sum(dtheta: float, rho: float, t: TimeParameter, weight, trunc: Truncation,
              c: PhysicalConstants) -> complex:
    """``sum_w weight(w) * K_free(rho (dtheta + 2 pi w))`` in ascending w."""
    _, terms = class_terms(float(dtheta), float(rho), t, c, weight, trunc.max_winding)
    return _ordered_sum(terms)


def winding_sum(frm: CirclePoint, to: CirclePoint, t: TimeParameter, chi=IntegerCharacter(0.0),
                trunc: Truncation = Truncation(), c: PhysicalConstants = NATURAL) -> complex:
    """Ring propagator as the character-weighted sum over winding classes.

    Parameters
    ----------
    frm, to : CirclePoint
        Endpoints on the same ring.
    t : TimeParameter
    chi : character on the integers
        ``IntegerCharacter(delta)`` weights class w by ``exp(-i w delta)``.
    trunc : Truncation
    c : PhysicalConstants

    Returns
    -------
    complex

    Raises
    ------
    RadiusMismatch
    TruncationInsufficient
    """
    return class_sum(_dtheta(frm, to), frm.rho, t, chi, trunc, c)


def spectral_sum(frm: CirclePoint, to: CirclePoint, t: TimeParameter, delta: float = 0.0,
                 trunc: Truncation = Truncation(), c: PhysicalConstants = NATURAL) -> complex:
    """Ring propagator from the momentum eigenbasis.

    The character ``exp(-i w delta)`` twists the boundary condition, which
    shifts the angular momentum to ``kappa = m + delta / (2 pi)``::

        K = (2 pi rho)^-1 sum_m exp(i kappa dtheta) exp(-E_kappa tau / hbar),
        E_kappa = hbar^2 kappa^2 / (2 mass rho^2)

    summed in ascending m.
    """
    dtheta = _dtheta(frm, to)
    rho = frm.rho
    shift = (float(delta) % TWO_PI) / TWO_PI
    tau = t.euclidean

    def terms(ms):
        kappa = ms + shift
        energy = c.hbar ** 2 * kappa ** 2 / (2 * c.mass * rho ** 2)
        return np.exp(1j * kappa * dtheta - energy * tau / c.hbar) / (TWO_PI * rho)

    _, ts = _adaptive(terms, trunc.max_mode)
    return _ordered_sum(ts)

"""Identical free particles: Bose, Fermi and two-particle anyon propagators.

For ``d >= 3`` the configuration space of n identical particles has the
symmetric group as fundamental group, and each permutation class
contributes the product of single-particle kernels that carry particle i to
the target slot ``sigma(i)``. Bosons weight every class by 1 and fermions by
the sign of the permutation, giving the permanent and the determinant of the
single-particle kernel matrix.

Anyons are restricted to two particles in the plane. The relative coordinate
is frozen on a ring of radius ``|x1 - x2|``, and each exchange is a
half-turn of that ring. The propagator is the center-of-mass kernel times a
ring sum over net exchange counts weighted by ``exp(i w theta)``. Class 0 is
the rotation of ``x1 - x2`` by the angle in ``(-pi, pi]`` that does not swap
the particles; another choice changes the result by a global phase only.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .characters import BraidCharacter, Permutation, SymmetricCharacter, assemble
from .circle import Truncation, class_sum
from .errors import AnyonUnsupportedConfig, InputError, SizeMismatch, TooManyParticles
from .kernels import NATURAL, PhysicalConstants, TimeParameter, free_kernel

__all__ = [
    "ParticleConfig",
    "BOSE",
    "FERMI",
    "Anyon",
    "permutation_partial",
    "kernel_matrix",
    "statistics_propagator",
    "permanent",
    "MAX_PARTICLES",
]

MAX_PARTICLES = 10
BOSE = "bose"
FERMI = "fermi"


@dataclass(frozen=True)
class Anyon:
    theta: float


@dataclass(frozen=True, eq=False)
class ParticleConfig:
    """Positions of n particles in d dimensions, pairwise distinct."""

    positions: np.ndarray

    def __post_init__(self):
        x = np.array(self.positions, dtype=float)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise InputError(f"positions must have shape (n, d), got {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InputError("positions must be finite")
        n, d = x.shape
        if n >= 2:
            if d == 1:
                raise InputError("identical particles on a line have a disconnected configuration space")
            gaps = np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)[np.triu_indices(n, 1)]
            if np.min(gaps) <= 0.0:
                raise InputError("two particles occupy the same position")
        x.setflags(write=False)
        object.__setattr__(self, "positions", x)

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def d(self) -> int:
        return self.positions.shape[1]

    def permuted(self, sigma: Permutation) -> "ParticleConfig":
        """Configuration whose slot ``sigma(i)`` holds particle i."""
        out = np.empty_like(self.positions)
        out[list(sigma.images)] = self.positions
        return ParticleConfig(out)


def _check_sizes(frm: ParticleConfig, to: ParticleConfig):
    if frm.n != to.n or frm.d != to.d:
        raise SizeMismatch(f"configurations differ: {frm.positions.shape} vs {to.positions.shape}")


def permutation_partial(frm: ParticleConfig, to: ParticleConfig, sigma: Permutation,
                        t: TimeParameter, c: PhysicalConstants = NATURAL) -> complex:
    """Partial amplitude of the class where particle i ends at ``to[sigma(i)]``."""
    _check_sizes(frm, to)
    if sigma.n != frm.n:
        raise SizeMismatch(f"permutation of {sigma.n} elements for {frm.n} particles")
    amp = 1 + 0j
    for i in range(frm.n):
        amp *= free_kernel(frm.d, to.positions[sigma(i)] - frm.positions[i], t, c)
    return amp


def kernel_matrix(frm: ParticleConfig, to: ParticleConfig, t: TimeParameter,
                  c: PhysicalConstants = NATURAL) -> np.ndarray:
    """``M[i, j] = K(to_j <- from_i)``."""
    _check_sizes(frm, to)
    disp = to.positions[None, :, :] - frm.positions[:, None, :]
    return np.asarray(free_kernel(frm.d, disp, t, c), dtype=complex)


def permanent(matrix) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula, ``O(2^n n^2)``.

    Equal to the Bose propagator when applied to `kernel_matrix`, without
    enumerating the n! permutations.
    """
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise SizeMismatch(f"permanent needs a square matrix, got shape {a.shape}")
    if n == 0:
        return 1 + 0j
    total = 0j
    for cols in range(1, 1 << n):
        picked = [j for j in range(n) if cols >> j & 1]
        rows = a[:, picked].sum(axis=1)
        total += (-1) ** len(picked) * np.prod(rows)
    return complex((-1) ** n * total)


def _anyon(frm: ParticleConfig, to: ParticleConfig, theta: float, t: TimeParameter,
           c: PhysicalConstants, trunc: Truncation) -> complex:
    if frm.n != 2 or frm.d != 2:
        raise AnyonUnsupportedConfig("anyon statistics are implemented for n = 2, d = 2 only")
    r_a = frm.positions[0] - frm.positions[1]
    r_b = to.positions[0] - to.positions[1]
    rho = float(np.hypot(*r_a))
    if not math.isclose(float(np.hypot(*r_b)), rho, rel_tol=1e-9):
        raise AnyonUnsupportedConfig("the ring model needs equal initial and final particle separations")
    # class 0: the non-exchanging rotation of x1 - x2 by an angle in (-pi, pi]
    dphi = math.remainder(math.atan2(r_b[1], r_b[0]) - math.atan2(r_a[1], r_a[0]), 2 * math.pi)
    # lifts rho*(dphi + pi*w) == (rho/2) * (2*dphi + 2*pi*w): a ring of radius rho/2 in
    # doubled angle, passed unreduced so w keeps counting half-turns from class 0
    rel = class_sum(2 * dphi, rho / 2, t, BraidCharacter(theta), trunc, c.with_mass(c.mass / 2))
    cm_a = frm.positions.mean(axis=0)
    cm_b = to.positions.mean(axis=0)
    return free_kernel(2, cm_b - cm_a, t, c.with_mass(2 * c.mass)) * rel


def statistics_propagator(frm: ParticleConfig, to: ParticleConfig, kind, t: TimeParameter,
                          c: PhysicalConstants = NATURAL, trunc: Truncation = Truncation()) -> complex:
    """Propagator of n identical particles.

    Parameters
    ----------
    frm, to : ParticleConfig
    kind : "bose", "fermi" or Anyon(theta)
        Bose and Fermi enumerate all n! permutation classes in lexicographic
        order and weight them with the trivial or sign character. Anyons use
        the two-particle ring model (n = 2, d = 2, equal separations).
    t : TimeParameter
    c : PhysicalConstants
    trunc : Truncation
        Anyon ring sum only.

    Raises
    ------
    TooManyParticles
        n > 10.
    AnyonUnsupportedConfig
    """
    _check_sizes(frm, to)
    if isinstance(kind, Anyon):
        return _anyon(frm, to, kind.theta, t, c, trunc)
    kind = str(kind).lower()
    if kind not in (BOSE, FERMI):
        raise InputError(f"kind must be 'bose', 'fermi' or Anyon(theta), got {kind!r}")
    if frm.n > MAX_PARTICLES:
        raise TooManyParticles(f"{frm.n} particles; enumeration is capped at {MAX_PARTICLES}")
    chi = SymmetricCharacter(frm.n, "trivial" if kind == BOSE else "sign")
    partials = []
    for images in itertools.permutations(range(frm.n)):
        sigma = Permutation(images)
        partials.append((sigma, permutation_partial(frm, to, sigma, t, c)))
    return assemble(chi, partials)

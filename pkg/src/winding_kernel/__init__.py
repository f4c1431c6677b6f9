"""Propagators on multiply-connected spaces as character-weighted sums over homotopy classes.

The total amplitude on a space with fundamental group G is
``K = sum_{alpha in G} chi(alpha) K^alpha``, where ``K^alpha`` is the
path integral restricted to class alpha and chi is a one-dimensional
unitary representation of G. The package evaluates this for

* a free particle on a ring (G = Z), checked against the momentum eigenbasis;
* the free rotor on SU(2) and SO(3) (G = Z2 for SO(3));
* n identical free particles (G = S_n), plus two planar anyons;
* the Aharonov-Bohm ring around a solenoid.
"""
from .aharonov_bohm import ABSetup, ab_amplitude, delta_selector, intensity_scan
from .characters import (
    BraidCharacter,
    IntegerCharacter,
    Permutation,
    SymmetricCharacter,
    Z2Character,
    assemble,
    char_eval,
    parity,
)
from .circle import CirclePoint, Truncation, spectral_sum, winding_partials, winding_sum
from .errors import InputError, NumericalError, WindingKernelError
from .homotopy import ClassLabeling, PolylinePath, WindingClass, concat, relabel, reverse, winding_number
from .kernels import NATURAL, PhysicalConstants, TimeParameter, compose_check, free_kernel
from .many_body import Anyon, ParticleConfig, kernel_matrix, permutation_partial, statistics_propagator
from .spin import (
    SO3,
    SU2,
    EulerAngles,
    UnitQuaternion,
    class_partials,
    eigenfunction,
    propagator,
    quaternion_to_rotation,
    split_by_spin,
    wigner_d,
    wigner_D,
)

__version__ = "0.1.0"

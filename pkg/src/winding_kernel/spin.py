"""Free rotor on SU(2) and SO(3): Wigner-D spectral propagators and the double cover.

Conventions
-----------
Euler angles are z-y-z, ``D^j_{mk}(phi, theta, psi) = exp(-i m phi) d^j_{mk}(theta) exp(-i k psi)``.
With ``phi in [0, 2pi)``, ``theta in [0, pi]``, ``psi in [0, 4pi)`` the angles cover
SU(2) once; shifting ``psi`` by ``2 pi`` maps ``q`` to ``-q``. SO(3) only needs
``psi in [0, 2pi)``.

Normalised eigenfunctions of the Laplacian are
``sqrt((2j+1)/V) * conj(D^j_{mk})`` with ``V = 16 pi^2`` on SU(2) (all j) and
``V = 8 pi^2`` on SO(3) (integer j), with energies ``hbar^2 j (j+1) / (2 I)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import HalfIntegerOnSO3, InputError, InvalidSpinLabel, NumericalError, TruncationInsufficient
from .kernels import NATURAL, PhysicalConstants, TimeParameter

__all__ = [
    "SU2",
    "SO3",
    "EulerAngles",
    "UnitQuaternion",
    "SpinLabel",
    "wigner_d",
    "wigner_d_matrix",
    "wigner_D",
    "eigenfunction",
    "propagator",
    "propagator_terms",
    "split_by_spin",
    "class_partials",
    "quaternion_to_rotation",
    "compose_quadrature",
    "DEFAULT_JMAX",
]

SU2 = "SU2"
SO3 = "SO3"
DEFAULT_JMAX = 12.5
VOLUME = {SU2: 16 * math.pi ** 2, SO3: 8 * math.pi ** 2}


def _space(space) -> str:
    s = str(space).upper().replace("(", "").replace(")", "")
    if s not in VOLUME:
        raise InputError(f"space must be SU2 or SO3, got {space!r}")
    return s


def _twice(x, what="value") -> int:
    """2*x as an exact integer; rejects anything that is not a half-integer."""
    y = 2 * float(x)
    n = round(y)
    if abs(y - n) > 1e-9:
        raise InvalidSpinLabel(f"{what} {x!r} is not a half-integer")
    return int(n)


class SpinLabel(NamedTuple):
    j: float
    m: float
    k: float

    @classmethod
    def checked(cls, j, m, k) -> "SpinLabel":
        tj, tm, tk = _twice(j, "j"), _twice(m, "m"), _twice(k, "k")
        if tj < 0:
            raise InvalidSpinLabel(f"j must be nonnegative, got {j!r}")
        if abs(tm) > tj or abs(tk) > tj or (tj - tm) % 2 or (tj - tk) % 2:
            raise InvalidSpinLabel(f"invalid (j, m, k) = ({j}, {m}, {k})")
        return cls(tj / 2, tm / 2, tk / 2)

    @property
    def is_integer(self) -> bool:
        return _twice(self.j) % 2 == 0


@dataclass(frozen=True)
class EulerAngles:
    phi: float
    theta: float
    psi: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.phi, self.theta, self.psi)):
            raise InputError("Euler angles must be finite")
        if not (-1e-12 <= self.theta <= math.pi + 1e-12):
            raise InputError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "theta", min(max(float(self.theta), 0.0), math.pi))

    def flipped(self) -> "EulerAngles":
        """The other SU(2) preimage of the same rotation (``q -> -q``)."""
        return EulerAngles(self.phi, self.theta, (self.psi + 2 * math.pi) % (4 * math.pi))

    def to_quaternion(self) -> "UnitQuaternion":
        return UnitQuaternion.from_euler(self.phi, self.theta, self.psi)


IDENTITY = EulerAngles(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class UnitQuaternion:
    """``a + b i + c j + d k`` with ``a^2 + b^2 + c^2 + d^2 = 1`` (renormalised on construction)."""

    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        v = np.array([self.a, self.b, self.c, self.d], dtype=float)
        norm = float(np.linalg.norm(v))
        if not math.isfinite(norm) or norm == 0.0:
            raise InputError("cannot normalise a zero or non-finite quaternion")
        for name, x in zip("abcd", v / norm):
            object.__setattr__(self, name, float(x))

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "UnitQuaternion":
        n = np.asarray(axis, dtype=float)
        n = n / np.linalg.norm(n)
        s = math.sin(angle / 2)
        return cls(math.cos(angle / 2), *(s * n))

    @classmethod
    def from_euler(cls, phi: float, theta: float, psi: float) -> "UnitQuaternion":
        qz1 = cls(math.cos(phi / 2), 0.0, 0.0, math.sin(phi / 2))
        qy = cls(math.cos(theta / 2), 0.0, math.sin(theta / 2), 0.0)
        qz2 = cls(math.cos(psi / 2), 0.0, 0.0, math.sin(psi / 2))
        return qz1 * qy * qz2

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def __mul__(self, o: "UnitQuaternion") -> "UnitQuaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return UnitQuaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    @classmethod
    def _unchecked(cls, a, b, c, d) -> "UnitQuaternion":
        # sign flips of a unit quaternion stay unit; skipping the renormalisation keeps them exact
        q = object.__new__(cls)
        for name, x in zip("abcd", (a, b, c, d)):
            object.__setattr__(q, name, x)
        return q

    def __neg__(self) -> "UnitQuaternion":
        return self._unchecked(-self.a, -self.b, -self.c, -self.d)

    def conjugate(self) -> "UnitQuaternion":
        return self._unchecked(self.a, -self.b, -self.c, -self.d)

    inverse = conjugate

    def rotation_angle(self) -> float:
        """Rotation angle in [0, 2 pi] about the axis ``(b, c, d)``: ``a = cos(angle / 2)``.

        ``q`` and ``-q`` give ``angle`` and ``2 pi - angle`` about opposite axes,
        i.e. rotations by ``angle`` and ``angle + 2 pi`` about the same axis.
        """
        return 2 * math.acos(max(-1.0, min(1.0, self.a)))

    def to_euler(self) -> EulerAngles:
        """z-y-z Euler angles with ``phi in [0, 2pi)`` and ``psi in [0, 4pi)``."""
        a, b, c, d = self.a, self.b, self.c, self.d
        # from_euler gives (a, b, c, d) = (C cos S, -Sn sin D, Sn cos D, C sin S)
        # with C = cos(theta/2), Sn = sin(theta/2), S = (phi+psi)/2, D = (phi-psi)/2
        ct = math.hypot(a, d)
        st = math.hypot(b, c)
        theta = 2 * math.atan2(st, ct)
        sigma = math.atan2(d, a) if ct > 1e-300 else 0.0  # (phi + psi) / 2
        delta = math.atan2(-b, c) if st > 1e-300 else 0.0  # (phi - psi) / 2
        phi = sigma + delta
        psi = sigma - delta
        k = math.floor(phi / (2 * math.pi))
        phi -= 2 * math.pi * k
        psi += 2 * math.pi * k
        return EulerAngles(phi, theta, psi % (4 * math.pi))


def quaternion_to_rotation(q: UnitQuaternion) -> np.ndarray:
    """Rotation matrix of ``x -> q x q^-1`` acting on pure quaternions.

    Column i is the image of the i-th basis vector; ``R(q) == R(-q)``.
    """
    qinv = q.conjugate()
    cols = []
    for e in ((0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0)):
        a1, b1, c1, d1 = q.a, q.b, q.c, q.d
        a2, b2, c2, d2 = e
        # raw Hamilton products; pure quaternions are not unit-normalised
        p = (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = qinv.a, qinv.b, qinv.c, qinv.d
        cols.append((
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ))
    return np.array(cols).T


# Above this j the alternating factorial sum loses more than ~1e-12 to cancellation
# (about 3e-8 at j = 25 and O(1) at j = 50); larger j use the spectral form instead.
FACTORIAL_SUM_MAX_J = 12.5


@lru_cache(maxsize=None)
def _jy_eigvecs(tj: int) -> np.ndarray:
    """Eigenvectors of J_y (basis m = -j..j ascending), ordered by eigenvalue -j..j."""
    j = tj / 2
    ms = np.arange(-tj, tj + 1, 2) / 2
    raise_ = np.diag(np.sqrt(j * (j + 1) - ms[:-1] * (ms[:-1] + 1)), -1)
    jy = (raise_ - raise_.T) / 2j
    _, vecs = np.linalg.eigh(jy)
    return vecs


def _d_spectral(tj: int, theta: np.ndarray) -> np.ndarray:
    """``exp(-i theta J_y)`` through the eigenbasis of J_y, whose eigenvalues are exactly -j..j."""
    vecs = _jy_eigvecs(tj)
    lam = np.arange(-tj, tj + 1, 2) / 2
    phase = np.exp(-1j * theta[..., None] * lam)
    return np.einsum("ak,...k,bk->...ab", vecs, phase, vecs.conj()).real


def _lfact(n: int) -> float:
    return math.lgamma(n + 1)


def wigner_d(j, m, k, theta):
    """Little-d element ``d^j_{mk}(theta)`` from the explicit factorial sum.

    Factorials enter through log-gamma so large j does not overflow. For
    ``j > FACTORIAL_SUM_MAX_J`` the element is read from `wigner_d_matrix`,
    which switches to the spectral form there. `theta` may be an array.
    """
    lab = SpinLabel.checked(j, m, k)
    tj, tm, tk = _twice(lab.j), _twice(lab.m), _twice(lab.k)
    if lab.j > FACTORIAL_SUM_MAX_J:
        out = wigner_d_matrix(lab.j, theta)[..., (tm + tj) // 2, (tk + tj) // 2]
        return float(out) if np.ndim(out) == 0 else out
    jpm, jmm, jpk, jmk = (tj + tm) // 2, (tj - tm) // 2, (tj + tk) // 2, (tj - tk) // 2
    mmk = (tm - tk) // 2
    half = np.asarray(theta, dtype=float) / 2
    cos_h, sin_h = np.cos(half), np.sin(half)
    lnorm = 0.5 * (_lfact(jpm) + _lfact(jmm) + _lfact(jpk) + _lfact(jmk))
    out = np.zeros_like(half)
    for s in range(max(0, -mmk), min(jpk, jmm) + 1):
        coef = math.exp(lnorm - _lfact(jpk - s) - _lfact(s) - _lfact(mmk + s) - _lfact(jmm - s))
        sign = -1.0 if (mmk + s) % 2 else 1.0
        out = out + sign * coef * cos_h ** (jpk + jmm - 2 * s) * sin_h ** (mmk + 2 * s)
    if out.ndim == 0:
        return float(out)
    return out


@lru_cache(maxsize=None)
def _d_table(tj: int):
    """Flattened factorial-sum terms of every ``d^j_{mk}`` for ``j = tj / 2``.

    Elements run over ``m, k = -j, ..., j`` ascending, row-major; the terms of
    element ``e`` are ``starts[e]:starts[e + 1]``.
    """
    starts, coefs, pc, ps = [], [], [], []
    for tm in range(-tj, tj + 1, 2):
        for tk in range(-tj, tj + 1, 2):
            starts.append(len(coefs))
            jpm, jmm, jpk, jmk = (tj + tm) // 2, (tj - tm) // 2, (tj + tk) // 2, (tj - tk) // 2
            mmk = (tm - tk) // 2
            lnorm = 0.5 * (_lfact(jpm) + _lfact(jmm) + _lfact(jpk) + _lfact(jmk))
            for s in range(max(0, -mmk), min(jpk, jmm) + 1):
                coef = math.exp(lnorm - _lfact(jpk - s) - _lfact(s) - _lfact(mmk + s) - _lfact(jmm - s))
                coefs.append(-coef if (mmk + s) % 2 else coef)
                pc.append(jpk + jmm - 2 * s)
                ps.append(mmk + 2 * s)
    starts.append(len(coefs))
    return (np.array(starts), np.array(coefs),
            np.array(pc, dtype=float), np.array(ps, dtype=float))


def wigner_d_matrix(j, theta) -> np.ndarray:
    """All ``d^j_{mk}(theta)``, shape ``theta.shape + (2j+1, 2j+1)``, m and k ascending.

    Uses the factorial sum up to ``FACTORIAL_SUM_MAX_J`` and the J_y eigenbasis above.
    """
    tj = _twice(j, "j")
    if tj < 0:
        raise InvalidSpinLabel(f"j must be nonnegative, got {j!r}")
    th = np.asarray(theta, dtype=float)
    if tj > 2 * FACTORIAL_SUM_MAX_J:
        return _d_spectral(tj, th)
    starts, coefs, pc, ps = _d_table(tj)
    half = th[..., None] / 2
    vals = coefs * np.cos(half) ** pc * np.sin(half) ** ps
    # terms of each (m, k) are contiguous; elements with no terms stay zero
    out = np.zeros(th.shape + ((tj + 1) ** 2,))
    nonempty = starts[:-1] < starts[1:]
    out[..., nonempty] = np.add.reduceat(vals, starts[:-1][nonempty], axis=-1)
    return out.reshape(th.shape + (tj + 1, tj + 1))


def _D_matrix(j, phi, theta, psi) -> np.ndarray:
    tj = _twice(j)
    ms = np.arange(-tj, tj + 1, 2) / 2
    phi = np.asarray(phi, dtype=float)[..., None]
    psi = np.asarray(psi, dtype=float)[..., None]
    left = np.exp(-1j * ms * phi)
    right = np.exp(-1j * ms * psi)
    return left[..., :, None] * wigner_d_matrix(j, theta) * right[..., None, :]


def wigner_D(j, m, k, phi, theta, psi):
    """``D^j_{mk}(phi, theta, psi) = exp(-i m phi) d^j_{mk}(theta) exp(-i k psi)``."""
    lab = SpinLabel.checked(j, m, k)
    return np.exp(-1j * lab.m * np.asarray(phi)) * wigner_d(*lab, theta) * np.exp(-1j * lab.k * np.asarray(psi))


def eigenfunction(space, label, angles: EulerAngles) -> complex:
    """Normalised Laplacian eigenfunction ``sqrt((2j+1)/V) conj(D^j_{mk})``.

    Raises
    ------
    HalfIntegerOnSO3
        For half-integer j on SO(3), which has no such representations.
    """
    space = _space(space)
    lab = SpinLabel.checked(*label)
    if space == SO3 and not lab.is_integer:
        raise HalfIntegerOnSO3(f"j = {lab.j} is not a representation of SO(3)")
    norm = math.sqrt((2 * lab.j + 1) / VOLUME[space])
    return complex(norm * np.conj(wigner_D(*lab, angles.phi, angles.theta, angles.psi)))


def _j_values(space: str, jmax) -> list[float]:
    tmax = int(math.floor(2 * float(jmax) + 1e-9))
    if tmax < 0:
        raise InputError(f"jmax must be >= 0, got {jmax!r}")
    step = 1 if space == SU2 else 2
    return [tj / 2 for tj in range(0, tmax + 1, step)]


def _energy(j: float, c: PhysicalConstants) -> float:
    return c.hbar ** 2 * j * (j + 1) / (2 * c.inertia)


def _check_tail(space, jmax, t, c, tol):
    """Bound the discarded terms by ``(2j+1)^2 |exp(-E_j tau / hbar)| / V`` per j."""
    if tol is None:
        return
    re_tau = t.euclidean.real
    step = 0.5 if space == SU2 else 1.0
    kept = sum((2 * j + 1) ** 2 * math.exp(-_energy(j, c) * re_tau / c.hbar) for j in _j_values(space, jmax))
    tail = 0.0
    j = _j_values(space, jmax)[-1] + step
    while True:
        term = (2 * j + 1) ** 2 * math.exp(-_energy(j, c) * re_tau / c.hbar)
        tail += term
        if term < 1e-18 * kept or j > 1e4:
            break
        j += step
    if tail > tol * kept:
        raise TruncationInsufficient(
            f"spectral tail bound {tail / kept:.2e} (relative) exceeds {tol:.1e} at jmax = {jmax}")


def _trace_terms(space, frm_angles, to_angles, t, jmax, c):
    """Per-j contributions ``(2j+1)/V sum_{m,k} D_mk(to) conj(D_mk(frm)) exp(-E_j tau/hbar)``.

    Angles may be arrays (broadcast). The (m, k) double sum runs m outer, k
    inner, ascending, accumulated sequentially.
    """
    tau = t.euclidean
    out = []
    for j in _j_values(space, jmax):
        d_to = _D_matrix(j, *to_angles)
        d_frm = np.conj(_D_matrix(j, *frm_angles))
        prod = d_to * d_frm
        if prod.ndim == 2:
            # row-major flattening is the documented m-outer, k-inner order
            acc = 0j
            for v in prod.ravel().tolist():
                acc += v
        else:
            n = prod.shape[-1]
            acc = np.zeros(prod.shape[:-2], dtype=complex)
            for a in range(n):
                for b in range(n):
                    acc = acc + prod[..., a, b]
        factor = (2 * j + 1) / VOLUME[space] * np.exp(-_energy(j, c) * tau / c.hbar)
        out.append((j, factor * acc))
    return out


def _angles(e: EulerAngles):
    return (e.phi, e.theta, e.psi)


def propagator_terms(space, frm: EulerAngles, to: EulerAngles, t: TimeParameter,
                     jmax=DEFAULT_JMAX, c: PhysicalConstants = NATURAL) -> list[tuple[float, complex]]:
    """``[(j, term_j), ...]`` in ascending j; the propagator is their ordered sum."""
    space = _space(space)
    return [(j, complex(v)) for j, v in _trace_terms(space, _angles(frm), _angles(to), t, jmax, c)]


def _ordered(values) -> complex:
    total = 0j
    for v in values:
        total += v
    return total


def propagator(space, frm: EulerAngles, to: EulerAngles, t: TimeParameter,
               jmax=DEFAULT_JMAX, c: PhysicalConstants = NATURAL, tol: float | None = 1e-12) -> complex:
    """Truncated spectral propagator on SU(2) or SO(3).

    Parameters
    ----------
    space : {"SU2", "SO3"}
    frm, to : EulerAngles
    t : TimeParameter
    jmax : float
        Largest j kept (half-integers allowed; SO(3) keeps integer j only).
    c : PhysicalConstants
        Uses ``hbar`` and ``inertia``.
    tol : float or None
        Relative bound on the discarded spectral tail. ``None`` evaluates the
        truncated sum as is, which is what composition tests of the truncated
        operator need.

    Raises
    ------
    TruncationInsufficient
        If the tail bound exceeds `tol`.
    """
    space = _space(space)
    _check_tail(space, jmax, t, c, tol)
    return _ordered(v for _, v in propagator_terms(space, frm, to, t, jmax, c))


def split_by_spin(frm: EulerAngles, to: EulerAngles, t: TimeParameter, jmax=DEFAULT_JMAX,
                  c: PhysicalConstants = NATURAL, tol: float | None = 1e-12) -> tuple[complex, complex]:
    """SU(2) propagator split into its integer-j and half-integer-j parts."""
    _check_tail(SU2, jmax, t, c, tol)
    terms = propagator_terms(SU2, frm, to, t, jmax, c)
    k_int = _ordered(v for j, v in terms if float(j).is_integer())
    k_half = _ordered(v for j, v in terms if not float(j).is_integer())
    return k_int, k_half


def class_partials(frm: EulerAngles, to: EulerAngles, t: TimeParameter, jmax=DEFAULT_JMAX,
                   c: PhysicalConstants = NATURAL, tol: float | None = 1e-12) -> tuple[complex, complex]:
    """Class-I and class-II partial propagators on SO(3).

    With ``K_int``, ``K_half`` from `split_by_spin`::

        K_II = K_half + K_int
        K_I  = K_half - K_int

    so that ``2 K_int = K_II - K_I`` and ``2 K_half = K_II + K_I``. As a
    check, the two SU(2) preimages ``q`` (= `to`) and ``-q`` are evaluated
    directly: ``K_II`` must equal ``K_SU2(q)`` and ``K_I`` must equal
    ``-K_SU2(-q)``.

    Returns
    -------
    (K_I, K_II)
    """
    k_int, k_half = split_by_spin(frm, to, t, jmax, c, tol)
    k_ii = k_half + k_int
    k_i = k_half - k_int
    at_q = propagator(SU2, frm, to, t, jmax, c, tol=None)
    at_minus_q = propagator(SU2, frm, to.flipped(), t, jmax, c, tol=None)
    scale = max(abs(at_q), abs(at_minus_q), 1e-300)
    if abs(k_ii - at_q) > 1e-10 * scale or abs(k_i + at_minus_q) > 1e-10 * scale:
        raise NumericalError("class partials disagree with the two SU(2) preimages")
    return k_i, k_ii


def compose_quadrature(space, frm: EulerAngles, to: EulerAngles, t1: TimeParameter, t2: TimeParameter,
                       jmax, n: int = 32, c: PhysicalConstants = NATURAL) -> complex:
    """``int K(to, g; t2) K(g, frm; t1) dg`` on an ``n^3`` Euler-angle grid.

    The volume element is ``sin(theta) dtheta dphi dpsi`` (total volume
    ``16 pi^2`` on SU(2), ``8 pi^2`` on SO(3)), under which the eigenfunctions
    are orthonormal. ``phi`` and ``psi`` use uniform periodic grids and
    ``cos(theta)`` uses Gauss-Legendre nodes, so products of truncated kernels
    are integrated exactly up to rounding once ``n > 4 jmax`` on SU(2)
    (``psi`` spans two periods) and ``n > 2 jmax`` on SO(3).
    """
    space = _space(space)
    psi_period = 4 * math.pi if space == SU2 else 2 * math.pi
    phis = 2 * math.pi * np.arange(n) / n
    psis = psi_period * np.arange(n) / n
    x, wx = np.polynomial.legendre.leggauss(n)
    thetas = np.arccos(x)
    P, T, S = np.meshgrid(phis, thetas, psis, indexing="ij")
    W = np.broadcast_to(wx[None, :, None], P.shape) * (2 * math.pi / n) * (psi_period / n)
    grid = (P, T, S)
    k1 = _ordered(v for _, v in _trace_terms(space, _angles(frm), grid, t1, jmax, c))
    k2 = _ordered(v for _, v in _trace_terms(space, grid, _angles(to), t2, jmax, c))
    return complex(np.sum(W * k2 * k1))

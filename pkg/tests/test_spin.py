import math

import numpy as np
import pytest
from scipy.linalg import expm

from winding_kernel.errors import HalfIntegerOnSO3, InputError, InvalidSpinLabel, TruncationInsufficient
from winding_kernel.kernels import PhysicalConstants, TimeParameter
from winding_kernel.spin import (
    IDENTITY,
    SO3,
    SU2,
    EulerAngles,
    UnitQuaternion,
    class_partials,
    compose_quadrature,
    eigenfunction,
    propagator,
    propagator_terms,
    quaternion_to_rotation,
    split_by_spin,
    wigner_D,
    wigner_d,
    wigner_d_matrix,
)

T1 = TimeParameter(1.0)
SPINS = [tj / 2 for tj in range(0, 13)]


def jy_matrix(j):
    """Condon-Shortley J_y in the basis m = -j..j ascending."""
    ms = np.arange(-j, j + 1)
    jp = np.zeros((len(ms), len(ms)))
    for i, m in enumerate(ms[:-1]):
        jp[i + 1, i] = math.sqrt(j * (j + 1) - m * (m + 1))  # <m+1|J+|m>
    return (jp - jp.T) / 2j


def little_d_oracle(j, theta):
    """d^j(theta) = exp(-i theta J_y), by matrix exponential."""
    return expm(-1j * theta * jy_matrix(j)).real


def character_oracle(frm, to, j):
    """sum_{mk} D_mk(to) conj(D_mk(frm)) = chi_j of q_to q_frm^-1, from its scalar part."""
    q = to.to_quaternion() * frm.to_quaternion().conjugate()
    x = math.acos(max(-1.0, min(1.0, q.a)))
    if abs(math.sin(x)) < 1e-12:
        return (2 * j + 1) * (1 if q.a > 0 else (-1) ** round(2 * j))
    return math.sin((2 * j + 1) * x) / math.sin(x)


def random_angles(rng, space=SU2):
    period = 4 * math.pi if space == SU2 else 2 * math.pi
    return EulerAngles(rng.uniform(0, 2 * math.pi), math.acos(rng.uniform(-1, 1)), rng.uniform(0, period))


def random_quaternion(rng):
    return UnitQuaternion(*rng.normal(size=4))


# -- little d and D ------------------------------------------------------------------

def test_d_at_zero_is_identity():
    for j in SPINS:
        assert np.max(np.abs(wigner_d_matrix(j, 0.0) - np.eye(round(2 * j + 1)))) < 1e-14
    assert wigner_d(3, 2, 2, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert wigner_d(3, 2, 1, 0.0) == 0.0


def test_d_half():
    th = np.linspace(0, math.pi, 17)
    assert np.allclose(wigner_d(0.5, 0.5, 0.5, th), np.cos(th / 2), atol=1e-15)
    assert np.allclose(wigner_d(0.5, 0.5, -0.5, th), -np.sin(th / 2), atol=1e-15)


@pytest.mark.parametrize("j", SPINS)
def test_d_matches_matrix_exponential(j, rng):
    for theta in rng.uniform(0, math.pi, 5):
        assert np.max(np.abs(wigner_d_matrix(j, theta) - little_d_oracle(j, theta))) < 1e-12
        ms = np.arange(-j, j + 1)
        scalar = np.array([[wigner_d(j, m, k, theta) for k in ms] for m in ms])
        assert np.max(np.abs(scalar - wigner_d_matrix(j, theta))) < 1e-13


@pytest.mark.parametrize("j", SPINS)
def test_D_unitary(j, rng):
    ms = np.arange(-j, j + 1)
    for _ in range(5):
        e = random_angles(rng)
        d = np.array([[wigner_D(j, m, k, e.phi, e.theta, e.psi) for k in ms] for m in ms])
        rows = np.sum(np.abs(d) ** 2, axis=1)
        assert np.max(np.abs(rows - 1)) < 1e-10
        assert np.max(np.abs(d @ d.conj().T - np.eye(len(ms)))) < 1e-10


@pytest.mark.parametrize("j", [12.5, 13, 20.5, 30, 50])
def test_large_j_stays_accurate(j):
    for theta in (0.1, 1.1, 2.5, 3.1):
        d = wigner_d_matrix(j, theta)
        assert np.all(np.isfinite(d))
        assert np.max(np.abs(d @ d.T - np.eye(round(2 * j + 1)))) < 1e-11
        if j <= 30:
            assert np.max(np.abs(d - little_d_oracle(j, theta))) < 1e-11
    assert wigner_d(j, j, j - 1, 1.1) == wigner_d_matrix(j, 1.1)[-1, -2]


def test_methods_agree_at_the_switch():
    from winding_kernel.spin import FACTORIAL_SUM_MAX_J, _d_spectral
    tj = round(2 * FACTORIAL_SUM_MAX_J)
    th = np.linspace(0, math.pi, 7)
    assert np.max(np.abs(wigner_d_matrix(tj / 2, th) - _d_spectral(tj, th))) < 1e-11


def test_D_is_a_representation(rng):
    """D(q1 q2) = D(q1) D(q2), which pins the Euler/quaternion conventions together."""
    for j in (0.5, 1.0, 1.5, 3.0):
        ms = np.arange(-j, j + 1)

        def D(e):
            return np.array([[wigner_D(j, m, k, e.phi, e.theta, e.psi) for k in ms] for m in ms])

        for _ in range(5):
            q1, q2 = random_quaternion(rng), random_quaternion(rng)
            lhs = D((q1 * q2).to_euler())
            rhs = D(q1.to_euler()) @ D(q2.to_euler())
            assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_spin_label_validation():
    with pytest.raises(InvalidSpinLabel):
        wigner_d(1, 0.5, 0, 0.3)
    with pytest.raises(InvalidSpinLabel):
        wigner_d(1, 2, 0, 0.3)
    with pytest.raises(InvalidSpinLabel):
        wigner_d(0.3, 0.3, 0.3, 0.3)
    with pytest.raises(InputError):
        EulerAngles(0.0, 4.0, 0.0)


# -- eigenfunctions and propagators ---------------------------------------------------

def test_eigenfunction_examples():
    e = EulerAngles(0.3, 1.0, 2.0)
    assert eigenfunction(SU2, (0, 0, 0), e) == pytest.approx(1 / math.sqrt(16 * math.pi ** 2), abs=1e-15)
    assert eigenfunction(SO3, (0, 0, 0), e) == pytest.approx(1 / math.sqrt(8 * math.pi ** 2), abs=1e-15)
    assert eigenfunction(SU2, (0.5, 0.5, 0.5), IDENTITY) == pytest.approx(math.sqrt(2 / (16 * math.pi ** 2)), abs=1e-15)
    with pytest.raises(HalfIntegerOnSO3):
        eigenfunction(SO3, (0.5, 0.5, 0.5), e)


def test_eigenfunctions_orthonormal_by_quadrature():
    n = 12
    phis = 2 * math.pi * np.arange(n) / n
    psis = 4 * math.pi * np.arange(n) / n
    x, wx = np.polynomial.legendre.leggauss(n)
    labels = [(0, 0, 0), (0.5, 0.5, -0.5), (1, 0, 1), (1, 1, 1), (1.5, -0.5, 1.5)]
    gram = np.zeros((len(labels), len(labels)), dtype=complex)
    for p in phis:
        for ct, w in zip(x, wx):
            for s in psis:
                e = EulerAngles(p, math.acos(ct), s)
                vals = np.array([eigenfunction(SU2, lab, e) for lab in labels])
                gram += w * (2 * math.pi / n) * (4 * math.pi / n) * np.outer(vals.conj(), vals)
    assert np.max(np.abs(gram - np.eye(len(labels)))) < 1e-12


def test_identity_propagator_collapsed_form():
    for tau in (0.3, 1.0, 4.0):
        t = TimeParameter(tau)
        su2 = sum((tj + 1) ** 2 / (16 * math.pi ** 2) * math.exp(-(tj / 2) * (tj / 2 + 1) * tau / 2)
                  for tj in range(0, 26))
        so3 = sum((2 * j + 1) ** 2 / (8 * math.pi ** 2) * math.exp(-j * (j + 1) * tau / 2) for j in range(0, 13))
        assert abs(propagator(SU2, IDENTITY, IDENTITY, t, tol=None) - su2) < 1e-12
        assert abs(propagator(SO3, IDENTITY, IDENTITY, t, tol=None) - so3) < 1e-12


def test_long_time_constant_mode():
    t = TimeParameter(80.0)
    e = EulerAngles(1.0, 2.0, 3.0)
    assert abs(propagator(SU2, IDENTITY, e, t) - 1 / (16 * math.pi ** 2)) < 1e-15
    assert abs(propagator(SO3, IDENTITY, e, t) - 1 / (8 * math.pi ** 2)) < 1e-15


@pytest.mark.parametrize("space", [SU2, SO3])
def test_propagator_matches_character_oracle(space, rng):
    c = PhysicalConstants(hbar=1.3, inertia=0.8)
    for _ in range(10):
        frm, to = random_angles(rng, space), random_angles(rng, space)
        t = TimeParameter(rng.uniform(0.3, 3.0))
        for j, term in propagator_terms(space, frm, to, t, 6, c):
            vol = 16 * math.pi ** 2 if space == SU2 else 8 * math.pi ** 2
            energy = c.hbar ** 2 * j * (j + 1) / (2 * c.inertia)
            want = (2 * j + 1) / vol * character_oracle(frm, to, j) * math.exp(-energy * t.value / c.hbar)
            assert abs(term - want) < 1e-12


def test_propagator_truncation_guard():
    with pytest.raises(TruncationInsufficient):
        propagator(SU2, IDENTITY, IDENTITY, TimeParameter(0.01), jmax=3)
    # same call is allowed when the caller wants the truncated operator
    propagator(SU2, IDENTITY, IDENTITY, TimeParameter(0.01), jmax=3, tol=None)


def test_real_time_term_phases():
    t = TimeParameter.real(0.5)
    e = EulerAngles(0.2, 0.9, 1.4)
    for j, term in propagator_terms(SU2, IDENTITY, e, t, 2):
        want = (2 * j + 1) / (16 * math.pi ** 2) * character_oracle(IDENTITY, e, j) * np.exp(-j * (j + 1) / 2 * t.euclidean)
        assert abs(term - want) < 1e-13


# -- splitting, classes and the 2 pi rotation ------------------------------------------

def test_split_sums_to_whole(rng):
    for _ in range(10):
        to = random_angles(rng)
        k_int, k_half = split_by_spin(IDENTITY, to, T1)
        whole = propagator(SU2, IDENTITY, to, T1)
        # same terms, summed in a different grouping
        assert abs(k_int + k_half - whole) <= 1e-15 * (abs(k_int) + abs(k_half))


def test_half_integer_part_decays_first():
    to = EulerAngles(0.5, 0.5, 0.5)
    ratios = []
    for tau in (1.0, 10.0, 40.0):
        k_int, k_half = split_by_spin(IDENTITY, to, TimeParameter(tau))
        ratios.append(abs(k_half / k_int))
    assert ratios[0] > ratios[1] > ratios[2] and ratios[2] < 1e-3


def test_two_pi_rotation_sign(rng):
    for _ in range(20):
        frm, to = random_angles(rng), random_angles(rng)
        assert np.allclose(to.flipped().to_quaternion().as_array(), -to.to_quaternion().as_array(), atol=1e-15)
        a = propagator_terms(SU2, frm, to, T1, 6)
        b = propagator_terms(SU2, frm, to.flipped(), T1, 6)
        for (j, ta), (_, tb) in zip(a, b):
            assert abs(tb - (-1) ** round(2 * j) * ta) < 1e-12
        k_int, k_half = split_by_spin(frm, to, T1)
        f_int, f_half = split_by_spin(frm, to.flipped(), T1)
        assert abs(f_half + k_half) < 1e-12 and abs(f_int - k_int) < 1e-12


def test_class_partial_relations(rng):
    for _ in range(20):
        frm, to = random_angles(rng), random_angles(rng)
        k_int, k_half = split_by_spin(frm, to, T1)
        k_i, k_ii = class_partials(frm, to, T1)
        k_su2 = propagator(SU2, frm, to, T1)
        k_so3 = propagator(SO3, frm, to, T1)
        assert abs(2 * k_int - (k_ii - k_i)) < 1e-12
        assert abs(2 * k_half - (k_ii + k_i)) < 1e-12
        assert abs(k_su2 - k_ii) < 1e-12
        # the class sum with the sign character of Z2 is the SO(3) propagator
        assert abs((k_ii - k_i) - k_so3) < 1e-12
        assert abs(k_i + propagator(SU2, frm, to.flipped(), T1)) < 1e-12


def test_identity_target_classes():
    k_i, k_ii = class_partials(IDENTITY, IDENTITY, T1)
    assert abs((k_ii - k_i) - propagator(SO3, IDENTITY, IDENTITY, T1)) < 1e-10
    # long times: K_half dies off and K_I -> -K_int
    t = TimeParameter(60.0)
    k_int, _ = split_by_spin(IDENTITY, IDENTITY, t)
    k_i, _ = class_partials(IDENTITY, IDENTITY, t)
    assert abs(k_i + k_int) < 1e-6 * abs(k_int)


# -- quaternions ----------------------------------------------------------------------------

def test_rotation_examples():
    assert np.array_equal(quaternion_to_rotation(UnitQuaternion(1.0)), np.eye(3))
    q = UnitQuaternion(math.cos(math.pi / 4), 0, 0, math.sin(math.pi / 4))
    assert np.allclose(quaternion_to_rotation(q), [[0, -1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)


def test_rotation_homomorphism_and_kernel(rng):
    for _ in range(1000):
        q1, q2 = random_quaternion(rng), random_quaternion(rng)
        r1, r2 = quaternion_to_rotation(q1), quaternion_to_rotation(q2)
        assert np.max(np.abs(quaternion_to_rotation(q1 * q2) - r1 @ r2)) < 1e-12
        assert np.array_equal(quaternion_to_rotation(-q1), r1)
        assert np.max(np.abs(r1.T @ r1 - np.eye(3))) < 1e-12
        assert abs(np.linalg.det(r1) - 1) < 1e-12


def test_euler_quaternion_roundtrip(rng):
    for _ in range(200):
        q = random_quaternion(rng)
        back = q.to_euler().to_quaternion()
        assert np.max(np.abs(back.as_array() - q.as_array())) < 1e-12
    for _ in range(50):
        e = random_angles(rng)
        assert np.allclose(quaternion_to_rotation(e.to_quaternion()),
                           quaternion_to_rotation(e.flipped().to_quaternion()), atol=0)


def test_rotation_angle():
    q = UnitQuaternion.from_axis_angle([0, 0, 1], 3.0)
    assert q.rotation_angle() == pytest.approx(3.0)
    assert (-q).rotation_angle() == pytest.approx(2 * math.pi - 3.0)
    assert np.allclose(UnitQuaternion.from_axis_angle([0, 0, 1], 3.0 + 2 * math.pi).as_array(),
                       (-q).as_array(), atol=1e-15)


# -- semigroup by quadrature ------------------------------------------------------------------

@pytest.mark.parametrize("space", [SU2, SO3])
def test_semigroup_small_grid(space):
    frm, to = EulerAngles(0.3, 1.1, 2.0), EulerAngles(1.7, 0.4, 0.9)
    t1, t2 = TimeParameter(0.4), TimeParameter(0.7)
    got = compose_quadrature(space, frm, to, t1, t2, jmax=2, n=9)
    want = propagator(space, frm, to, t1.plus(t2), jmax=2, tol=None)
    assert abs(got - want) < 1e-12


def test_semigroup_quadrature_aliases_below_resolution():
    # the psi grid spans 4 pi, so n = 4 jmax aliases the highest frequency
    frm, to = EulerAngles(0.3, 1.1, 2.0), EulerAngles(1.7, 0.4, 0.9)
    t = TimeParameter(0.3)
    want = propagator(SU2, frm, to, t.plus(t), jmax=2, tol=None)
    assert abs(compose_quadrature(SU2, frm, to, t, t, jmax=2, n=8) - want) > 1e-6
    assert abs(compose_quadrature(SU2, frm, to, t, t, jmax=2, n=9) - want) < 1e-12

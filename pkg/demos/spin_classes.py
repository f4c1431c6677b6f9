"""
The rotor on SU(2) and on SO(3)
===============================

SO(3) has two classes of closed paths: those that lift to closed paths on
SU(2) and those that do not. The SU(2) propagator sums over spins
j = 0, 1/2, 1, ... and the integer and half-integer parts recombine into
the two class partials of SO(3).
"""
import math

from winding_kernel import SO3, SU2, EulerAngles, TimeParameter, class_partials, propagator, split_by_spin
from winding_kernel.spin import UnitQuaternion, quaternion_to_rotation

# %% q and -q give the same rotation.
q = UnitQuaternion(0.3, -0.5, 0.7, 0.4)
print("R(q) == R(-q):", (quaternion_to_rotation(q) == quaternion_to_rotation(-q)).all())

# %% Integer and half-integer spin parts, and the two classes.
frm, to = EulerAngles(0.0, 0.0, 0.0), EulerAngles(0.2, 1.0, 0.4)
# short times need more spins before the tail is negligible
jmax = 30
print("\n  tau      K_int          K_half         K_I            K_II           K_SO3")
for tau in (0.3, 1.0, 3.0):
    t = TimeParameter(tau)
    k_int, k_half = split_by_spin(frm, to, t, jmax)
    k_i, k_ii = class_partials(frm, to, t, jmax)
    print(f"{tau:5.2f}  {k_int.real:+.6e}  {k_half.real:+.6e}  {k_i.real:+.6e}  {k_ii.real:+.6e}  "
          f"{propagator(SO3, frm, to, t, jmax).real:+.6e}")

# %% Checks: K_II is the SU(2) propagator and K_II - K_I is the SO(3) one.
t = TimeParameter(1.0)
k_i, k_ii = class_partials(frm, to, t)
print("\n|K_SU2 - K_II|        =", abs(propagator(SU2, frm, to, t) - k_ii))
print("|K_SO3 - (K_II - K_I)| =", abs(propagator(SO3, frm, to, t) - (k_ii - k_i)))

# %% A full 2 pi turn (-q on SU(2)) flips the sign of every half-integer term.
flipped = propagator(SU2, frm, to.flipped(), t)
k_int, k_half = split_by_spin(frm, to, t)
print("K_SU2 after a 2 pi turn:", flipped, " K_int - K_half:", k_int - k_half)

# %% Rotation angle scan: on SU(2) the kernel distinguishes theta from theta + 2 pi.
print("\n theta/pi   K_SU2          K_SO3")
for k in range(0, 9):
    theta = k * math.pi / 4
    e = EulerAngles(0.0, 0.0, theta)
    print(f"{theta / math.pi:6.2f}  {propagator(SU2, frm, e, t).real:+.6e}  {propagator(SO3, frm, e, t).real:+.6e}")

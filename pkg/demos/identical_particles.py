"""
Identical particles: bosons, fermions, and two anyons
=====================================================

For n identical particles the classes of paths are the permutations of
the endpoints. Weighting every permutation by 1 gives the permanent of
the single-particle kernel matrix (bosons); weighting by the sign gives
its determinant (fermions). In the plane, two particles can also pick up
an arbitrary phase per exchange.
"""
import math

import numpy as np

from winding_kernel import Anyon, ParticleConfig, TimeParameter, kernel_matrix, statistics_propagator
from winding_kernel.many_body import permanent

rng = np.random.default_rng(7)
t = TimeParameter(1.0)

# %% Enumeration over permutations vs permanent and determinant.
for n in (2, 3, 4):
    frm, to = ParticleConfig(rng.normal(size=(n, 3))), ParticleConfig(rng.normal(size=(n, 3)))
    m = kernel_matrix(frm, to, t)
    kb, kf = statistics_propagator(frm, to, "bose", t), statistics_propagator(frm, to, "fermi", t)
    print(f"n={n}: bose {kb.real:+.6e} (permanent {permanent(m).real:+.6e})   "
          f"fermi {kf.real:+.6e} (det {np.linalg.det(m).real:+.6e})")

# %% Pauli: the fermion amplitude vanishes linearly as two endpoints merge.
frm = ParticleConfig([[0.0, 0.0, 0.0], [1.0, 0.3, -0.2]])
print("\n separation   |K_fermi|")
for eps in np.geomspace(1e-1, 1e-7, 7):
    to = ParticleConfig([[0.4, 0.1, 0.0], [0.4 + eps, 0.1, 0.0]])
    print(f"  {eps:8.1e}   {abs(statistics_propagator(frm, to, 'fermi', t)):.3e}")

# %% Two anyons: a half turn of the pair, for a range of exchange phases.
frm = ParticleConfig([[1.0, 0.0], [-1.0, 0.0]])
print("\n  theta/pi  |K|            arg K")
for k in range(0, 5):
    theta = k * math.pi / 4
    for angle in (math.pi / 2,):
        c, s = math.cos(angle), math.sin(angle)
        to = ParticleConfig([[c, s], [-c, -s]])
        amp = statistics_propagator(frm, to, Anyon(theta), t)
        print(f"  {theta / math.pi:6.2f}   {abs(amp):.6e}  {math.atan2(amp.imag, amp.real):+.4f}")

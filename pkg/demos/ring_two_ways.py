"""
A free particle on a ring, computed two ways
============================================

The ring is not simply connected: a path from angle 0 to angle dtheta can
wrap around any whole number of times. Summing the free-line kernel over
every wrap, each weighted by a phase exp(-i w delta), gives the ring
propagator. The same number also comes out of the momentum eigenbasis,
where delta shows up as a shifted angular momentum.
"""
import math

import numpy as np

from winding_kernel import CirclePoint, TimeParameter, spectral_sum, winding_partials, winding_sum
from winding_kernel.characters import IntegerCharacter

# %% Which wraps matter? At short times only the direct path does.
for tau in (0.1, 1.0, 5.0):
    parts = winding_partials(math.pi / 2, 1.0, TimeParameter(tau))
    mags = {cls.w: abs(k) for cls, k in parts if abs(cls.w) <= 2}
    print(f"tau={tau:4}: " + "  ".join(f"w={w:+d}: {m:.3e}" for w, m in sorted(mags.items())))

# %% The winding sum and the eigenbasis sum agree.
a = CirclePoint(0.0)
print("\n dtheta    tau   delta   winding sum               |difference|")
for dtheta in (0.0, math.pi / 4, math.pi / 2):
    for tau in (0.5, 2.0):
        for delta in (0.0, math.pi / 2, math.pi):
            b, t = CirclePoint(dtheta), TimeParameter(tau)
            kw = winding_sum(a, b, t, IntegerCharacter(delta))
            ks = spectral_sum(a, b, t, delta)
            print(f"{dtheta:7.4f} {tau:6.2f} {delta:7.4f}  {kw:.12f}  {abs(kw - ks):.1e}")

# %% At long times the ring relaxes to its ground state, density 1/(2 pi rho).
taus = np.geomspace(0.1, 50, 6)
vals = [winding_sum(a, CirclePoint(1.0), TimeParameter(tau)).real for tau in taus]
print("\nrelaxation toward 1/(2 pi) =", 1 / (2 * math.pi))
for tau, v in zip(taus, vals):
    print(f"  tau={tau:7.3f}  K={v:.10f}")

# %% With delta = pi the wraps alternate in sign; opposite the source they cancel.
print("\ndelta=pi, dtheta=pi:", abs(winding_sum(a, CirclePoint(math.pi), TimeParameter(1.0), IntegerCharacter(math.pi))))

"""
Aharonov-Bohm: a ring around a solenoid
=======================================

A magnetic flux confined inside the ring changes no force on the
particle, yet it weights each winding class by exp(i alpha (dphi + 2 pi w)).
The pattern is periodic in the flux with period one flux quantum and, in
real time, the intensity pattern drifts around the ring as alpha grows.
"""
import math

import numpy as np

from winding_kernel import ABSetup, TimeParameter, ab_amplitude, delta_selector, intensity_scan

angles = np.linspace(-math.pi, math.pi, 721)

# %% Real-time intensity pattern: the peak moves as the flux grows.
# At alpha = 1/2 the pattern is mirror symmetric with two equal peaks, so the
# reported maximum jumps to the other one.
t = TimeParameter.real(1.0, 0.2)
print(" alpha   peak angle")
for alpha in (0.0, 0.125, 0.25, 0.375, 0.5):
    scan = intensity_scan(ABSetup(flux_alpha=alpha), angles, t)
    peak = max(scan, key=lambda p: p[1])[0]
    print(f"{alpha:6.3f}  {peak:+.4f}")

# %% One flux quantum later the intensities are identical.
t = TimeParameter(1.0)
diff = max(abs(abs(ab_amplitude(ABSetup(flux_alpha=0.3), a, t)) ** 2
               - abs(ab_amplitude(ABSetup(flux_alpha=1.3), a, t)) ** 2) for a in angles)
print("\nmax intensity change under alpha -> alpha + 1:", diff)

# %% At zero flux the phase per winding is fixed by the screen center.
sel = delta_selector(ABSetup(), t)
print("center amplitude, delta=0 :", sel.center_zero)
print("center amplitude, delta=pi:", sel.center_pi)
print("selected delta:", sel.delta)

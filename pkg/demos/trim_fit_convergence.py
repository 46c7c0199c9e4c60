"""Fit cubic boundary curves to sampled points, then integrate.

A circle sampled densely and refit with more and more cubic segments
gives areas converging at fourth order in the segment size.
"""

import numpy as np

from bezquad import PlanarRegion, fit_trim_curves, integrate2d, spectral_rule

# closed loop: the first sample is repeated at the end
t = np.linspace(0.0, 2.0 * np.pi, 1537)
samples = np.column_stack([np.cos(t), np.sin(t)])

print("segments  area error   ratio")
prev = None
for segs in (4, 8, 16, 32, 64):
    loop = fit_trim_curves(samples, segs)
    region = PlanarRegion((tuple(loop),))
    area = integrate2d(spectral_rule(region, 10, 10), lambda x, y: np.ones_like(x))
    err = abs(area - np.pi)
    ratio = "" if prev is None else f"{prev / err:6.1f}"
    print(f"{segs:8d}  {err:.3e}  {ratio}")
    prev = err
print("(fourth order shows up as ratios near 16)")

"""Integrate over a disk and an annulus without meshing either one.

The region is described only by its boundary curves; the rule keeps
every node inside the region and needs no cells.
"""

import numpy as np

from bezquad import annulus_region, circle_region, integrate2d, spectral_rule

disk = circle_region(radius=1.0)
rule = spectral_rule(disk, 16, 16)
print(f"disk rule: {len(rule.weights)} nodes, all interior")

cases = [
    ("1 (area)", lambda x, y: np.ones_like(x), np.pi),
    ("x^2 + y^2", lambda x, y: x**2 + y**2, np.pi / 2),
    ("x^4", lambda x, y: x**4, np.pi / 8),
    ("x*y", lambda x, y: x * y, 0.0),
]
for label, f, want in cases:
    got = integrate2d(rule, f)
    print(f"  {label:12s} got {got: .15f}  error {abs(got - want):.2e}")

ring = annulus_region(outer=1.0, inner=0.5)
ring_rule = spectral_rule(ring, 16, 16)
area = integrate2d(ring_rule, lambda x, y: np.ones_like(x))
print(f"annulus rule: {len(ring_rule.weights)} nodes")
print(f"  area         got {area: .15f}  error {abs(area - 0.75 * np.pi):.2e}")

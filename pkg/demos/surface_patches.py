"""Surface integrals over trimmed and untrimmed patch unions.

Cube faces use the tensor shortcut; the cylinder mixes four untrimmed
side patches with two caps trimmed by fitted circles.
"""

import numpy as np

from bezquad import bundled, load_solid, surface_integrate

one = lambda x, y, z: np.ones_like(x)

cube = load_solid(bundled("cube.solid.json"))
area = surface_integrate(cube.patches, one, 8, 8)
print(f"cube surface area      {area:.15f}  (exact 6)")

gauss = surface_integrate(cube.patches, lambda x, y, z: x * x + y * y + z * z, 12, 12)
print(f"cube  x^2+y^2+z^2 dS   {gauss:.15f}")

cyl = load_solid(bundled("cylinder.solid.json"))
area = surface_integrate(cyl.patches, one, 16, 16)
want = 4.0 * np.pi  # lateral 2*pi*r*h plus two caps of pi*r^2
print(f"cylinder surface area  {area:.15f}  error {abs(area - want):.2e}")
for i, p in enumerate(cyl.patches):
    kind = "trimmed" if p.loops else "untrimmed"
    print(f"  patch {i}: {kind}, {len(p.loops)} trim loop(s)")

# Geometric moments of a region, then quadrature weights fitted to
# reproduce them at caller-chosen points.

import numpy as np

from bezquad import (
    circle_region,
    geometric_moments,
    moment_fit_weights,
    monomial_exponents,
)

region = circle_region()
mv = geometric_moments(region, 4)
print("disk moments through degree 4 (graded lexicographic):")
for (a, b), value in zip(monomial_exponents(4, 2), mv.values):
    print(f"  x^{a} y^{b}: {value: .15f}")

rng = np.random.default_rng(7)
pts = rng.uniform(-0.9, 0.9, (40, 2))
w, resid = moment_fit_weights(pts, mv)
print(f"\nfitted {len(w)} weights at random interior points, residual {resid:.2e}")
worst = 0.0
for (a, b), want in zip(monomial_exponents(4, 2), mv.values):
    got = float(np.dot(w, pts[:, 0] ** a * pts[:, 1] ** b))
    worst = max(worst, abs(got - want))
print(f"worst moment reproduction error {worst:.2e}")
print(f"weight sum {w.sum():.15f} vs area {np.pi:.15f}")

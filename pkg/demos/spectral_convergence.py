"""Error decay for a smooth integrand as the rule order grows."""

import numpy as np

from bezquad import circle_region, integrate2d, spectral_rule

region = circle_region()
f = lambda x, y: np.exp(x + y)

# reference from a much finer rule of the same family
reference = integrate2d(spectral_rule(region, 40, 40), f)

print("order  nodes   error")
for n in range(4, 22, 2):
    rule = spectral_rule(region, n, n)
    err = abs(integrate2d(rule, f) - reference)
    print(f"{n:5d}  {len(rule.weights):5d}   {err:.3e}")
print(f"reference value {reference:.15f}")

"""The expression language, rule files, and the matching command line.

Everything shown here is also reachable through the bezquad console
script; the equivalent invocations are printed alongside.
"""

import numpy as np

from bezquad import (
    circle_region,
    evaluate,
    integrate2d,
    parse,
    polynomial_degree,
    save_rule,
    load_rule,
    spectral_rule,
    to_callable,
    to_text,
)

node = parse("exp(x + y) / (1 + x^2)")
print("parsed:", to_text(node))
print("at (0.5, 0.25, 0):", evaluate(node, (0.5, 0.25, 0.0)))
print("polynomial degree:", polynomial_degree(node), "(None means not a polynomial)")
print("degree of 3*x^2*y + 1:", polynomial_degree(parse("3*x^2*y + 1")))

region = circle_region()
rule = spectral_rule(region, 14, 14)
f = to_callable(node)
value = float(np.dot(rule.weights, f(rule.points[:, 0], rule.points[:, 1], 0.0)))
print(f"\nintegral over the disk: {value:.15f}")

save_rule(rule, "disk_rule.csv")
back = load_rule("disk_rule.csv")
same = np.array_equal(back.points, rule.points) and np.array_equal(back.weights, rule.weights)
print("rule file round-trips bit for bit:", same)

print("\ncommand-line equivalents:")
print("  bezquad rule2d --region circle.region.json --mode spectral --order 14 --out disk_rule.csv")
print("  bezquad integrate --rule disk_rule.csv --expr 'exp(x + y) / (1 + x^2)'")
print("  bezquad integrate --model circle.region.json --expr 'x^2 + y^2' --pe")
print("  bezquad convergence --model circle.region.json --expr 'exp(x)' --orders 4:20:2")

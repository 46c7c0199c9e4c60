# Rules sized for a fixed polynomial degree instead of a smoothness target.
# For low-degree integrands they are much smaller than the spectral rules
# while still reproducing every monomial up to that degree.

from bezquad import circle_region, integrate2d, spectral_pe_rule, spectral_rule

region = circle_region()
dense = spectral_rule(region, 30, 30)

print("degree  exact-rule nodes  worst monomial error")
for k in range(1, 6):
    rule = spectral_pe_rule(region, k)
    worst = 0.0
    for a in range(k + 1):
        for b in range(k + 1 - a):
            f = lambda x, y, a=a, b=b: x**a * y**b
            want = integrate2d(dense, f)
            worst = max(worst, abs(integrate2d(rule, f) - want))
    print(f"{k:6d}  {len(rule.weights):16d}  {worst:.2e}")
print(f"(spectral comparison rule carries {len(dense.weights)} nodes)")

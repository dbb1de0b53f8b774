"""Basic closed quadrature rules: Gauss-Lobatto vs Newton-Cotes.

Gauss-Lobatto rules keep both interval end points and still reach
degree 2n - 3, the best possible for a closed rule on n points.  The
first two members coincide with the trapezoidal and Simpson rules; from
n = 4 the families split and Gauss-Lobatto pulls ahead.
"""

import numpy as np

from hplaplace import error_constant, gauss_lobatto, newton_cotes_closed

print("n-point rules on [0, 1] and their degrees")
print(f"{'n':>3} {'Gauss-Lobatto':>15} {'Newton-Cotes':>14}")
for n in range(2, 12):
    gl = gauss_lobatto(n).degree
    nc = newton_cotes_closed(n).degree
    print(f"{n:>3} {gl:>15} {nc:>14}")

print("\n4-point Gauss-Lobatto on [-1, 1]:")
rule = gauss_lobatto(4, -1.0, 1.0)
print("  nodes  :", rule.nodes)
print("  weights:", rule.weights, " (interior nodes at 1/sqrt(5))")

print("\nExactness sweep for the 5-point rule (degree 7):")
rule = gauss_lobatto(5)
for j in range(6, 10):
    err = abs(rule.integrate(lambda x: x ** j) - 1.0 / (j + 1))
    status = "exact" if err < 1e-14 else f"error {err:.2e}"
    print(f"  integral of x^{j}: {status}")

print("\nNewton-Cotes weights turn negative from n = 9:")
for n in (8, 9):
    w = newton_cotes_closed(n).weights
    print(f"  n={n}: min weight {w.min():+.4f}")

print("\nPer-interval error constants C(p) of the degree-p Lobatto rules:")
for p in (1, 3, 5, 7):
    print(f"  C({p}) = {error_constant(p):.6e}")

"""Complex loop integrals with root singularities on the contour.

The composite h-p rule carries over to closed contours: split the loop
at (possibly artificial) corners, grade each segment toward its ends,
and absorb the parameterisation tangent into the weights.  The test
integrand sqrt((z-1)/i)/z has a pole at 0 (picked up by the residue)
and a derivative singularity on the contour at z = 1.
"""

import numpy as np

from hplaplace import discretize, make_contour, replicate_over_segments, segment_rule
from hplaplace.studies import contour_integrand, run_contour_study

exact = 2j * np.pi * np.sqrt(1j)
print("loop integral of sqrt((z-1)/i)/z around the unit circle")
print(f"exact value (residue at 0): {exact:.12f}\n")

circle = make_contour("circle", segments=2)  # corners at z = 1 and z = -1
for D in (4, 8, 12):
    rule = replicate_over_segments(circle.segment_bounds, segment_rule(D, 0.15),
                                   wrap_closed=True)
    disc = discretize(circle, rule)
    approx = np.sum(disc.weights * contour_integrand(disc.zeta_nodes))
    print(f"D={D:2d}: N={disc.N:4d}  |1 - I/exact| = {abs(1 - approx / exact):.2e}")

print("\nfull study with the linearity diagnostic:")
res = run_contour_study(0.15, 8, 13)
for _, D, N, err in res.rows:
    print(f"  D={D:2d} N={N:4d} error={err:.3e}")
fit = res.fits["sqrtN"]
print(f"log10(error) vs sqrt(N): slope {fit['slope']:.3f}, R^2 {fit['r_squared']:.4f}")

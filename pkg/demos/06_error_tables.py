"""Reproducing the (D, O) error tables for the teardrop test problems.

Sweeps the boundary solve over grading depth D (system size N = (D+1)^2)
and interpolation stencil size O, for the singular test field z^(1/2)
at its near-optimal grading ratio sigma = 0.10.  Errors fall with both
parameters until interpolation roundoff takes over.
"""

from hplaplace import run_error_table

res = run_error_table("teardrop", alpha=0.5, sigma=0.10,
                      d_range=range(3, 10), o_range=range(2, 11, 2))

o_values = sorted({row[1] for row in res.rows})
print("teardrop, U = Re(z^(1/2)), sigma = 0.10; unweighted 2-norm errors")
print(f"{'N':>5} " + " ".join(f"O={o:<8}" for o in o_values))
by_d = {}
for D, O, N, err, diverged in res.rows:
    by_d.setdefault((D, N), {})[O] = err
for (D, N), row in sorted(by_d.items()):
    print(f"{N:>5} " + " ".join(f"{row[o]:<10.1e}" for o in o_values))

best = min(res.rows, key=lambda r: r[3])
print(f"\nbest cell: N={best[2]}, O={best[1]}, error={best[3]:.4e}")
print("CSV representation is deterministic; write it with res.write_csv(path)")

"""The generalized cotangent series U_{2m}(z) = sum_t 1/(t^{2m} + z^{2m}).

For m = 1 and m = 2 there are closed forms in terms of coth and the
kernel Psi; for higher m only direct summation is available.
"""

import numpy as np

from evenpowers import EvalOptions, u_closed, u_direct

opts = EvalOptions(abs_tol=1e-12, max_terms=10_000_000)

print("      z        U_2 closed        U_4 closed        U_4 direct         tail bound")
for z in np.geomspace(0.01, 100, 9):
    d = u_direct(2, z, opts)
    print(f"{z:9.4g}  {u_closed(1, z):16.10g}  {u_closed(2, z):16.10g}  "
          f"{d.value:16.10g}  {d.error_bound:10.2g}")

# Near z = 0 the t = 0 term z^{-2m} dominates.  For m = 1 the tail bound
# 2/T shrinks slowly, so a looser tolerance keeps T moderate.
z = 1e-2
for m in (1, 2, 3):
    d = u_direct(m, z, EvalOptions(abs_tol=1e-6))
    print(f"m={m}: z^{2 * m} U(z) at z=0.01 = {z ** (2 * m) * d.value:.9f}")

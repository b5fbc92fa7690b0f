"""The diagonal and Hölder lower bounds and their ratio.

    b_geo = (1/k) U_{2m}((a/k)^{1/(2m)})     (restrict to x_1 = ... = x_k)
    b_ana = a^{k-1} U_{2m}(a^{1/(2m)})^k     (Hölder on the theta integral)

Both are checked against a certified bracket.  The ratio b_ana/b_geo is
at least 1 for every a: it tends to 1 as a -> 0 and grows like
a^{(k-1)/(2m)} for large a, so the Hölder bound is never the weaker one.
"""

import numpy as np

from evenpowers import EvalOptions, PowerParams, asymptotic_slope, ratio_curve, verify_bounds

p = PowerParams(2, 3, 1.0)
rep = verify_bounds(p, EvalOptions(abs_tol=1e-3, max_terms=1 << 22))
print(f"(m,k,a)=(2,3,1): b_geo={rep.b_geo:.6f}  b_ana={rep.b_ana:.6f}  "
      f"S in [{rep.s_bracket.lower:.6f}, {rep.s_bracket.upper:.6f}]  strict={rep.all_strict}")

for a, r in ratio_curve(PowerParams(2, 3), np.geomspace(1e-6, 1e6, 13)):
    print(f"a={a:8.0e}  R={r:.8g}")

for m, k in [(2, 2), (2, 3), (3, 4), (3, 5)]:
    s = asymptotic_slope(PowerParams(m, k), 1e3, 1e6)
    print(f"m={m} k={k}: slope {s:.4f}, (k-1)/(2m) = {(k - 1) / (2 * m):.4f}")

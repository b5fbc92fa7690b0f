"""Certified brackets for S_{m,k}(a) = sum_n r_{m,k}(n) / (n + a).

The series converges only for k < 2m, and slowly: the tail after N
terms decays like N^{k/(2m) - 1}.  The bracket closes the tail from both
sides with rigorous lattice-count bounds.  The quadrature of the theta
integral is an independent (non-rigorous) cross-check.
"""

from evenpowers import EvalOptions, PowerParams, integral_s, s_bracket, s_lattice

cases = [(1, 1, 1.0), (2, 2, 1.0), (2, 3, 1.0), (3, 5, 10.0)]
for m, k, a in cases:
    p = PowerParams(m, k, a)
    br = s_bracket(p, EvalOptions(abs_tol=1e-3, max_terms=1 << 22))
    iv = integral_s(p)
    print(f"m={m} k={k} a={a:g}:  [{br.lower:.8f}, {br.upper:.8f}]  N={br.terms:>8}  "
          f"quadrature {iv.value:.8f}")

# Box summation gives another lower estimate; it creeps up toward the bracket.
p = PowerParams(2, 2, 1.0)
for M in (4, 16, 64, 256):
    print(f"lattice box |x_i| <= {M:>3}: {s_lattice(p, M):.6f}")

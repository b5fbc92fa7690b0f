"""Counting representations as sums of signed even powers.

r_{m,k}(n) is the number of integer vectors (x_1, ..., x_k) with
x_1^{2m} + ... + x_k^{2m} = n.  Here it is computed two ways and the
growth of its running sum is compared with the lattice-ball volume.
"""

from evenpowers import PowerParams, r_bruteforce, r_convolution
from evenpowers.representation import ball_count, cumulative_growth_exponent

# Sums of two squares: 25 = 3^2 + 4^2 = 5^2 + 0^2 gives 12 signed, ordered forms.
p = PowerParams(m=1, k=2)
print("r_{1,2}(25) =", r_convolution(p, 25)[25], "(brute force:", r_bruteforce(p, 25), ")")

# Three fourth powers.  Most n are not representable at all.
p = PowerParams(m=2, k=3)
r = r_convolution(p, 100).tolist()
print("n with r_{2,3}(n) > 0 up to 100:", [n for n, c in enumerate(r) if c])

# The cumulative count is the number of lattice points in an l^4 ball.
cum = r_convolution(p, 10_000).cumulative()
print("points with x^4+y^4+z^4 <= 10^4:", int(cum[-1]), "=", ball_count(p, 10_000))

# It grows like N^{k/(2m)}.
for m, k in [(1, 1), (2, 1), (2, 3), (1, 3)]:
    e = cumulative_growth_exponent(PowerParams(m, k), 4096)
    print(f"m={m} k={k}: fitted exponent {e:.4f}, expected {k / (2 * m):.4f}")

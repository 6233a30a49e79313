"""K0, K1 and the integrated tail of K0.

Run with ``python demos/special_functions.py``.
"""

import math

from besseldist import dist, specfun

# %% K0 blows up logarithmically at the origin and decays like e^-x / sqrt(x)
print("x        K0(x)            K1(x)            -log(x/2) - gamma")
for x in (1e-6, 1e-3, 0.1, 1.0, 5.0, 25.0):
    k0, k1 = specfun.bessel_k01(x)
    print(f"{x:<8g} {k0:<16.10e} {k1:<16.10e} {-math.log(x / 2) - 0.5772156649015329:.10e}")

# %% half-integer orders are elementary: K_{r+1/2}(x) = sqrt(pi/2x) e^-x * polynomial in 1/x
x = 2.0
print("\nK_{3/2}(2) =", specfun.bessel_k_half(1, x), " closed form:", math.sqrt(math.pi / (2 * x)) * math.exp(-x) * (1 + 1 / x))

# %% the tail integral int_x^inf K0 switches method at x = 12; both sides agree
for x in (11.0, 12.0, 13.0):
    print(f"tail({x:g}): struve {specfun._k0_tail_struve(x):.15e}  trapezoid {specfun._k0_tail_trapezoid(x):.15e}")

# %% the Bessel CDF is 1 - tail(|y|/sigma)/pi in the upper half; the Struve
# form loses relative accuracy far out, the tail form does not
d = dist.BesselK(1.0)
print("\ny     1 - cdf (tail form)   1 - cdf (Struve form)")
for y in (1.0, 5.0, 10.0, 20.0, 30.0):
    print(f"{y:<5g} {d.sf(y):<21.12e} {1 - dist.bessel_cdf_struve(1.0, y):.12e}")

"""Seeded samplers, their alternative representations and KS checks.

Run with ``python demos/sampling.py``.
"""

import math

from besseldist import dist as D
from besseldist import oracle as O
from besseldist import sampling as S

n = 100_000

# %% a Bessel draw is the product of two independent normals; the same law
# arises as sigma * sqrt(G) * Z with G ~ gamma(1/2)
prod = S.sample_bessel(1.0, n, seed=1)
mix = S.sample_bessel(1.0, n, seed=2, representation="chi_mixture")
print("product vs chi_mixture:", S.ks_test_two_sample(prod, mix))
print("product vs K(1) cdf:   ", S.ks_test_one_sample(prod, D.BesselK(1.0)))

# %% the sum of two independent K(sigma) draws is CL(0, sigma); half that
# variance is firmly rejected
print("\nsum vs CL(sigma):        ", S.verify_bessel_sum_is_laplace(1.0, n, seed=3))
print("sum vs CL(sigma/sqrt 2): ", S.verify_bessel_sum_is_laplace(1.0, n, seed=3, laplace_scale=1 / math.sqrt(2)))

# %% Monte Carlo ch.f. against the closed form
big = S.sample_bessel(1.0, 1_000_000, seed=4)
for t in (0.5, 1.0, 2.0):
    est = O.chf_by_monte_carlo(big, t)
    print(f"t={t}: MC {est.estimate:.5f} +- {est.std_error:.5f}  exact {D.BesselK(1.0).chf(t):.5f}")

# %% gamma draws with shape below 1 use the boosted Marsaglia-Tsang step
g = S.Stream(5).gamma(0.3, 1_000_000)
print(f"\ngamma(0.3): mean {g.mean():.4f} var {g.var():.4f} (both should be 0.3)")

# %% batches are bit-reproducible and carry their own provenance
batch = S.sample_gal(math.sqrt(2.0), 0.5, 5, seed=6)
print()
print(batch.to_csv(), end="")

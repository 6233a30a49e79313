"""How well does a Laplace law stand in for the Bessel law?

Run with ``python demos/laplace_approximation.py``. Prints the best-fit
Laplace parameters under two metrics, the critical-value table and the
points where the Bessel density crosses the normal one.
"""

import math

from besseldist import approx as A
from besseldist import dist as D

# %% CL(0, sigma/lambda) against K(sigma); lambda does not depend on sigma
for metric in ("ks", "wasserstein"):
    for sigma in (0.1, 1.0, 10.0):
        fit = A.fit_lambda(sigma, metric)
        # the Wasserstein distance carries the units of y, so report it per unit sigma
        scaled = fit.distance_star / sigma if metric == "wasserstein" else fit.distance_star
        print(f"{metric:11s} sigma={sigma:<4g} lambda*={fit.lambda_star:.5f} distance={scaled:.5f}")

# %% one-sided critical values and percent deviation from the Bessel column
print()
print(A.quantile_table().to_text())

# %% near the centre and in the tails the Bessel density is above the normal
b, z = D.BesselK(1.0), D.ZeroMeanNormal(1.0)
xs = A.pdf_crossings(b, z, (0.0, 12.0))
print("\nBessel/normal crossings on (0, 12):", [round(x, 6) for x in xs])
for y in (4.0, 5.0, 6.0):
    print(f"P(Y > {y:g}): Bessel {b.sf(y):.3e}  normal {z.sf(y):.3e}")

# %% plot-ready curves: the log densities for y in (0, 6]
print("\ny     log pdf Bessel  log pdf CL(lambda=1.83)  log pdf normal")
lap = D.ClassicalLaplace.from_lambda(1.83, 1.0)
for y in (0.25, 1.0, 2.0, 4.0, 6.0):
    print(f"{y:<5g} {math.log(b.pdf(y)):14.5f} {math.log(lap.pdf(y)):24.5f} {math.log(z.pdf(y)):14.5f}")

"""The six distribution families side by side, all with unit variance where possible.

Run with ``python demos/distributions.py``.
"""

import math

from besseldist import dist as D

families = [
    D.BesselK(1.0),
    D.ClassicalLaplace(1 / math.sqrt(2)),
    D.MartinMaas(1 / math.sqrt(0.75)),
    D.LaplaceMean(4, math.sqrt(2.0)),
    D.SymmetricGAL(1.0, 1.0),
    D.ZeroMeanNormal(1.0),
]

# %% every member below has variance 1; the Bessel law carries the most mass in the tails
print(f"{'family':40s} {'var':>6s} {'pdf(0.5)':>10s} {'sf(3)':>10s} {'q(0.99)':>8s}")
for d in families:
    print(f"{D.format_spec(d):40s} {d.moments()[1]:6.3f} {d.pdf(0.5):10.5f} {d.sf(3.0):10.3e} {d.quantile(0.99):8.4f}")

# %% the Bessel and Martin-Maas densities are unbounded at 0; asking for pdf(0) is an error
for d in (D.BesselK(1.0), D.MartinMaas(1.0)):
    try:
        d.pdf(0.0)
    except D.SingularityError as exc:
        print("\n" + str(exc))

# %% characteristic functions: the Bessel one is 1/sqrt(1 + sigma^2 t^2), so its
# square is the Laplace(sigma) ch.f.
b, lap = D.BesselK(1.0), D.ClassicalLaplace(1.0)
for t in (0.5, 1.0, 3.0):
    print(f"t={t}: chf_B^2 = {b.chf(t) ** 2:.15f}   chf_CL(1) = {lap.chf(t):.15f}")

# %% absolute moments of the Bessel law: E|Y| = 2 sigma / pi
print("\nE|Y| =", D.bessel_absolute_moment(b, 2.0), " 2/pi =", 2 / math.pi)

# %% the mean of n Laplace draws tends to the normal; compare 99% points
for n in (1, 2, 4, 8, 16):
    m = D.LaplaceMean(n, 1.0)
    print(f"n={n:2d} q(0.99)/sd = {m.quantile(0.99) / math.sqrt(m.moments()[1]):.4f}")
print("normal:     ", D.ZeroMeanNormal(1.0).quantile(0.99))

# %% the text spec used by the command line
print("\n" + D.GRAMMAR)
print(D.parse_spec("laplace:lambda=1.83,sigma=1"))

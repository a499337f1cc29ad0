"""Quadrature building blocks: Gauss-Legendre rules, sphere grids, and
subsphere rules.

The whole package rests on two exactness facts: a Gauss rule with L nodes
integrates polynomials through degree 2L - 1, and m equally spaced points
integrate trigonometric polynomials through degree m - 1.  Products of the
two give sphere grids and section rules with predictable exactness.
"""

import math

import numpy as np

from funksphere.geometry import sphere_surface_area
from funksphere.quadrature import (
    gauss_legendre,
    max_bandlimit,
    mean_over_subsphere,
    resolves_degree,
    sphere_grid,
)

# 1. The Gauss-Legendre rule: exact through degree 2L - 1, sharp at 2L.
L = 6
x, w = gauss_legendre(L)
print(f"Gauss rule with {L} nodes:")
for k in (2 * L - 2, 2 * L):
    exact = 2.0 / (k + 1)
    got = float(np.dot(w, x ** k))
    print(f"  int t^{k:2d} dt: error {abs(got - exact):.2e}")

# 2. Sphere grids are Gauss in latitude and uniform in longitude; the
# weights sum to the exact surface area in both dimensions.
for d in (3, 4):
    g = sphere_grid(d, 12, 24)
    area = sphere_surface_area(d)
    print(f"d={d}: grid size {g.size}, weight sum error "
          f"{abs(g.weights.sum() - area) / area:.2e}")

# A concrete exact integral: x^2 y^2 z^2 over the 2-sphere is 4 pi / 105.
g = sphere_grid(3, 8, 16)
val = float(np.dot(g.weights, np.prod(g.nodes ** 2, axis=-1)))
print(f"int x^2 y^2 z^2 error:      {abs(val - 4 * math.pi / 105):.2e}")

# 3. resolves_degree answers "can this grid integrate products of two
# degree-N harmonics", which is what analysis needs.
g = sphere_grid(3, 16, 32)
print(f"(16, 32) grid resolves degree 31: {resolves_degree(g, 31)}")
print(f"(16, 32) grid resolves degree 32: {resolves_degree(g, 32)}")
print(f"max analysis bandlimit:           {max_bandlimit(g)}")

# 4. Subsphere rules average a function over one section.  The mean of an
# affine function over any subsphere is its value at the center, which
# gives a quick independent check.
rng = np.random.default_rng(1)
xi = rng.normal(size=3)
xi /= np.linalg.norm(xi)
v = rng.normal(size=3)
z = 0.4
got = mean_over_subsphere(lambda p: p @ v, xi, z, 16)
want = float(z * xi[-1] * (xi @ v))
print(f"affine mean vs center value:      {abs(got - want):.2e}")

"""Tour of the sphere maps behind the shifted section transform.

Three maps organize everything: the point transport h_z that moves the
shifted geometry to the centered one, the chord reflection r_z through the
interior point (0, ..., 0, z), and the stereographic picture in which h_z
becomes a plain dilation of the equator plane.
"""

import math

import numpy as np

from funksphere.geometry import (
    h_map,
    h_inv,
    r_map,
    reflection_weight,
    stereo,
    subsphere,
)

rng = np.random.default_rng(0)


def random_points(n, d):
    p = rng.normal(size=(n, d))
    return p / np.linalg.norm(p, axis=-1, keepdims=True)


d = 3
z = 0.6
pts = random_points(2000, d)

# 1. h_z is a diffeomorphism of the sphere; h_{-z} undoes it exactly.
back = h_inv(h_map(pts, z), z)
print(f"h_z roundtrip error (z={z}):      {np.max(np.abs(back - pts)):.2e}")

# 2. The reflection r_z sends each point along the chord through (0,0,z)
# to the opposite intersection with the sphere.  Applying it twice is the
# identity, and at z = 0 it degenerates to the antipodal map.
refl = r_map(pts, z)
print(f"r_z involution error:             {np.max(np.abs(r_map(refl, z) - pts)):.2e}")
print(f"r_0 vs antipodal:                 {np.max(np.abs(r_map(pts, 0.0) + pts)):.2e}")

# The segment from a point to its reflection always passes through the
# shift center: the two directions from the center are opposite.
center = np.array([0.0, 0.0, z])
u = pts - center
v = refl - center
u /= np.linalg.norm(u, axis=-1, keepdims=True)
v /= np.linalg.norm(v, axis=-1, keepdims=True)
print(f"chords pass through (0,0,z):      {np.max(np.abs(u + v)):.2e}")

# 3. The reflection weight W_z satisfies the reciprocity that makes the
# weighted pullback an involution (and the symmetrizer a projection).
w = reflection_weight(pts, z) * reflection_weight(refl, z)
print(f"weight reciprocity W.(W o r) = 1: {np.max(np.abs(w - 1.0)):.2e}")

# 4. Seen through stereographic projection from the north pole, h_z is
# multiplication by the conformal factor a = sqrt((1+z)/(1-z)).
a = math.sqrt((1.0 + z) / (1.0 - z))
lhs = stereo(h_map(pts, z))
rhs = a * stereo(pts)
rel = np.linalg.norm(lhs - rhs, axis=-1) / (1.0 + np.linalg.norm(rhs, axis=-1))
print(f"stereographic dilation (a={a:.3f}): {np.max(rel):.2e}")

# 5. Every section plane <eta, xi> = z xi_d cuts a subsphere whose center
# z xi_d xi sits on the little sphere of radius z/2 around (0, ..., 0, z/2).
sub = subsphere(pts, z)
cc = np.array([0.0, 0.0, z / 2.0])
radial = np.linalg.norm(sub.center - cc, axis=-1)
print(f"centers on the half-shift sphere: {np.max(np.abs(radial - z / 2.0)):.2e}")
print(f"section radius range:             [{sub.radius.min():.4f}, {sub.radius.max():.4f}]")

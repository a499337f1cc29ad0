"""Closed-form sphere geometry: shift maps, reflections, subspheres, frames.

All functions are vectorized: points live on the last axis of an array of
shape ``(..., d)`` and every map preserves the leading shape.  The ambient
dimension ``d`` is read off the last axis and must be at least 3.

The shift parameter z is capped at ``|z| <= Z_CAP`` (strictly inside the
open unit interval) so that no map in this module can hit a pole of its
defining formula.
"""

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "Z_CAP",
    "Subsphere",
    "TangentFrame",
    "check_shift",
    "unit_vector",
    "sphere_surface_area",
    "h_map",
    "h_inv",
    "g_map",
    "g_inv",
    "r_map",
    "reflection_weight",
    "stereo",
    "stereo_inv",
    "subsphere",
    "tangent_frame",
]

# Largest admissible |z|; keeps every denominator below bounded away from 0.
Z_CAP = 1.0 - 1e-6


def check_shift(z, signed=True):
    """Validate a shift parameter and return it as a float.

    Signed shifts must satisfy ``|z| <= Z_CAP``; unsigned ones additionally
    ``z >= 0``.  Raises DomainError otherwise.
    """
    z = float(z)
    if not math.isfinite(z) or abs(z) > Z_CAP:
        raise DomainError(f"shift parameter z={z!r} outside |z| <= {Z_CAP}")
    if not signed and z < 0.0:
        raise DomainError(f"shift parameter z={z!r} must be nonnegative here")
    return z


def unit_vector(x):
    """Normalize ``x`` onto the unit sphere.

    Accepts arrays of shape ``(..., d)`` with d >= 3 whose norms lie in
    [0.5, 2] (a guard against passing garbage), and divides by the norm.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim < 1 or x.shape[-1] < 3:
        raise DomainError("points must have d >= 3 coordinates on the last axis")
    norms = np.linalg.norm(x, axis=-1)
    if not np.all(np.isfinite(norms)) or np.any(norms < 0.5) or np.any(norms > 2.0):
        raise DomainError("norm outside [0.5, 2]; refusing to normalize")
    return x / norms[..., None]


def sphere_surface_area(d):
    """Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2)."""
    if d < 2:
        raise DomainError(f"dimension d={d} must be at least 2")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def _split_last(eta):
    """Return (perpendicular block, last component) of a point array."""
    eta = np.asarray(eta, dtype=float)
    return eta[..., :-1], eta[..., -1]


def h_map(eta, z):
    """Shift diffeomorphism of the sphere moving the last coordinate axis.

    Components i < d map to sqrt(1-z^2) eta_i / (1 + z eta_d) and the last
    one to (z + eta_d) / (1 + z eta_d).  Fixes the equator's orthogonal
    complement structure; inverse is the same map with -z.
    """
    z = check_shift(z)
    perp, last = _split_last(eta)
    denom = 1.0 + z * last
    out = np.empty(np.broadcast_shapes(perp.shape[:-1], last.shape) + (perp.shape[-1] + 1,))
    out[..., :-1] = math.sqrt(1.0 - z * z) * perp / denom[..., None]
    out[..., -1] = (z + last) / denom
    return out


def h_inv(omega, z):
    """Inverse of h_map; equals h_map with the shift negated."""
    return h_map(omega, -check_shift(z))


def g_map(xi, z):
    """Normal reparametrization: squeeze the last coordinate and renormalize.

    xi maps to (xi_1, ..., xi_{d-1}, sqrt(1-z^2) xi_d) / sqrt(1 - z^2 xi_d^2).
    """
    z = check_shift(z)
    perp, last = _split_last(xi)
    denom = np.sqrt(1.0 - (z * last) ** 2)
    out = np.empty(np.broadcast_shapes(perp.shape[:-1], last.shape) + (perp.shape[-1] + 1,))
    out[..., :-1] = perp / denom[..., None]
    out[..., -1] = math.sqrt(1.0 - z * z) * last / denom
    return out


def g_inv(omega, z):
    """Inverse of g_map: stretch the equatorial block and renormalize.

    omega maps to (sqrt(1-z^2) omega_1, ..., sqrt(1-z^2) omega_{d-1}, omega_d)
    divided by sqrt(1 - z^2 + z^2 omega_d^2).
    """
    z = check_shift(z)
    perp, last = _split_last(omega)
    denom = np.sqrt(1.0 - z * z + (z * last) ** 2)
    out = np.empty(np.broadcast_shapes(perp.shape[:-1], last.shape) + (perp.shape[-1] + 1,))
    out[..., :-1] = math.sqrt(1.0 - z * z) * perp / denom[..., None]
    out[..., -1] = last / denom
    return out


def r_map(omega, z):
    """Point reflection of the sphere through the interior point z e^d.

    Components i < d map to (z^2 - 1) omega_i / (1 + z^2 - 2 z omega_d), the
    last to (2z - z^2 omega_d - omega_d) / (1 + z^2 - 2 z omega_d).  It is an
    involution, reduces to the antipodal map at z = 0, and omega, z e^d and
    r(omega) are always collinear.
    """
    z = check_shift(z)
    perp, last = _split_last(omega)
    denom = 1.0 + z * z - 2.0 * z * last
    out = np.empty(np.broadcast_shapes(perp.shape[:-1], last.shape) + (perp.shape[-1] + 1,))
    out[..., :-1] = (z * z - 1.0) * perp / denom[..., None]
    out[..., -1] = (2.0 * z - z * z * last - last) / denom
    return out


def reflection_weight(omega, z):
    """Cocycle weight W_z(omega) = ((1-z^2) / (1 - 2 z omega_d + z^2))^(d-2).

    Satisfies the reciprocity W_z(omega) * W_z(r_map(omega, z)) = 1, which
    makes weighted symmetrization idempotent.
    """
    z = check_shift(z)
    omega = np.asarray(omega, dtype=float)
    d = omega.shape[-1]
    last = omega[..., -1]
    return ((1.0 - z * z) / (1.0 + z * z - 2.0 * z * last)) ** (d - 2)


def stereo(xi):
    """Stereographic projection from the north pole e^d to the equator plane.

    xi maps to x with x_i = xi_i / (1 - xi_d).  Raises DomainError at the
    pole itself.
    """
    perp, last = _split_last(xi)
    denom = 1.0 - last
    if np.any(denom <= 0.0):
        raise DomainError("stereographic projection undefined at the north pole")
    return perp / denom[..., None]


def stereo_inv(x):
    """Inverse stereographic projection of a plane point x (d-1 coordinates).

    Returns (2x + (|x|^2 - 1) e^d) / (1 + |x|^2), a unit vector for every x.
    """
    x = np.asarray(x, dtype=float)
    sq = np.sum(x * x, axis=-1)
    denom = 1.0 + sq
    out = np.empty(x.shape[:-1] + (x.shape[-1] + 1,))
    out[..., :-1] = 2.0 * x / denom[..., None]
    out[..., -1] = (sq - 1.0) / denom
    return out


class Subsphere:
    """The (d-2)-sphere cut from S^{d-1} by the plane <eta, axis> = z axis_d.

    Attributes: ``axis`` (unit normal), ``z`` (shift), ``center``
    (= z axis_d axis), ``radius`` (= sqrt(1 - z^2 axis_d^2)) and ``volume``
    (= |S^{d-2}| radius^{d-2}).  Fields may be batched over leading axes.
    """

    __slots__ = ("axis", "z", "center", "radius", "volume")

    def __init__(self, axis, z, center, radius, volume):
        self.axis = axis
        self.z = z
        self.center = center
        self.radius = radius
        self.volume = volume

    def __repr__(self):
        return (f"Subsphere(axis={self.axis!r}, z={self.z!r}, "
                f"radius={self.radius!r})")


def subsphere(xi, z):
    """Build the section subsphere with unit normal ``xi`` at shift ``z``.

    Its center z xi_d xi always lies on the sphere of radius z/2 centered at
    (z/2) e^d, and its volume is |S^{d-2}| (1 - z^2 xi_d^2)^{(d-2)/2}.
    """
    z = check_shift(z)
    xi = np.asarray(xi, dtype=float)
    d = xi.shape[-1]
    last = xi[..., -1]
    center = z * last[..., None] * xi
    radius = np.sqrt(1.0 - (z * last) ** 2)
    volume = sphere_surface_area(d - 1) * radius ** (d - 2)
    return Subsphere(axis=xi, z=z, center=center, radius=radius, volume=volume)


class TangentFrame:
    """Orthonormal tangent basis at one or more sphere points.

    ``axis`` has shape ``(..., d)`` and ``basis`` shape ``(..., d-1, d)``;
    ``basis[..., i, :]`` is the i-th tangent vector.  The frame is oriented:
    det(axis, basis_1, ..., basis_{d-1}) = +1.
    """

    __slots__ = ("axis", "basis")

    def __init__(self, axis, basis):
        self.axis = axis
        self.basis = basis

    def __repr__(self):
        return f"TangentFrame(axis={self.axis!r})"


def tangent_frame(xi):
    """Deterministic oriented orthonormal basis of the tangent space at xi.

    Gram-Schmidt is seeded with the d-1 coordinate axes least aligned with
    xi (stable order on |xi_i|), and the last vector's sign is fixed so the
    full frame (xi, e^1, ..., e^{d-1}) has determinant +1.  Vectorized over
    leading axes.
    """
    xi = np.asarray(xi, dtype=float)
    d = xi.shape[-1]
    if d < 3:
        raise DomainError("tangent_frame requires d >= 3")
    lead = xi.shape[:-1]
    order = np.argsort(np.abs(xi), axis=-1, kind="stable")
    basis = np.empty(lead + (d - 1, d))
    for i in range(d - 1):
        v = np.zeros(lead + (d,))
        np.put_along_axis(v, order[..., i : i + 1], 1.0, axis=-1)
        v = v - np.sum(v * xi, axis=-1)[..., None] * xi
        for j in range(i):
            prev = basis[..., j, :]
            v = v - np.sum(v * prev, axis=-1)[..., None] * prev
        norms = np.linalg.norm(v, axis=-1)
        if np.any(norms < 1e-8):
            raise DomainError("degenerate frame seed; is xi a unit vector?")
        basis[..., i, :] = v / norms[..., None]
    full = np.concatenate([xi[..., None, :], basis], axis=-2)
    flip = np.linalg.det(full) < 0.0
    basis[..., -1, :] = np.where(flip[..., None], -basis[..., -1, :], basis[..., -1, :])
    return TangentFrame(axis=xi, basis=basis)

"""Quadrature on S^{d-1} and on its section subspheres, d in {3, 4}.

Grid node order is normative for file exchange: latitude-major,
longitude-minor.  For d = 3 the node with flat index ``l*M + m`` sits at the
l-th Gauss-Legendre latitude (ascending in t = cos theta) and longitude
``2 pi m / M``.  For d = 4 the flat index is ``l*(L*M) + j`` with l the
polar Gauss-Legendre latitude (ascending polar angle) and j indexing a
d = 3 grid of the same (L, M) on the inner 2-sphere; the payload length is
``L*L*M``.
"""

import math

import numpy as np

from .errors import DomainError, ResolutionError
from .geometry import check_shift, sphere_surface_area, subsphere, tangent_frame

__all__ = [
    "SphereGrid",
    "GridFunction",
    "SubsphereRule",
    "gauss_legendre",
    "sphere_grid",
    "integrate_sphere",
    "antipodal_indices",
    "resolves_degree",
    "max_bandlimit",
    "subsphere_rule",
    "mean_over_subsphere",
]


def gauss_legendre(n):
    """Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.

    Nodes are roots of the degree-n Legendre polynomial, found from the
    Chebyshev-like initial guess and polished until the Newton update drops
    below 1e-15; weights are 2 / ((1 - x^2) P_n'(x)^2).  The returned nodes
    are sorted ascending and symmetrized so that x[k] == -x[n-1-k] exactly.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"need at least one node, got n={n}")
    k = np.arange(n)
    x = np.cos(np.pi * (k + 0.75) / (n + 0.5))
    for _ in range(100):
        p_prev = np.ones_like(x)
        p = x.copy()
        for j in range(2, n + 1):
            p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
        if n == 1:
            dp = np.ones_like(x)
        else:
            dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
    dp = np.ones_like(x) if n == 1 else n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


class SphereGrid:
    """Product quadrature grid on S^{d-1} with nodes (K, d) and weights (K,).

    Weights sum to the surface area of S^{d-1}.  See the module docstring
    for the normative node order.
    """

    __slots__ = ("d", "L", "M", "nodes", "weights")

    def __init__(self, d, L, M, nodes, weights):
        self.d = d
        self.L = L
        self.M = M
        self.nodes = nodes
        self.weights = weights

    @property
    def size(self):
        return self.nodes.shape[0]

    def same_layout(self, other):
        return (self.d, self.L, self.M) == (other.d, other.L, other.M)

    def __repr__(self):
        return f"SphereGrid(d={self.d}, L={self.L}, M={self.M})"


def sphere_grid(d, L, M):
    """Build the product grid on S^{d-1}.

    d = 3: L Gauss-Legendre nodes in t = cos theta times M uniform
    longitudes; exact for spherical polynomials of degree up to
    min(2L - 1, M - 1).

    d = 4: L Gauss-Legendre nodes in the polar angle (the sin^2 Jacobian is
    folded into the weights) times a d = 3 grid of the same (L, M) on the
    inner 2-sphere.  The polar rule is not polynomial-exact, so the weights
    carry one global scale factor that pins their sum to the exact surface
    area; the relative adjustment is below 5e-7 even at L = 2 and reaches
    roundoff by L = 12.
    """
    d, L, M = int(d), int(L), int(M)
    if d not in (3, 4):
        raise DomainError(f"dimension d={d} not supported (need 3 or 4)")
    if L < 2 or M < 2:
        raise DomainError(f"grid resolution L={L}, M={M} must be at least 2")
    if d == 3:
        t, wt = gauss_legendre(L)
        if M % 2 == 0:
            # mirror the second half-turn so antipodal nodes negate bitwise
            half = 2.0 * np.pi * np.arange(M // 2) / M
            cph = np.concatenate([np.cos(half), -np.cos(half)])
            sph = np.concatenate([np.sin(half), -np.sin(half)])
        else:
            ang = 2.0 * np.pi * np.arange(M) / M
            cph, sph = np.cos(ang), np.sin(ang)
        s = np.sqrt(1.0 - t * t)
        nodes = np.empty((L, M, 3))
        nodes[:, :, 0] = s[:, None] * cph[None, :]
        nodes[:, :, 1] = s[:, None] * sph[None, :]
        nodes[:, :, 2] = t[:, None]
        weights = np.repeat(wt * (2.0 * np.pi / M), M)
        return SphereGrid(3, L, M, nodes.reshape(-1, 3), weights)
    xg, wg = gauss_legendre(L)
    # polar latitudes mirrored about the equator, again bitwise
    theta_low = 0.5 * np.pi * (xg[: L // 2] + 1.0)
    u_low, s_low = np.cos(theta_low), np.sin(theta_low)
    if L % 2:
        cos_t = np.concatenate([u_low, [0.0], -u_low[::-1]])
        sin_t = np.concatenate([s_low, [1.0], s_low[::-1]])
    else:
        cos_t = np.concatenate([u_low, -u_low[::-1]])
        sin_t = np.concatenate([s_low, s_low[::-1]])
    inner = sphere_grid(3, L, M)
    nodes = np.empty((L, inner.size, 4))
    nodes[:, :, :3] = sin_t[:, None, None] * inner.nodes[None, :, :]
    nodes[:, :, 3] = cos_t[:, None]
    wlat = 0.5 * np.pi * wg * sin_t * sin_t
    weights = (wlat[:, None] * inner.weights[None, :]).reshape(-1)
    weights *= sphere_surface_area(4) / weights.sum()
    return SphereGrid(4, L, M, nodes.reshape(-1, 4), weights)


class GridFunction:
    """Real values sampled at the nodes of a SphereGrid."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.size,):
            raise DomainError(
                f"value array has shape {values.shape}, grid has {grid.size} nodes")
        self.grid = grid
        self.values = values

    def copy(self):
        return GridFunction(self.grid, self.values.copy())

    def __repr__(self):
        return f"GridFunction({self.grid!r})"


def integrate_sphere(f):
    """Integrate a GridFunction over the sphere: sum of weights times values."""
    return float(np.dot(f.grid.weights, f.values))


def antipodal_indices(grid):
    """Index array a with nodes[a[i]] == -nodes[i] exactly, by construction.

    Requires M even (longitudes must pair up across half a turn).
    """
    if grid.M % 2 != 0:
        raise DomainError("antipodal pairing needs an even longitude count M")
    L, M = grid.L, grid.M
    l3 = np.arange(L)[:, None]
    m3 = np.arange(M)[None, :]
    a3 = ((L - 1 - l3) * M + (m3 + M // 2) % M).reshape(-1)
    if grid.d == 3:
        return a3
    inner = L * M
    lat = np.arange(L)[:, None]
    return ((L - 1 - lat) * inner + a3[None, :]).reshape(-1)


def resolves_degree(grid, n):
    """Whether grid quadrature integrates degree-n spherical polynomial
    products to near machine precision.

    d = 3 uses the exactness bound min(2L - 1, M - 1) >= n.  d = 4 requires
    the inner 2-sphere bound as well as enough polar nodes for the
    (analytic, not polynomial) theta integral; the polar criterion is the
    superexponential Gauss error estimate dropping below 1e-13.
    """
    n = int(n)
    L, M = grid.L, grid.M
    if min(2 * L - 1, M - 1) < n:
        return False
    if grid.d == 3:
        return True
    freq = (n + 2) * np.pi / 4.0
    if freq <= 1.0:
        return True
    log_err = 2 * L * math.log(freq) - math.lgamma(2 * L + 1)
    return log_err < math.log(1e-13)


def max_bandlimit(grid):
    """Largest bandlimit N such that the grid resolves degree 2N."""
    n = min(2 * grid.L - 1, grid.M - 1) // 2
    while n > 0 and not resolves_degree(grid, 2 * n):
        n -= 1
    return n


def _rule_directions(d, m):
    """Relative node directions and mean weights for a unit (d-2)-sphere.

    Returns (dirs, relw): dirs has shape (mt, d-1) giving coefficients in an
    orthonormal tangent frame, relw sums to 1.
    """
    if d == 3:
        if not isinstance(m, (int, np.integer)):
            raise DomainError("d = 3 subsphere rule takes an integer node count")
        m = int(m)
        if m < 4:
            raise DomainError(f"circle rule needs m >= 4 nodes, got {m}")
        ang = 2.0 * np.pi * np.arange(m) / m
        dirs = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        relw = np.full(m, 1.0 / m)
        return dirs, relw
    if isinstance(m, (int, np.integer)):
        m = (int(m) // 2, int(m))
    try:
        L2, M2 = (int(m[0]), int(m[1]))
    except (TypeError, IndexError):
        raise DomainError("d = 4 subsphere rule takes a (latitudes, longitudes) pair") from None
    if L2 < 2 or M2 < 4:
        raise DomainError(f"subsphere resolution ({L2}, {M2}) too small")
    t2, w2 = gauss_legendre(L2)
    ang = 2.0 * np.pi * np.arange(M2) / M2
    s2 = np.sqrt(1.0 - t2 * t2)
    dirs = np.empty((L2, M2, 3))
    dirs[:, :, 0] = s2[:, None] * np.cos(ang)[None, :]
    dirs[:, :, 1] = s2[:, None] * np.sin(ang)[None, :]
    dirs[:, :, 2] = t2[:, None]
    relw = np.repeat(w2 / (2.0 * M2), M2)
    return dirs.reshape(-1, 3), relw


def _subsphere_nodes(normals, z, m):
    """Quadrature nodes for the subspheres normal to each row of ``normals``.

    Returns (nodes, relw, volume): nodes has shape (K, mt, d), relw (mt,)
    sums to 1 for every subsphere (weights relative to subsphere volume),
    volume has shape (K,).
    """
    normals = np.asarray(normals, dtype=float)
    squeeze = normals.ndim == 1
    if squeeze:
        normals = normals[None, :]
    d = normals.shape[-1]
    dirs, relw = _rule_directions(d, m)
    frame = tangent_frame(normals)
    sub = subsphere(normals, z)
    # nodes = center + radius * sum_i dirs_i * basis_i
    offs = np.einsum("ti,kid->ktd", dirs, frame.basis)
    nodes = sub.center[:, None, :] + sub.radius[:, None, None] * offs
    if squeeze:
        return nodes[0], relw, sub.volume[0]
    return nodes, relw, sub.volume


def subsphere_rule(xi, z, m):
    """Quadrature rule on the section subsphere with unit normal xi.

    d = 3: m equispaced nodes on the circle, each of weight volume/m.
    d = 4: Gauss-Legendre x uniform product rule on the sub-2-sphere; m may
    be a (latitudes, longitudes) pair, or an integer interpreted as
    (m//2, m).  Weights sum to the subsphere volume exactly.
    """
    z = check_shift(z, signed=False)
    nodes, relw, volume = _subsphere_nodes(xi, z, m)
    if nodes.ndim != 2:
        raise DomainError("subsphere_rule takes a single point; batch via mean_over_subsphere")
    return SubsphereRule(subsphere=subsphere(np.asarray(xi, float), z),
                         nodes=nodes, weights=relw * volume)


class SubsphereRule:
    """Nodes and weights on one section subsphere; weights sum to its volume."""

    __slots__ = ("subsphere", "nodes", "weights")

    def __init__(self, subsphere, nodes, weights):
        self.subsphere = subsphere
        self.nodes = nodes
        self.weights = weights

    def __repr__(self):
        return f"SubsphereRule({self.subsphere!r}, m={len(self.weights)})"


def mean_over_subsphere(f, xi, z, m):
    """Mean of ``f`` over the subsphere normal to xi at shift z.

    ``f`` must accept an ``(..., d)`` array of points and return matching
    leading shape.  ``xi`` may be a single point (returns a float) or a
    batch ``(K, d)`` (returns shape (K,)).  For d = 3 the equispaced circle
    rule converges superexponentially in m for functions analytic on the
    sphere; for bandlimited f of degree n it is exact once m >= 2n + 2.
    """
    z = check_shift(z, signed=False)
    nodes, relw, _ = _subsphere_nodes(xi, z, m)
    vals = np.asarray(f(nodes), dtype=float)
    out = vals @ relw
    return float(out) if np.ndim(out) == 0 else out

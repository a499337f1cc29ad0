"""Spherical harmonic analysis on S^2 and S^3.

Degree-n harmonics are represented blockwise.  For d = 3 the block of
degree n holds 2n + 1 real fully-normalized harmonics ordered by azimuthal
index m = -n..n.  For d = 4 the block holds (n + 1)^2 product harmonics
R_{n,l}(eta_4) Y_{l,m}(eta_{1:3} / |eta_{1:3}|), ordered by l = 0..n and
then m = -l..l; the radial factor is a normalized Gegenbauer polynomial.
All bases are orthonormal with respect to the unweighted surface measure.
"""

import math

import numpy as np

from .errors import ConditioningError, DomainError, ResolutionError
from .geometry import sphere_surface_area
from .quadrature import GridFunction, mean_over_subsphere, resolves_degree, sphere_grid

__all__ = [
    "HarmonicCoeffs",
    "legendre",
    "dim_harmonic",
    "project_degree",
    "analyze",
    "synthesize",
    "synthesize_at",
    "sobolev_norm",
    "funk_eigenvalue",
    "funk_eigenvalue_quadrature",
]

SQRT2 = math.sqrt(2.0)


def _legendre_all(nmax, d, t):
    """Values of the degree-normalized Legendre polynomials 0..nmax at t.

    Three-term recurrence: P_0 = 1, P_1 = t,
    (n + d - 2) P_{n+1} = (2n + d - 2) t P_n - n P_{n-1}.
    Returns an array of shape (nmax + 1,) + t.shape.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((nmax + 1,) + t.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = t
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + d - 2) * t * out[n] - n * out[n - 1]) / (n + d - 2)
    return out


def legendre(n, d, t):
    """Legendre polynomial of degree n for S^{d-1}, normalized to 1 at t = 1.

    For d = 3 this is the classical Legendre polynomial.  Input must lie in
    [-1, 1] (a hair of roundoff slack is clipped).
    """
    if n < 0 or d < 3:
        raise DomainError(f"degree n={n} and dimension d={d} must satisfy n >= 0, d >= 3")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise DomainError("legendre argument outside [-1, 1]")
    t = np.clip(t, -1.0, 1.0)
    vals = _legendre_all(n, d, t)[n]
    return float(vals) if np.ndim(vals) == 0 else vals


def dim_harmonic(n, d):
    """Dimension of the space of degree-n spherical harmonics on S^{d-1}.

    Exact integer (2n + d - 2) (n + d - 3)! / (n! (d - 2)!).
    """
    if n < 0 or d < 3:
        raise DomainError(f"invalid n={n}, d={d}")
    if n == 0:
        return 1
    return (2 * n + d - 2) * math.factorial(n + d - 3) // (
        math.factorial(n) * math.factorial(d - 2))


def _block_sizes(d, nmax):
    return [dim_harmonic(n, d) for n in range(nmax + 1)]


class HarmonicCoeffs:
    """Real harmonic coefficients up to a bandlimit, stored by degree block."""

    __slots__ = ("d", "bandlimit", "blocks")

    def __init__(self, d, blocks):
        self.d = d
        self.bandlimit = len(blocks) - 1
        checked = []
        for n, b in enumerate(blocks):
            b = np.asarray(b, dtype=float)
            if b.shape != (dim_harmonic(n, d),):
                raise DomainError(
                    f"degree-{n} block has length {b.shape}, expected {dim_harmonic(n, d)}")
            checked.append(b)
        self.blocks = checked

    @classmethod
    def zeros(cls, d, bandlimit):
        return cls(d, [np.zeros(s) for s in _block_sizes(d, bandlimit)])

    @classmethod
    def from_flat(cls, d, bandlimit, flat):
        flat = np.asarray(flat, dtype=float)
        sizes = _block_sizes(d, bandlimit)
        if flat.shape != (sum(sizes),):
            raise DomainError(f"flat vector length {flat.shape} != {sum(sizes)}")
        blocks, pos = [], 0
        for s in sizes:
            blocks.append(flat[pos : pos + s].copy())
            pos += s
        return cls(d, blocks)

    def flat(self):
        return np.concatenate(self.blocks)

    def copy(self):
        return HarmonicCoeffs(self.d, [b.copy() for b in self.blocks])

    def energy(self):
        """Squared coefficient mass per degree, shape (bandlimit + 1,)."""
        return np.array([float(b @ b) for b in self.blocks])

    def l2_norm(self):
        return math.sqrt(float(self.energy().sum()))

    def __repr__(self):
        return f"HarmonicCoeffs(d={self.d}, bandlimit={self.bandlimit})"


def _tri(n, m):
    return n * (n + 1) // 2 + m


def _norm_assoc_table(nmax, t):
    """Fully normalized associated Legendre values q_n^m(t) for S^2.

    Normalized so the real harmonics q_n^0 and sqrt(2) q_n^m {cos,sin}(m phi)
    are orthonormal on S^2.  Includes the alternating phase in the seed.
    Returns shape (T,) + t.shape with T = (nmax+1)(nmax+2)/2, triangular
    index n(n+1)/2 + m.
    """
    t = np.asarray(t, dtype=float)
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    q = np.zeros(((nmax + 1) * (nmax + 2) // 2,) + t.shape)
    q[0] = 1.0 / math.sqrt(4.0 * math.pi)
    for m in range(1, nmax + 1):
        q[_tri(m, m)] = -math.sqrt((2 * m + 1) / (2.0 * m)) * s * q[_tri(m - 1, m - 1)]
    for m in range(nmax):
        q[_tri(m + 1, m)] = math.sqrt(2.0 * m + 3.0) * t * q[_tri(m, m)]
        for n in range(m + 2, nmax + 1):
            a = math.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
            b = math.sqrt(((n - 1.0) ** 2 - m * m) / (4.0 * (n - 1.0) ** 2 - 1.0))
            q[_tri(n, m)] = a * (t * q[_tri(n - 1, m)] - b * q[_tri(n - 2, m)])
    return q


def _basis_3(nmax, points):
    """Real orthonormal harmonics on S^2 up to degree nmax at given points.

    Returns shape points.shape[:-1] + ((nmax+1)^2,), column n^2 + n + m for
    degree n and order m.
    """
    points = np.asarray(points, dtype=float)
    t = points[..., 2]
    phi = np.arctan2(points[..., 1], points[..., 0])
    q = _norm_assoc_table(nmax, t)
    B = np.empty(t.shape + ((nmax + 1) ** 2,))
    if nmax >= 1:
        marg = np.arange(1, nmax + 1).reshape((-1,) + (1,) * t.ndim) * phi[None]
        cosm, sinm = np.cos(marg), np.sin(marg)
    for n in range(nmax + 1):
        base = n * n + n
        B[..., base] = q[_tri(n, 0)]
        for m in range(1, n + 1):
            qs = SQRT2 * q[_tri(n, m)]
            np.multiply(qs, cosm[m - 1], out=B[..., base + m])
            np.multiply(qs, sinm[m - 1], out=B[..., base - m])
    return B


def _gegenbauer_all(kmax, lam, x):
    """Gegenbauer polynomials C_k^(lam) for k = 0..kmax, shape (kmax+1,)+x.shape."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2.0 * lam * x
    for k in range(1, kmax):
        out[k + 1] = (2.0 * (k + lam) * x * out[k] - (k + 2 * lam - 1) * out[k - 1]) / (k + 1)
    return out


def _gegenbauer_h(k, lam):
    """Orthogonality constant of C_k^(lam) under (1 - x^2)^(lam - 1/2)."""
    return math.exp(
        math.log(math.pi) + (1.0 - 2.0 * lam) * math.log(2.0)
        + math.lgamma(k + 2.0 * lam) - math.lgamma(k + 1.0)
        - math.log(k + lam) - 2.0 * math.lgamma(lam))


def _split_4(points):
    """Decompose S^3 points into (u, rho, omega): last coordinate, the norm
    of the first three, and their direction (a fixed fallback on the axis
    where the norm vanishes)."""
    points = np.asarray(points, dtype=float)
    u = np.clip(points[..., 3], -1.0, 1.0)
    perp = points[..., :3]
    rho = np.linalg.norm(perp, axis=-1)
    safe = np.where(rho > 1e-300, rho, 1.0)
    omega = np.empty_like(perp)
    omega[..., 0] = np.where(rho > 1e-300, perp[..., 0] / safe, 1.0)
    omega[..., 1] = perp[..., 1] / safe
    omega[..., 2] = perp[..., 2] / safe
    return u, rho, omega


def _radial_tables_4(nmax, u, rho):
    """Per-l tables of the normalized radial factors of S^3 harmonics.

    Entry l has shape u.shape + (nmax - l + 1,); column k holds the factor
    for total degree n = l + k, namely h^(-1/2) rho^l C_k^(l+1)(u).
    """
    tables = []
    rpow = np.ones_like(rho)
    for l in range(nmax + 1):
        geg = _gegenbauer_all(nmax - l, l + 1.0, u)
        scale = np.array([math.sqrt(1.0 / _gegenbauer_h(k, l + 1.0))
                          for k in range(nmax - l + 1)])
        tables.append(np.moveaxis(geg, 0, -1) * rpow[..., None] * scale)
        rpow = rpow * rho
    return tables


def _degree_offsets_4(nmax):
    return [n * (n + 1) * (2 * n + 1) // 6 for n in range(nmax + 2)]


def _basis_4(nmax, points):
    """Real orthonormal harmonics on S^3 up to degree nmax at given points.

    Column layout: degree blocks of size (n+1)^2 at offset n(n+1)(2n+1)/6,
    inside which (l, m) sits at l^2 + l + m.
    """
    u, rho, omega = _split_4(points)
    Y3 = _basis_3(nmax, omega)
    total = (nmax + 1) * (nmax + 2) * (2 * nmax + 3) // 6
    B = np.empty(u.shape + (total,))
    R = _radial_tables_4(nmax, u, rho)
    offsets = _degree_offsets_4(nmax)
    for l in range(nmax + 1):
        for n in range(l, nmax + 1):
            lo = offsets[n] + l * l
            np.multiply(R[l][..., n - l, None], Y3[..., l * l : (l + 1) ** 2],
                        out=B[..., lo : lo + 2 * l + 1])
    return B


def _synth_4(nmax, flat, pts):
    """Evaluate an S^3 coefficient vector at 2-D point array pts.

    Avoids materializing the full basis: for each l the radial table
    couples to the coefficient rows through one small matmul, and the
    result contracts against the inner-sphere harmonics.
    """
    u, rho, omega = _split_4(pts)
    Y3 = _basis_3(nmax, omega)
    R = _radial_tables_4(nmax, u, rho)
    offsets = _degree_offsets_4(nmax)
    out = np.zeros(pts.shape[0])
    for l in range(nmax + 1):
        C = np.empty((nmax - l + 1, 2 * l + 1))
        for k in range(nmax - l + 1):
            lo = offsets[l + k] + l * l
            C[k] = flat[lo : lo + 2 * l + 1]
        out += np.einsum("pm,pm->p", R[l] @ C, Y3[..., l * l : (l + 1) ** 2])
    return out


def _accumulate_4(nmax, wv, pts, flat):
    """Add the weighted-sample projections of 2-D point array pts into the
    flat S^3 coefficient vector (the analysis inner loop)."""
    u, rho, omega = _split_4(pts)
    Yw = _basis_3(nmax, omega) * wv[:, None]
    R = _radial_tables_4(nmax, u, rho)
    offsets = _degree_offsets_4(nmax)
    for l in range(nmax + 1):
        G = R[l].T @ Yw[..., l * l : (l + 1) ** 2]
        for k in range(nmax - l + 1):
            lo = offsets[l + k] + l * l
            flat[lo : lo + 2 * l + 1] += G[k]


def _basis_total(d, nmax):
    if d == 3:
        return (nmax + 1) ** 2
    return (nmax + 1) * (nmax + 2) * (2 * nmax + 3) // 6


def _basis(d, nmax, points):
    if d == 3:
        return _basis_3(nmax, points)
    if d == 4:
        return _basis_4(nmax, points)
    raise DomainError(f"no harmonic basis for d={d}")


def _point_chunks(npoints, total_cols):
    chunk = max(64, (1 << 24) // max(total_cols, 1))
    for start in range(0, npoints, chunk):
        yield start, min(start + chunk, npoints)


def analyze(f, bandlimit):
    """Harmonic coefficients of a GridFunction up to the given bandlimit.

    Plain quadrature projection: c = sum_j w_j f_j Y(eta_j).  Exact for
    functions bandlimited at N when the grid resolves degree 2N; raises
    ResolutionError otherwise.
    """
    bandlimit = int(bandlimit)
    if bandlimit < 0:
        raise DomainError("bandlimit must be nonnegative")
    grid = f.grid
    if not resolves_degree(grid, 2 * bandlimit):
        raise ResolutionError(
            f"grid {grid!r} cannot resolve products of degree {2 * bandlimit}")
    wv = grid.weights * f.values
    total = _basis_total(grid.d, bandlimit)
    flat = np.zeros(total)
    for a, b in _point_chunks(grid.size, total):
        if grid.d == 4:
            _accumulate_4(bandlimit, wv[a:b], grid.nodes[a:b], flat)
        else:
            flat += _basis(grid.d, bandlimit, grid.nodes[a:b]).T @ wv[a:b]
    return HarmonicCoeffs.from_flat(grid.d, bandlimit, flat)


def synthesize_at(coeffs, points):
    """Evaluate a coefficient set at arbitrary unit points, shape preserved."""
    points = np.asarray(points, dtype=float)
    lead = points.shape[:-1]
    pts = points.reshape(-1, points.shape[-1])
    flat = coeffs.flat()
    out = np.empty(pts.shape[0])
    for a, b in _point_chunks(pts.shape[0], flat.size):
        if coeffs.d == 4:
            out[a:b] = _synth_4(coeffs.bandlimit, flat, pts[a:b])
        else:
            out[a:b] = _basis(coeffs.d, coeffs.bandlimit, pts[a:b]) @ flat
    return out.reshape(lead)


def synthesize(coeffs, grid):
    """Sample a coefficient set on a SphereGrid as a GridFunction."""
    if grid.d != coeffs.d:
        raise DomainError(f"coefficients live on S^{coeffs.d - 1}, grid on S^{grid.d - 1}")
    return GridFunction(grid, synthesize_at(coeffs, grid.nodes))


def to_callable(coeffs):
    """A vectorized point function evaluating the coefficient set."""
    return lambda pts: synthesize_at(coeffs, pts)


def project_degree(f, n):
    """Orthogonal projection of a GridFunction onto degree-n harmonics.

    Kernel form (dim/area) sum_j w_j f_j P_{n,d}(<xi, eta_j>) evaluated at
    every grid node; exact when the grid resolves degree n plus the content
    of f.  The stated precondition (grid resolves n) is checked.
    """
    grid = f.grid
    if not resolves_degree(grid, n):
        raise ResolutionError(f"grid {grid!r} cannot resolve degree {n}")
    scale = dim_harmonic(n, grid.d) / sphere_surface_area(grid.d)
    wv = grid.weights * f.values
    out = np.empty(grid.size)
    # chunk the K x K Legendre kernel over rows
    chunk = max(16, (1 << 23) // max(grid.size, 1))
    for a in range(0, grid.size, chunk):
        b = min(a + chunk, grid.size)
        dots = grid.nodes[a:b] @ grid.nodes.T
        np.clip(dots, -1.0, 1.0, out=dots)
        out[a:b] = _legendre_all(n, grid.d, dots)[n] @ wv
    return GridFunction(grid, scale * out)


def sobolev_norm(coeffs, s):
    """Sobolev norm of order s >= 0 from the degree energies.

    The degree-n block is weighted by (n + (d-2)/2)^(2s).
    """
    s = float(s)
    if s < 0.0:
        raise DomainError(f"Sobolev order s={s} must be nonnegative")
    n = np.arange(coeffs.bandlimit + 1, dtype=float)
    wts = (n + (coeffs.d - 2) / 2.0) ** (2.0 * s)
    return math.sqrt(float(wts @ coeffs.energy()))


def funk_eigenvalue(n, d):
    """Multiplier of degree-n harmonics under the great-subsphere mean.

    Equals the Legendre polynomial value P_{n,d}(0): zero for odd n,
    alternating and slowly decaying for even n.
    """
    return float(legendre(n, d, 0.0))


def funk_eigenvalue_quadrature(n, d, axis=None, m=None, grid=None):
    """Same multiplier measured numerically, as a cross-check.

    Applies the great-subsphere mean to the zonal harmonic P_{n,d}(<., axis>)
    and returns the Rayleigh quotient against itself under grid quadrature.
    Defaults pick the smallest exact grid and rule for degree n.
    """
    n, d = int(n), int(d)
    if axis is None:
        axis = np.zeros(d)
        axis[-1] = 1.0
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    if grid is None:
        M = max(4, 2 * n + 2)
        if d == 3:
            grid = sphere_grid(3, max(2, n + 1), M)
        else:
            L = max(2, n + 1)
            while not resolves_degree(sphere_grid(4, L, M), 2 * n):
                L += 1
            grid = sphere_grid(4, L, M)
    if m is None:
        m = max(4, 2 * n + 4) if d == 3 else (max(2, n + 2), max(4, 2 * n + 4))

    def zonal(p):
        return legendre(n, d, p @ axis)

    fy = mean_over_subsphere(zonal, grid.nodes, 0.0, m)
    yg = zonal(grid.nodes)
    w = grid.weights
    return float((w * fy) @ yg / ((w * yg) @ yg))

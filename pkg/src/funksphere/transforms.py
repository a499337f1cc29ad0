"""Section transforms on the sphere and their factorization and inversion.

The shifted transform averages a function over every subsphere cut by the
family of planes <eta, xi> = z xi_d.  It factors as a weighted composition
N_z o F o M_z, where F is the great-subsphere mean, M_z is a weighted
composition with the shift diffeomorphism and N_z a weighted composition
with the normal reparametrization.  F is diagonal on harmonics, which gives
a spectral inverse on the even part; the full inverse undoes the two
weighted compositions around it.

Operators accept either a vectorized callable on points or a GridFunction;
GridFunction inputs are read through their bandlimited interpolant.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, NotInRangeError
from .geometry import check_shift, g_inv, g_map, h_map, r_map, reflection_weight
from .harmonics import HarmonicCoeffs, analyze, funk_eigenvalue, sobolev_norm, synthesize_at
from .quadrature import (GridFunction, antipodal_indices, max_bandlimit,
                         resolves_degree, sphere_grid, _subsphere_nodes)

__all__ = [
    "OperatorConfig",
    "GridFunction",
    "apply_M",
    "apply_N",
    "apply_N_inv",
    "spherical_transform_direct",
    "spherical_transform_factored",
    "funk_spectral",
    "symmetrize_z",
    "inverse_spherical_transform",
    "sobolev_gain",
]


@dataclass
class OperatorConfig:
    """Resolution and tolerance bundle for the transform operators.

    z is the shift (0 <= z < 1), (L, M) the sphere grid resolution, m the
    subsphere rule resolution (integer; for d = 4 an integer is read as the
    pair (m//2, m), or pass the pair explicitly), N the working bandlimit
    and tol the verification tolerance.  Invariants: m >= 2N + 2 (for a
    pair, both the Gauss and uniform factors must resolve degree 2N) and
    min(2L - 1, M - 1) >= 2N, so the grid and rules resolve everything the
    bandlimit admits.
    """

    z: float
    L: int
    M: int
    m: "int | tuple"
    N: int
    tol: float = 1e-8
    d: int = 3

    def __post_init__(self):
        self.z = check_shift(self.z, signed=False)
        if self.d not in (3, 4):
            raise DomainError(f"dimension d={self.d} not supported")
        if self.L < 2 or self.M < 2:
            raise DomainError(f"grid resolution ({self.L}, {self.M}) too small")
        if self.N < 0:
            raise DomainError(f"bandlimit N={self.N} must be nonnegative")
        if self.tol <= 0.0:
            raise DomainError(f"tolerance {self.tol} must be positive")
        if isinstance(self.m, tuple):
            if self.d != 4 or len(self.m) != 2:
                raise DomainError(
                    f"pair-valued subsphere resolution {self.m} needs d = 4")
            L2, M2 = self.m
            if 2 * L2 - 1 < 2 * self.N or M2 < max(4, 2 * self.N + 2):
                raise DomainError(
                    f"subsphere resolution {self.m} cannot resolve "
                    f"bandlimit {self.N}")
        elif self.m < max(4, 2 * self.N + 2):
            raise DomainError(
                f"subsphere resolution m={self.m} below 2N + 2 = {2 * self.N + 2}")
        if min(2 * self.L - 1, self.M - 1) < 2 * self.N:
            raise DomainError(
                f"grid ({self.L}, {self.M}) cannot support bandlimit {self.N}")

    @cached_property
    def grid(self):
        return sphere_grid(self.d, self.L, self.M)


def _interpolant(f, bandlimit):
    """Bandlimited callable reading through a GridFunction; callables pass."""
    if callable(f):
        return f
    if isinstance(f, GridFunction):
        coeffs = analyze(f, bandlimit)
        return lambda pts: synthesize_at(coeffs, pts)
    raise DomainError(f"expected a callable or GridFunction, got {type(f).__name__}")


def _shift_weight(pts, z, d):
    """Jacobian-root weight of the shift composition at each point."""
    return (math.sqrt(1.0 - z * z) / (1.0 + z * pts[..., -1])) ** (d - 2)


def apply_M(f, z, sign=1):
    """Weighted composition with the shift map: the equivalence M_z.

    (M_z f)(xi) = (sqrt(1-z^2) / (1 + z xi_d))^{d-2} f(h_z(xi)).  With
    sign = -1 the shift is negated, which gives the exact inverse of M_z.
    Callable in, callable out; GridFunction in, GridFunction out (read at
    the grid's own maximal bandlimit).
    """
    z = check_shift(z) if sign >= 0 else -check_shift(z)

    def build(fc, d):
        return lambda pts: _shift_weight(np.asarray(pts, float), z, d) * fc(h_map(pts, z))

    if isinstance(f, GridFunction):
        fc = _interpolant(f, max_bandlimit(f.grid))
        return GridFunction(f.grid, build(fc, f.grid.d)(f.grid.nodes))
    if not callable(f):
        raise DomainError(f"expected a callable or GridFunction, got {type(f).__name__}")

    def out(pts):
        pts = np.asarray(pts, dtype=float)
        return build(f, pts.shape[-1])(pts)

    return out


def apply_N(f, z):
    """Weighted composition with the normal reparametrization: N_z.

    (N_z f)(xi) = (1 - z^2 xi_d^2)^{-(d-2)/2} f(g_z(xi)).
    """
    z = check_shift(z, signed=False)

    def _call(fc):
        def out(pts):
            pts = np.asarray(pts, dtype=float)
            d = pts.shape[-1]
            w = (1.0 - (z * pts[..., -1]) ** 2) ** (-(d - 2) / 2.0)
            return w * fc(g_map(pts, z))
        return out

    if isinstance(f, GridFunction):
        fc = _interpolant(f, max_bandlimit(f.grid))
        return GridFunction(f.grid, _call(fc)(f.grid.nodes))
    if not callable(f):
        raise DomainError(f"expected a callable or GridFunction, got {type(f).__name__}")
    return _call(f)


def apply_N_inv(f, z):
    """Exact inverse of apply_N.

    (N_z^{-1} f)(eta) = ((1-z^2) / (1 - z^2 + z^2 eta_d^2))^{(d-2)/2}
    f(g_z^{-1}(eta)).  Note the denominator: the weight is the reciprocal
    of the N_z weight evaluated along g_z^{-1}, and the composed identity
    N_z^{-1} N_z = id holds to machine precision (see the tests).
    """
    z = check_shift(z, signed=False)

    def _call(fc):
        def out(pts):
            pts = np.asarray(pts, dtype=float)
            d = pts.shape[-1]
            w = ((1.0 - z * z) / (1.0 - z * z + (z * pts[..., -1]) ** 2)) ** ((d - 2) / 2.0)
            return w * fc(g_inv(pts, z))
        return out

    if isinstance(f, GridFunction):
        fc = _interpolant(f, max_bandlimit(f.grid))
        return GridFunction(f.grid, _call(fc)(f.grid.nodes))
    if not callable(f):
        raise DomainError(f"expected a callable or GridFunction, got {type(f).__name__}")
    return _call(f)


def _subsphere_means(fc, normals, z, m, block=4096):
    """Mean of fc over the subsphere normal to each row, chunked over rows."""
    K = normals.shape[0]
    out = np.empty(K)
    for a in range(0, K, block):
        b = min(a + block, K)
        nodes, relw, _ = _subsphere_nodes(normals[a:b], z, m)
        vals = np.asarray(fc(nodes.reshape(-1, nodes.shape[-1])), dtype=float)
        out[a:b] = vals.reshape(b - a, -1) @ relw
    return out


def spherical_transform_direct(f, cfg):
    """Shifted section transform by direct subsphere quadrature.

    Averages f over the section subsphere normal to each grid node and
    returns the result as a GridFunction on the config grid.
    """
    grid = cfg.grid
    fc = _interpolant(f, cfg.N)
    return GridFunction(grid, _subsphere_means(fc, grid.nodes, cfg.z, cfg.m))


def spherical_transform_factored(f, cfg, funk_method="quadrature"):
    """Shifted section transform through the factorization N_z o F o M_z.

    The great-subsphere mean F is evaluated either by quadrature (great
    circles through the composed function, the default) or spectrally
    (analyze at the grid's maximal bandlimit, multiply by the eigenvalues,
    evaluate).  The spectral route truncates the composed function M_z f,
    whose spectral content exceeds that of f by roughly the conformal
    stretch sqrt((1+z)/(1-z)); use it only when the grid covers that.
    """
    if funk_method not in ("quadrature", "spectral"):
        raise DomainError(f"unknown funk_method {funk_method!r}")
    grid = cfg.grid
    z = cfg.z
    d = grid.d
    fc = _interpolant(f, cfg.N)
    mfc = apply_M(fc, z)
    normals = g_map(grid.nodes, z)
    if funk_method == "quadrature":
        fvals = _subsphere_means(mfc, normals, 0.0, cfg.m)
    else:
        nspec = max_bandlimit(grid)
        coeffs = analyze(GridFunction(grid, mfc(grid.nodes)), nspec)
        fvals = synthesize_at(funk_spectral(coeffs), normals)
    w = (1.0 - (z * grid.nodes[:, -1]) ** 2) ** (-(d - 2) / 2.0)
    return GridFunction(grid, w * fvals)


def funk_spectral(coeffs, inverse=False, odd_tol=1e-6):
    """Great-subsphere mean (or its inverse) as a spectral multiplier.

    Forward: scale the degree-n block by the eigenvalue P_{n,d}(0).
    Inverse: require the odd-degree energy fraction to stay below odd_tol
    (the operator's range is the even functions), zero the odd blocks and
    divide the even ones.
    """
    d = coeffs.d
    lams = [funk_eigenvalue(n, d) for n in range(coeffs.bandlimit + 1)]
    if not inverse:
        return HarmonicCoeffs(d, [lam * b for lam, b in zip(lams, coeffs.blocks)])
    energy = coeffs.energy()
    total = float(energy.sum())
    odd = float(energy[1::2].sum())
    frac = odd / total if total > 0.0 else 0.0
    if frac > odd_tol:
        raise NotInRangeError(
            f"input has odd-degree energy fraction {frac:.3e} > {odd_tol:.1e}; "
            "it is not in the range of the even-part transform",
            odd_fraction=frac)
    blocks = []
    for n, b in enumerate(coeffs.blocks):
        if n % 2:
            blocks.append(np.zeros_like(b))
        else:
            blocks.append(b / lams[n])
    return HarmonicCoeffs(d, blocks)


def symmetrize_z(f, z):
    """Projection onto the weighted symmetry satisfied by preimages.

    (S f)(omega) = (f(omega) + W_z(omega) f(r_z(omega))) / 2 with the
    reflection weight W_z.  S is idempotent (the weight reciprocity
    W_z(omega) W_z(r_z(omega)) = 1 makes the weighted pullback an
    involution), f - S f spans the transform's nullspace, and the transform
    agrees on f and S f.
    """
    z = check_shift(z, signed=False)

    def _call(fc):
        def out(pts):
            pts = np.asarray(pts, dtype=float)
            return 0.5 * (fc(pts) + reflection_weight(pts, z) * fc(r_map(pts, z)))
        return out

    if isinstance(f, GridFunction):
        fc = _interpolant(f, max_bandlimit(f.grid))
        return GridFunction(f.grid, _call(fc)(f.grid.nodes))
    if not callable(f):
        raise DomainError(f"expected a callable or GridFunction, got {type(f).__name__}")
    return _call(f)


def inverse_spherical_transform(g, cfg):
    """Invert the shifted transform on its range.

    Pipeline: check evenness at antipodal node pairs, undo N_z, invert the
    great-subsphere mean spectrally at the working bandlimit, undo M_z.
    Raises NotInRangeError when g is visibly not in the range (odd part
    beyond tolerance).  Accuracy is set by cfg: the working bandlimit N
    must cover the spectral content of the unweighted data, which grows
    with z (see the README for sizing guidance).
    """
    grid = cfg.grid
    z = cfg.z
    if callable(g):
        g = GridFunction(grid, np.asarray(g(grid.nodes), dtype=float))
    if not isinstance(g, GridFunction):
        raise DomainError(f"expected a callable or GridFunction, got {type(g).__name__}")
    if not g.grid.same_layout(grid):
        raise DomainError("input grid layout does not match the config grid")
    pair = antipodal_indices(grid)
    scale = float(np.max(np.abs(g.values))) if g.values.size else 0.0
    odd_dev = 0.5 * float(np.max(np.abs(g.values - g.values[pair])))
    if odd_dev > cfg.tol * (1.0 + scale):
        raise NotInRangeError(
            f"input deviates from evenness by {odd_dev:.3e} "
            f"(tolerance {cfg.tol:.1e}); not in the transform's range",
            odd_fraction=None)
    ghat = analyze(g, cfg.N)
    gcall = lambda pts: synthesize_at(ghat, pts)
    ucall = apply_N_inv(gcall, z)
    cu = analyze(GridFunction(grid, ucall(grid.nodes)), cfg.N)
    cv = funk_spectral(cu, inverse=True)
    vcall = lambda pts: synthesize_at(cv, pts)
    out = apply_M(vcall, z, sign=-1)
    return GridFunction(grid, out(grid.nodes))


def sobolev_gain(f, cfg, s):
    """Measured smoothing ratio of the transform in the Sobolev scale.

    Returns the order s + (d-2)/2 norm of the transform of f divided by the
    order s norm of f, both read at the config bandlimit.  A single
    degree-n harmonic gives exactly |P_{n,d}(0)| (n + (d-2)/2)^{(d-2)/2}.
    """
    grid = cfg.grid
    fc = _interpolant(f, cfg.N)
    cf = analyze(GridFunction(grid, np.asarray(fc(grid.nodes), dtype=float)), cfg.N)
    denom = sobolev_norm(cf, s)
    if denom == 0.0:
        raise DomainError("cannot measure the gain of the zero function")
    gout = spherical_transform_direct(fc, cfg)
    cg = analyze(gout, cfg.N)
    return sobolev_norm(cg, s + (grid.d - 2) / 2.0) / denom

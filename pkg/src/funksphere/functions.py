"""Built-in test functions on the sphere, by name or constructor.

The named set mirrors what the command line accepts: ``const``, ``coord_d``,
``coord_d_sq``, ``gauss_bump(c1,...,cd,width)``, ``harmonic(n,k)`` and
``symmetric_z(z,seed,N)``.  Every entry returns a vectorized callable on
``(..., d)`` point arrays.
"""

import numpy as np

from .errors import DomainError
from .harmonics import HarmonicCoeffs, dim_harmonic, synthesize_at
from .transforms import symmetrize_z

__all__ = [
    "random_bandlimited",
    "harmonic_function",
    "gauss_bump",
    "make_function",
    "BUILTIN_NAMES",
]

BUILTIN_NAMES = ("const", "coord_d", "coord_d_sq", "gauss_bump", "harmonic", "symmetric_z")


def random_bandlimited(d, bandlimit, seed):
    """Random coefficients up to the bandlimit, normalized to unit L2 norm.

    Returns (coeffs, callable).  Deterministic in the seed.
    """
    rng = np.random.default_rng(seed)
    blocks = [rng.normal(size=dim_harmonic(n, d)) for n in range(bandlimit + 1)]
    coeffs = HarmonicCoeffs(d, blocks)
    scale = coeffs.l2_norm()
    coeffs = HarmonicCoeffs(d, [b / scale for b in blocks])
    return coeffs, (lambda pts: synthesize_at(coeffs, pts))


def harmonic_function(d, n, k):
    """One orthonormal basis harmonic of degree n.

    For d = 3, k is the order m in [-n, n].  For d = 4, k is the 0-based
    index l^2 + l + m inside the degree block, 0 <= k < (n+1)^2.
    """
    n, k = int(n), int(k)
    if n < 0:
        raise DomainError(f"degree n={n} must be nonnegative")
    coeffs = HarmonicCoeffs.zeros(d, n)
    idx = k + n if d == 3 else k
    if not 0 <= idx < dim_harmonic(n, d):
        raise DomainError(f"harmonic index {k} out of range for degree {n}, d={d}")
    coeffs.blocks[n][idx] = 1.0
    return lambda pts: synthesize_at(coeffs, pts)


def gauss_bump(center, width):
    """Chordal Gaussian bump exp(-|p - c|^2 / (2 width^2)) centered at c."""
    width = float(width)
    if width <= 0.0:
        raise DomainError(f"bump width {width} must be positive")
    c = np.asarray(center, dtype=float)
    norm = np.linalg.norm(c)
    if norm < 1e-12:
        raise DomainError("bump center direction must be nonzero")
    c = c / norm

    def f(pts):
        pts = np.asarray(pts, dtype=float)
        return np.exp(-np.sum((pts - c) ** 2, axis=-1) / (2.0 * width * width))

    return f


def _parse_spec(spec):
    """Split 'name(a,b,key=c)' into (name, positional floats, keyword floats)."""
    spec = spec.strip()
    if "(" not in spec:
        return spec, [], {}
    if not spec.endswith(")"):
        raise DomainError(f"unbalanced parentheses in function spec {spec!r}")
    name, inner = spec[:-1].split("(", 1)
    args, kwargs = [], {}
    for tok in inner.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            if "=" in tok:
                key, val = tok.split("=", 1)
                kwargs[key.strip()] = float(val)
            else:
                args.append(float(tok))
        except ValueError:
            raise DomainError(f"cannot parse argument {tok!r} in {spec!r}") from None
    return name.strip(), args, kwargs


def make_function(spec, d):
    """Resolve a function spec string to (callable, shift-or-None).

    The shift is non-None only for symmetric_z, whose output satisfies the
    weighted reflection symmetry at that shift.
    """
    name, args, kwargs = _parse_spec(spec)
    if name == "const":
        return (lambda pts: np.ones(np.asarray(pts).shape[:-1])), None
    if name == "coord_d":
        return (lambda pts: np.asarray(pts, dtype=float)[..., -1]), None
    if name == "coord_d_sq":
        return (lambda pts: np.asarray(pts, dtype=float)[..., -1] ** 2), None
    if name == "gauss_bump":
        vals = args + [kwargs.pop(k) for k in ("width",) if k in kwargs]
        if kwargs or len(vals) != d + 1:
            raise DomainError(
                f"gauss_bump takes {d} center coordinates plus a width for d={d}")
        return gauss_bump(vals[:d], vals[d]), None
    if name == "harmonic":
        def build(n, k):
            return harmonic_function(d, n, k)
        try:
            return build(*[int(a) for a in args],
                         **{key: int(v) for key, v in kwargs.items()}), None
        except TypeError:
            raise DomainError("harmonic takes two arguments: harmonic(n,k)") from None
    if name == "symmetric_z":
        def build(z, seed=0, N=8):
            _, f = random_bandlimited(d, int(N), int(seed))
            return symmetrize_z(f, float(z)), float(z)
        try:
            return build(*args, **kwargs)
        except TypeError:
            raise DomainError("symmetric_z takes symmetric_z(z, seed, N)") from None
    raise DomainError(f"unknown function {name!r}; known: {', '.join(BUILTIN_NAMES)}")

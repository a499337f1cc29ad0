"""Spherical section transforms on the unit sphere in 3 and 4 dimensions.

The central object is the operator that averages a function over the family
of subspheres cut by hyperplanes through z * xi_d * xi, for a shift
parameter 0 <= z < 1 and each unit direction xi.  At z = 0 this is the
classical great-circle average.  The package provides:

- exact sphere maps underlying the operator (shift, normalization, and
  reflection maps, with their conformal weights),
- Gauss-uniform sphere grids and subsphere quadrature rules,
- real spherical harmonic analysis and synthesis,
- the transform itself in a direct quadrature form and a factored form,
  its symmetrizer and nullspace structure, and a spectral inverse on
  bandlimited symmetric functions,
- a registry of runtime identity checks and a command line front end.

Importing this package is deliberately lightweight: submodules (and numpy)
load on first attribute access, which lets the command line tool pin thread
environment variables before any numerics library initializes.
"""

import importlib

__version__ = "0.1.0"

_EXPORTS = {
    "FunksphereError": ".errors",
    "DomainError": ".errors",
    "ResolutionError": ".errors",
    "NotInRangeError": ".errors",
    "ConditioningError": ".errors",
    "GridFileError": ".errors",
    "h_map": ".geometry",
    "h_inv": ".geometry",
    "g_map": ".geometry",
    "g_inv": ".geometry",
    "r_map": ".geometry",
    "reflection_weight": ".geometry",
    "stereo": ".geometry",
    "stereo_inv": ".geometry",
    "subsphere": ".geometry",
    "Subsphere": ".geometry",
    "tangent_frame": ".geometry",
    "TangentFrame": ".geometry",
    "sphere_surface_area": ".geometry",
    "gauss_legendre": ".quadrature",
    "sphere_grid": ".quadrature",
    "SphereGrid": ".quadrature",
    "GridFunction": ".quadrature",
    "integrate_sphere": ".quadrature",
    "antipodal_indices": ".quadrature",
    "resolves_degree": ".quadrature",
    "max_bandlimit": ".quadrature",
    "subsphere_rule": ".quadrature",
    "mean_over_subsphere": ".quadrature",
    "legendre": ".harmonics",
    "dim_harmonic": ".harmonics",
    "HarmonicCoeffs": ".harmonics",
    "analyze": ".harmonics",
    "synthesize": ".harmonics",
    "synthesize_at": ".harmonics",
    "to_callable": ".harmonics",
    "project_degree": ".harmonics",
    "sobolev_norm": ".harmonics",
    "funk_eigenvalue": ".harmonics",
    "funk_eigenvalue_quadrature": ".harmonics",
    "OperatorConfig": ".transforms",
    "apply_M": ".transforms",
    "apply_N": ".transforms",
    "apply_N_inv": ".transforms",
    "spherical_transform_direct": ".transforms",
    "spherical_transform_factored": ".transforms",
    "funk_spectral": ".transforms",
    "symmetrize_z": ".transforms",
    "inverse_spherical_transform": ".transforms",
    "sobolev_gain": ".transforms",
    "random_bandlimited": ".functions",
    "harmonic_function": ".functions",
    "gauss_bump": ".functions",
    "make_function": ".functions",
    "BUILTIN_NAMES": ".functions",
    "read_grid_function": ".gridfile",
    "write_grid_function": ".gridfile",
    "run_checks": ".verify",
    "CheckResult": ".verify",
}

__all__ = sorted(_EXPORTS) + ["__version__"]


def __getattr__(name):
    try:
        module = _EXPORTS[name]
    except KeyError:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
    return getattr(importlib.import_module(module, __name__), name)


def __dir__():
    return __all__

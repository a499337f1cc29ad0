"""Self-describing text format for sphere grid functions.

Line 1 is a JSON header: {"format_version": "1", "d": 3, "grid": {"type":
"gauss-uniform", "L": 64, "M": 64}, "z": 0.5 or null, "description": "..."}.
Each following line holds one payload value in node-major order, the order
produced by sphere_grid(d, L, M) (latitude-major, longitude-minor); the
payload length is L*M for d = 3 and L*L*M for d = 4.  Values are written
with shortest round-tripping decimal repr, so write -> read is bit-exact.
"""

import json

import numpy as np

from .errors import GridFileError
from .quadrature import GridFunction, sphere_grid

__all__ = ["write_grid_function", "read_grid_function", "FORMAT_VERSION"]

FORMAT_VERSION = "1"


def write_grid_function(path, f, z=None, description=""):
    """Write a GridFunction to ``path`` in the package text format."""
    grid = f.grid
    header = {
        "format_version": FORMAT_VERSION,
        "d": grid.d,
        "grid": {"type": "gauss-uniform", "L": grid.L, "M": grid.M},
        "z": None if z is None else float(z),
        "description": str(description),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for v in f.values:
            fh.write(repr(float(v)) + "\n")


def read_grid_function(path):
    """Read a GridFunction and its header dict from ``path``.

    Raises GridFileError on malformed headers, payload length mismatch or
    non-finite values.
    """
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise GridFileError(f"{path}: empty file")
        try:
            header = json.loads(first)
        except json.JSONDecodeError as exc:
            raise GridFileError(f"{path}: bad JSON header: {exc}") from None
        if not isinstance(header, dict):
            raise GridFileError(f"{path}: header is not a JSON object")
        if header.get("format_version") != FORMAT_VERSION:
            raise GridFileError(
                f"{path}: unsupported format_version {header.get('format_version')!r}")
        gspec = header.get("grid")
        d = header.get("d")
        if d not in (3, 4):
            raise GridFileError(f"{path}: header d={d!r} must be 3 or 4")
        if (not isinstance(gspec, dict) or gspec.get("type") != "gauss-uniform"
                or not isinstance(gspec.get("L"), int)
                or not isinstance(gspec.get("M"), int)):
            raise GridFileError(f"{path}: malformed grid description {gspec!r}")
        z = header.get("z")
        if z is not None and not isinstance(z, (int, float)):
            raise GridFileError(f"{path}: shift entry z={z!r} is not a number")
        try:
            values = np.array([float(line) for line in fh if line.strip()])
        except ValueError as exc:
            raise GridFileError(f"{path}: bad payload value: {exc}") from None
    grid = sphere_grid(d, gspec["L"], gspec["M"])
    if values.shape != (grid.size,):
        raise GridFileError(
            f"{path}: payload has {values.shape[0]} values, grid needs {grid.size}")
    if not np.all(np.isfinite(values)):
        raise GridFileError(f"{path}: payload contains non-finite values")
    return GridFunction(grid, values), header

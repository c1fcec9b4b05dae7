"""Bipartite nearest-neighbor lattices and reciprocal-space sampling.

Conventions used throughout:

* the lattice constant is fixed to a = 1, so wave vectors are dimensionless
  and only the phases k.delta enter anywhere;
* every lattice here is bipartite: each neighbor vector delta connects a site
  to the opposite sublattice, and -delta points back;
* the structure factor is the normalized neighbor phase sum
  (1/z) sum_delta exp(i k.delta), which is bounded by 1 in modulus and real
  for inversion-symmetric neighbor sets (chain, square, simple cubic).

Brillouin-zone grids are Gamma-centered: fractional coordinates j/n along
each reciprocal vector, wrapped into [-1/2, 1/2), in row-major index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError

PI = math.pi


@dataclass(frozen=True, eq=False)
class Lattice:
    """A bipartite lattice defined by its nearest-neighbor vectors.

    ``neighbor_vectors`` is a (z, 3) float array, ``symmetry_points`` maps
    labels like "G", "X" to Cartesian k-vectors, and ``reciprocal_vectors``
    (dim, 3) spans the zone used for grid sampling.
    """

    name: str
    neighbor_vectors: np.ndarray
    symmetry_points: dict
    reciprocal_vectors: np.ndarray

    @property
    def z(self) -> int:
        return len(self.neighbor_vectors)

    @property
    def dim(self) -> int:
        return len(self.reciprocal_vectors)


@dataclass(frozen=True, eq=False)
class KPoint:
    coords: np.ndarray
    label: Optional[str] = None


@dataclass(frozen=True, eq=False)
class KPath:
    """Piecewise-linear path through the zone.

    ``segments`` holds (start_label, end_label, samples) triples; ``points``
    is the flattened point list (shared endpoints included once) and ``s``
    the cumulative Euclidean path length per point.
    """

    segments: tuple
    points: tuple
    s: np.ndarray


def _v(x, y=0.0, z=0.0):
    return np.array([float(x), float(y), float(z)])


def _make_lattice(name, deltas, sym, recip):
    deltas = np.array([np.asarray(d, dtype=float) for d in deltas])
    for d in deltas:
        if d.shape != (3,) or not np.all(np.isfinite(d)):
            raise ValidationError(f"bad neighbor vector {d!r} for lattice {name!r}")
    sym = {k: np.asarray(v, dtype=float) for k, v in sym.items()}
    recip = np.array([np.asarray(b, dtype=float) for b in recip])
    return Lattice(name, deltas, sym, recip)


_SQ3 = math.sqrt(3.0)

# Honeycomb: unit-length neighbor vectors at 120 degrees. Lattice vectors are
# a1 = d1 - d2, a2 = d1 - d3; K and M below are the standard zone corner and
# edge midpoint for that orientation (gamma vanishes at K).
LATTICES = {
    "chain": _make_lattice(
        "chain",
        [_v(1), _v(-1)],
        {"G": _v(0), "X": _v(PI)},
        [_v(2 * PI)],
    ),
    "square": _make_lattice(
        "square",
        [_v(1), _v(-1), _v(0, 1), _v(0, -1)],
        {"G": _v(0), "X": _v(PI), "M": _v(PI, PI)},
        [_v(2 * PI), _v(0, 2 * PI)],
    ),
    "simple_cubic": _make_lattice(
        "simple_cubic",
        [_v(1), _v(-1), _v(0, 1), _v(0, -1), _v(0, 0, 1), _v(0, 0, -1)],
        {"G": _v(0), "X": _v(PI), "M": _v(PI, PI), "R": _v(PI, PI, PI)},
        [_v(2 * PI), _v(0, 2 * PI), _v(0, 0, 2 * PI)],
    ),
    "honeycomb": _make_lattice(
        "honeycomb",
        [_v(1), _v(-0.5, _SQ3 / 2), _v(-0.5, -_SQ3 / 2)],
        {"G": _v(0), "K": _v(2 * PI / 3, 2 * PI / (3 * _SQ3)), "M": _v(2 * PI / 3)},
        [_v(2 * PI / 3, -2 * PI / _SQ3), _v(2 * PI / 3, 2 * PI / _SQ3)],
    ),
}


def get_lattice(name: str) -> Lattice:
    try:
        return LATTICES[name]
    except KeyError:
        raise ValidationError(
            f"unknown lattice {name!r}; built in: {', '.join(sorted(LATTICES))}"
        ) from None


def lattice_from_config(spec) -> Lattice:
    """Resolve a lattice from a preset name or an explicit description.

    A dict spec needs ``neighbor_vectors`` and ``symmetry_points``;
    ``reciprocal_vectors`` is optional and defaults to 2*pi along each axis
    the neighbor vectors touch.
    """
    if isinstance(spec, str):
        return get_lattice(spec)
    if not isinstance(spec, dict):
        raise ValidationError("lattice must be a preset name or an object")
    try:
        deltas = spec["neighbor_vectors"]
        sym = spec["symmetry_points"]
    except KeyError as missing:
        raise ValidationError(f"custom lattice requires key {missing}") from None
    if len(deltas) == 0:
        raise ValidationError("custom lattice needs at least one neighbor vector")
    name = spec.get("name", "custom")
    recip = spec.get("reciprocal_vectors")
    if recip is None:
        axes = [ax for ax in range(3) if any(abs(float(d[ax])) > 0 for d in deltas)]
        recip = [[2 * PI if a == ax else 0.0 for a in range(3)] for ax in (axes or [0])]
    return _make_lattice(name, deltas, sym, recip)


def _coords(k) -> np.ndarray:
    if isinstance(k, KPoint):
        return k.coords
    arr = np.asarray(k, dtype=float)
    if arr.shape == (1,):
        arr = np.array([arr[0], 0.0, 0.0])
    elif arr.shape == (2,):
        arr = np.array([arr[0], arr[1], 0.0])
    if arr.shape != (3,):
        raise ValidationError(f"k must have 1..3 components, got shape {arr.shape}")
    return arr


def structure_factor(lattice: Lattice, k) -> complex:
    """Normalized neighbor phase sum (1/z) sum_delta exp(i k.delta).

    Real (imaginary part exactly zero) whenever the neighbor set is closed
    under delta -> -delta, because the sine contributions cancel pairwise.
    """
    kc = _coords(k)
    phases = np.exp(1j * (lattice.neighbor_vectors @ kc))
    return complex(phases.sum() / lattice.z)


def build_kpath(lattice: Lattice, labels: Sequence[str], samples: int) -> KPath:
    """Sample a piecewise-linear path between symmetry points.

    Parameters
    ----------
    labels : sequence of symmetry-point labels, at least two
    samples : points added per segment (the segment end included), so the
        total count is 1 + samples * (len(labels) - 1)

    Returns
    -------
    KPath with points in order and cumulative path length ``s``.
    """
    if len(labels) < 2:
        raise ValidationError("a path needs at least two labels")
    if samples < 1:
        raise ValidationError("samples per segment must be >= 1")
    for lab in labels:
        if lab not in lattice.symmetry_points:
            raise ValidationError(
                f"unknown symmetry point {lab!r} for lattice {lattice.name!r}"
            )
    points = [KPoint(lattice.symmetry_points[labels[0]].copy(), labels[0])]
    s = [0.0]
    segments = []
    for start, end in zip(labels[:-1], labels[1:]):
        a = lattice.symmetry_points[start]
        b = lattice.symmetry_points[end]
        seg_len = float(np.linalg.norm(b - a))
        base = s[-1]
        segments.append((start, end, samples))
        for i in range(1, samples + 1):
            f = i / samples
            coords = (1.0 - f) * a + f * b
            label = end if i == samples else None
            points.append(KPoint(coords, label))
            s.append(base + f * seg_len)
    return KPath(tuple(segments), tuple(points), np.array(s))


def build_bz_grid(lattice: Lattice, n: int) -> list:
    """Uniform Gamma-centered grid: n points per reciprocal axis, row-major.

    Fractions j/n are wrapped into [-1/2, 1/2), so the zone origin is always
    on the grid and even n includes the -pi zone face.
    """
    if n < 1:
        raise ValidationError("grid needs n >= 1 points per axis")
    fracs = np.arange(n) / n
    fracs = np.where(fracs >= 0.5, fracs - 1.0, fracs)
    points = []
    for idx in np.ndindex(*([n] * lattice.dim)):
        coords = np.zeros(3)
        for axis, j in enumerate(idx):
            coords = coords + fracs[j] * lattice.reciprocal_vectors[axis]
        points.append(KPoint(coords))
    return points

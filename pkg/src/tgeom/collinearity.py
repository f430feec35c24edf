"""Parallelism built from sigma alone.

Two multivectors A, B of equal order are collinear when
``(A.B)**2 == (A.A) * (B.B)``. The test quantity is the normalised defect

    |(A.B)**2 - (A.A)(B.B)| / max(eps, (A.B)**2 + |(A.A)(B.B)|)

which lies in ``[0, 1]`` and does not change when A or B is rescaled. When A
and B share an origin the numerator is ``|F_2|``, so null vectors (e.g.
``R == Q0``) are handled without dividing by a vanishing length.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import pi, sqrt

import numpy as np

from .errors import ContractError, UnsupportedOperation
from .sigma_core import TOL_REL, Multivector, gram_matrix, has_repeated_point, is_negligible, mv_scalar_product
from .spaces import SigmaSpace

__all__ = [
    "Orientation",
    "CollinearityVerdict",
    "ConeSample",
    "collinearity_defect",
    "is_collinear",
    "tube_through_point_member",
    "cone_sample",
    "fibonacci_directions",
]

EPS = 1e-30
GOLDEN_ANGLE = pi * (3.0 - sqrt(5.0))


class Orientation(str, Enum):
    PARALLEL = "parallel"
    ANTIPARALLEL = "antiparallel"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CollinearityVerdict:
    collinear: bool
    orientation: Orientation
    defect: float


def collinearity_defect(ab, aa, bb):
    ab, aa, bb = np.asarray(ab, float), np.asarray(aa, float), np.asarray(bb, float)
    num = np.abs(ab * ab - aa * bb)
    return num / np.maximum(EPS, ab * ab + np.abs(aa * bb))


def _orientation(ab, aa, bb, collinear, a_null, b_null):
    if not collinear or a_null or b_null or aa * bb <= 0:
        return Orientation.INDETERMINATE
    # |A||B| is +ma*mb for real lengths and i*i*ma*mb = -ma*mb for imaginary ones
    return Orientation.PARALLEL if np.sign(ab) == np.sign(aa) else Orientation.ANTIPARALLEL


def _is_null(space, mv, tol_rel):
    if has_repeated_point(space, mv):
        return True
    if mv.order == 1:
        return space.sigma(mv[0], mv[1]) == 0.0
    g = gram_matrix(space, mv[0], mv[1:])
    return bool(is_negligible(np.linalg.det(g), g, tol_rel))


def is_collinear(space: SigmaSpace, a, b, tol: float = TOL_REL) -> CollinearityVerdict:
    """Collinearity and relative orientation of two equal-order multivectors."""
    a, b = Multivector(a), Multivector(b)
    if a.order != b.order:
        raise ContractError(f"multivector orders differ: {a.order} vs {b.order}")
    aa = mv_scalar_product(space, a, a)
    bb = mv_scalar_product(space, b, b)
    ab = mv_scalar_product(space, a, b)
    defect = float(collinearity_defect(ab, aa, bb))
    collinear = defect <= tol
    orient = _orientation(ab, aa, bb, collinear, _is_null(space, a, TOL_REL), _is_null(space, b, TOL_REL))
    return CollinearityVerdict(collinear, orient, defect)


def _check_skeleton(space, p0, p1):
    if space.sigma(p0, p1) == 0.0:
        raise ContractError("degenerate skeleton: sigma(P0, P1) = 0")


def tube_through_point_member(space: SigmaSpace, p0, p1, q0, r, tol: float = TOL_REL) -> bool:
    """Is Q0R collinear to P0P1? ``R == Q0`` is always a member."""
    _check_skeleton(space, p0, p1)
    return is_collinear(space, (p0, p1), (q0, r), tol).collinear


def _frame(axis):
    axis = np.asarray(axis, float)
    n = axis.size
    q, _ = np.linalg.qr(np.column_stack([axis, np.eye(n)]))
    q = q[:, :n].copy()
    q[:, 0] = axis  # exact, so the poles of the sample set are exactly +-axis
    return q


def fibonacci_directions(count: int, dim: int, axis=None):
    """Deterministic near-uniform unit directions containing ``+-axis`` exactly.

    ``dim == 3`` uses a Fibonacci spiral from pole to pole; ``dim == 2`` uses
    equally spaced angles (``count`` should be even to hit ``-axis``).
    """
    if count < 2:
        raise ContractError("need at least two sample directions")
    if axis is None:
        axis = np.eye(dim)[0]
    axis = np.asarray(axis, float)
    axis = axis / np.linalg.norm(axis)
    i = np.arange(count)
    if dim == 2:
        theta = 2.0 * pi * i / count
        local = np.column_stack([np.cos(theta), np.sin(theta)])
    elif dim == 3:
        z = 1.0 - 2.0 * i / (count - 1)
        rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        phi = GOLDEN_ANGLE * i
        local = np.column_stack([z, rho * np.cos(phi), rho * np.sin(phi)])
    else:
        raise UnsupportedOperation("cone sampling supports ambient dimension 2 or 3")
    return local @ _frame(axis).T


@dataclass
class ConeSample:
    """Accepted directions at Q0 and the points ``Q0 + radius * d``."""

    directions: np.ndarray
    points: np.ndarray
    defects: np.ndarray
    orientations: list
    aperture: float
    sampled: int

    @property
    def accepted_count(self) -> int:
        return len(self.directions)

    def class_counts(self) -> dict:
        return {o.value: sum(1 for x in self.orientations if x is o) for o in Orientation}

    def summary(self) -> dict:
        return {
            "accepted_count": self.accepted_count,
            "aperture_radians": self.aperture,
            "sampled": self.sampled,
            "orientation_counts": self.class_counts(),
        }

    def to_csv(self) -> str:
        n = self.directions.shape[1]
        head = [f"d{i}" for i in range(n)] + ["defect", "orientation"]
        lines = [",".join(head)]
        for d, f, o in zip(self.directions, self.defects, self.orientations):
            lines.append(",".join([*(format(float(c), ".17g") for c in d), format(float(f), ".17g"), o.value]))
        return "\n".join(lines) + "\n"


def _max_pairwise_angle(dirs):
    if len(dirs) < 2:
        return 0.0
    cos = np.clip(dirs @ dirs.T, -1.0, 1.0)
    return float(np.arccos(cos.min()))


def cone_sample(
    space: SigmaSpace,
    p0,
    p1,
    q0,
    sphere_samples: int = 2000,
    tol: float | None = None,
    radius: float = 1.0,
) -> ConeSample:
    """Sample the collinearity cone at Q0 of the vector P0P1.

    Directions come from :func:`fibonacci_directions` with the pole along
    the coordinate direction of P0P1. The aperture is the widest pairwise
    angle within one orientation class, maximised over classes.

    The default ``tol`` is ``1/N`` in 3-D and ``1/N**2`` in 2-D for ``N``
    samples: half the defect of the ring of directions nearest the poles, so a
    degenerate cone keeps exactly the two poles.
    """
    if not space.has_coordinates:
        raise UnsupportedOperation("cone sampling requires a coordinate backend")
    _check_skeleton(space, p0, p1)
    p0, p1, q0 = (space.as_point(p) for p in (p0, p1, q0))
    dirs = fibonacci_directions(int(sphere_samples), space.dim, p1 - p0)
    if tol is None:
        tol = 1.0 / sphere_samples if space.dim == 3 else 1.0 / sphere_samples**2
    pts = q0 + radius * dirs
    keep = np.asarray(space.contains_batch(pts), dtype=bool)
    dirs, pts = dirs[keep], pts[keep]
    ev = space._eval
    aa = 2.0 * space.sigma(p0, p1)
    ab = ev(p0, pts) + space.sigma(q0, p1) - space.sigma(p0, q0) - ev(p1, pts)
    bb = 2.0 * ev(q0, pts)
    defect = collinearity_defect(ab, aa, bb)
    ok = defect <= tol
    orients = [
        _orientation(x, aa, y, True, False, y == 0.0) for x, y in zip(ab[ok], bb[ok])
    ]
    acc = dirs[ok]
    aperture = 0.0
    for o in Orientation:
        sel = np.array([x is o for x in orients], dtype=bool)
        if sel.any():
            aperture = max(aperture, _max_pairwise_angle(acc[sel]))
    return ConeSample(acc, pts[ok], defect[ok], orients, aperture, int(sphere_samples))

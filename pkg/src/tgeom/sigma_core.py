"""Algebra of a sigma-space: scalar products, Gram determinants, lengths.

Everything here is computed from world-function values only. Coordinates,
when a backend has them, are never looked at.

Determinants go through LAPACK's partially pivoted LU (``numpy.linalg.det``).
Zero tests are scale-aware: a determinant of a ``k x k`` Gram matrix whose
largest entry has magnitude ``s`` counts as zero when
``|det| <= tol_rel * s**k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ContractError
from .spaces import IdSubset, PredicateRegion, RestrictedSpace, SigmaSpace, TabulatedSpace

__all__ = [
    "TOL_REL",
    "Multivector",
    "SignedLength",
    "sigma",
    "gamma",
    "two_point_scalar",
    "gram_matrix",
    "gram_det",
    "squared_length",
    "mv_scalar_product",
    "mv_length",
    "restrict",
    "is_negligible",
    "has_repeated_point",
    "bordered_gram",
    "bordered_det",
]

TOL_REL = 1e-9


class Multivector(tuple):
    """Ordered tuple of ``n + 1`` points; ``order`` is ``n``.

    Order matters and repeats are allowed (a repeat makes it a null multivector).
    """

    def __new__(cls, points):
        pts = tuple(points)
        if not pts:
            raise ContractError("a multivector needs at least one point")
        return super().__new__(cls, pts)

    @property
    def order(self) -> int:
        return len(self) - 1


@dataclass(frozen=True)
class SignedLength:
    """Length of a multivector whose squared length may be negative.

    ``magnitude`` is ``sqrt(|squared|)``; ``imaginary`` flags ``squared < 0``.
    """

    squared: float

    @property
    def magnitude(self) -> float:
        return sqrt(abs(self.squared))

    @property
    def imaginary(self) -> bool:
        return self.squared < 0

    def __str__(self):
        return f"{self.magnitude:.17g}{'i' if self.imaginary else ''}"


def _stack(space: SigmaSpace, points):
    pts = [space.as_point(p) for p in points]
    return space._check(np.stack(pts)) if pts else None


def has_repeated_point(space: SigmaSpace, points) -> bool:
    """Exact equality test between points; no fuzzy identity."""
    pts = _stack(space, points)
    if pts is None:
        return False
    if pts.ndim == 1:
        return len(np.unique(pts)) < len(pts)
    return len(np.unique(pts, axis=0)) < len(pts)


def _pairwise(space, pts):
    return space._eval(pts[:, None], pts[None, :])


def is_negligible(value, matrix, tol_rel: float = TOL_REL):
    """Scale-aware zero test for the determinant ``value`` of ``matrix``.

    Works on single matrices and on stacks ``(..., k, k)``.
    """
    matrix = np.asarray(matrix)
    k = matrix.shape[-1]
    s = np.max(np.abs(matrix), axis=(-2, -1))
    return np.abs(value) <= tol_rel * s**k


def sigma(space: SigmaSpace, p, q) -> float:
    return space.sigma(p, q)


def gamma(space: SigmaSpace, p0, p1, p2) -> float:
    """Scalar product of vectors P0P1 and P0P2 from sigma alone."""
    return space.sigma(p0, p1) + space.sigma(p0, p2) - space.sigma(p1, p2)


def two_point_scalar(space: SigmaSpace, p0, p1, q0, q1) -> float:
    """Scalar product of vectors P0P1 and Q0Q1 with unrelated origins."""
    return space.sigma(p0, q1) + space.sigma(q0, p1) - space.sigma(p0, q0) - space.sigma(p1, q1)


def gram_matrix(space: SigmaSpace, basepoint, others):
    """``n x n`` matrix of ``gamma(P0, Pi, Pk)``."""
    if len(others) < 1:
        raise ContractError("gram_matrix needs at least one non-base point")
    s = _pairwise(space, _stack(space, [basepoint, *others]))
    return s[0, 1:][:, None] + s[0, 1:][None, :] - s[1:, 1:]


def gram_det(space: SigmaSpace, points) -> float:
    """``F_n`` of ``n + 1`` points; equals ``2 sigma(P0, P1)`` for two points."""
    points = Multivector(points)
    if points.order < 1:
        raise ContractError("gram_det needs at least two points")
    if has_repeated_point(space, points):
        return 0.0
    if points.order == 1:
        return 2.0 * space.sigma(points[0], points[1])
    return float(np.linalg.det(gram_matrix(space, points[0], points[1:])))


def squared_length(space: SigmaSpace, points) -> float:
    """Squared length ``(n! S_n)**2`` of the simplex spanned by the points."""
    return gram_det(space, points)


def mv_scalar_product(space: SigmaSpace, a, b) -> float:
    """Scalar sigma-product of two multivectors of the same order."""
    a, b = Multivector(a), Multivector(b)
    if a.order != b.order:
        raise ContractError(f"multivector orders differ: {a.order} vs {b.order}")
    if a.order < 1:
        raise ContractError("scalar product needs order >= 1")
    if has_repeated_point(space, a) or has_repeated_point(space, b):
        return 0.0
    pa, pb = _stack(space, a), _stack(space, b)
    s = space._eval(pa[:, None], pb[None, :])  # s[i, k] = sigma(P_i, Q_k)
    m = s[0, 1:][None, :] + s[1:, 0][:, None] - s[0, 0] - s[1:, 1:]
    if a.order == 1:
        return float(m[0, 0])  # LU of a 1x1 matrix is not exact
    return float(np.linalg.det(m))


def mv_length(space: SigmaSpace, a) -> SignedLength:
    return SignedLength(mv_scalar_product(space, a, a))


def restrict(space: SigmaSpace, subset) -> RestrictedSpace:
    """Contract ``space`` to a subset given as a region, a predicate or an id list."""
    if hasattr(subset, "contains_batch"):
        region = subset
    elif callable(subset):
        region = PredicateRegion(subset)
    else:
        if not isinstance(space, TabulatedSpace) and space.has_coordinates:
            raise ContractError("id-list restriction needs a tabulated space")
        region = IdSubset(list(subset))
    if isinstance(region, IdSubset):
        inside = np.asarray(space.contains_batch(region.ids))
        if not inside.any():
            raise ContractError("restriction keeps no point of the space")
    return RestrictedSpace(space, region)


# -- batched helpers used by objects / reconstruct ------------------------------


def bordered_gram(space: SigmaSpace, skeleton, runners):
    """Gram matrices of ``(skeleton..., R)`` for a batch of running points R.

    Returns an array of shape ``(m, k + 1, k + 1)`` where ``k + 1`` is the
    skeleton size; the last row/column holds ``gamma(P0, Pi, R)``.
    """
    skel = _stack(space, skeleton)
    r = space.as_points(runners)
    single = r.shape == space._point_shape
    if single:
        r = r[None]
    space._check(r)
    k = len(skel) - 1
    s_skel = _pairwise(space, skel)
    s_r = space._eval(skel[None, :], r[:, None])  # (m, k + 1): sigma(P_i, R)
    m = len(r)
    g = np.empty((m, k + 1, k + 1))
    top = s_skel[0, 1:][:, None] + s_skel[0, 1:][None, :] - s_skel[1:, 1:]
    g[:, :k, :k] = top
    border = s_skel[0, 1:][None, :] + s_r[:, :1] - s_r[:, 1:]
    g[:, :k, k] = border
    g[:, k, :k] = border
    g[:, k, k] = 2.0 * s_r[:, 0]
    return g


def bordered_det(space: SigmaSpace, skeleton, runners, tol_rel: float = TOL_REL):
    """``F_{k+1}(skeleton, R)`` for a batch of R and its zero-test verdict."""
    g = bordered_gram(space, skeleton, runners)
    d = np.linalg.det(g)
    return d, is_negligible(d, g, tol_rel)

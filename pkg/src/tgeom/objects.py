"""Geometric objects as zero sets of envelope functions over a point skeleton.

Supported kinds and skeleton arities:

========================  =======================================================
``sphere`` (2)            ``sqrt(2s(P0,P1)) - sqrt(2s(P0,R))``
``ellipsoid`` (3)         ``sqrt(2s(P0,P2)) + sqrt(2s(P1,P2)) - sqrt(2s(P0,R)) - sqrt(2s(P1,R))``
``segment`` (2)           ``sqrt(2s(P0,P1)) - sqrt(2s(P0,R)) - sqrt(2s(P1,R))``
``ray`` (2)               ``sqrt(2s(P0,R)) - sqrt(2s(P0,P1)) - sqrt(2s(P1,R))``
``tube`` (n+1)            ``F_{n+1}(P0..Pn, R)``
``tube_section`` (n+1)    ``max_l |s(Pl,R) - s(Pl,P)|`` for an anchor P on the tube
========================  =======================================================

Square roots of negative world functions are imaginary. A root-type
envelope whose nonzero terms are all real or all imaginary is evaluated on
the common factor; a mix of both is reported as ``mixed`` and never counts
as a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ContractError, UnsupportedOperation
from .sigma_core import (
    TOL_REL,
    bordered_det,
    gram_matrix,
    has_repeated_point,
    is_negligible,
)
from .spaces import SigmaSpace

__all__ = [
    "EnvelopeObject",
    "EnvelopeEval",
    "TubeClass",
    "GridSample",
    "MAX_TUBE_ORDER",
    "envelope_value",
    "evaluate_envelope",
    "envelope_batch",
    "tube_member",
    "tube_section_member",
    "classify_tube",
    "grid_sample",
    "grid_axes",
]

MAX_TUBE_ORDER = 10

_ROOT_KINDS = {
    # kind: (arity, [(coef, i, j)]); index -1 stands for the running point R
    "sphere": (2, [(1.0, 0, 1), (-1.0, 0, -1)]),
    "ellipsoid": (3, [(1.0, 0, 2), (1.0, 1, 2), (-1.0, 0, -1), (-1.0, 1, -1)]),
    "segment": (2, [(1.0, 0, 1), (-1.0, 0, -1), (-1.0, 1, -1)]),
    "ray": (2, [(1.0, 0, -1), (-1.0, 0, 1), (-1.0, 1, -1)]),
}


class TubeClass(str, Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    NULL = "null"


@dataclass(frozen=True)
class EnvelopeObject:
    """A skeleton of points plus the kind of envelope built on it."""

    kind: str
    skeleton: tuple
    anchor: object = field(default=None, compare=False)

    def __post_init__(self):
        skel = tuple(self.skeleton)
        object.__setattr__(self, "skeleton", skel)
        if self.kind in _ROOT_KINDS:
            arity = _ROOT_KINDS[self.kind][0]
            if len(skel) != arity:
                raise ContractError(f"{self.kind} needs {arity} skeleton points, got {len(skel)}")
        elif self.kind in ("tube", "tube_section"):
            if not 1 <= len(skel) <= MAX_TUBE_ORDER + 1:
                raise ContractError(f"tube skeleton must have 1..{MAX_TUBE_ORDER + 1} points")
            if (self.kind == "tube_section") != (self.anchor is not None):
                raise ContractError("an anchor is required for tube_section and only for it")
        else:
            raise ContractError(f"unknown envelope kind '{self.kind}'")

    @property
    def order(self) -> int:
        return len(self.skeleton) - 1


@dataclass(frozen=True)
class EnvelopeEval:
    value: float
    imaginary: bool = False
    mixed: bool = False
    member: bool = False


def _check_tube_skeleton(space, skeleton, tol_rel):
    if len(skeleton) < 2:
        return
    if has_repeated_point(space, skeleton):
        raise ContractError("degenerate tube skeleton: repeated point")
    if len(skeleton) == 2:
        s = 2.0 * space.sigma(skeleton[0], skeleton[1])
        degenerate = s == 0.0
    else:
        g = gram_matrix(space, skeleton[0], skeleton[1:])
        degenerate = bool(is_negligible(np.linalg.det(g), g, tol_rel))
    if degenerate:
        raise ContractError("degenerate tube skeleton: F_n vanishes")


def _root_batch(space, obj, r, tol_rel):
    _, terms = _ROOT_KINDS[obj.kind]
    skel = np.stack([space.as_point(p) for p in obj.skeleton])
    space._check(skel)
    m = len(r)
    s_r = space._eval(skel[None, :], r[:, None])  # (m, k + 1)
    two_sig = []
    for _, i, j in terms:
        if j == -1:
            two_sig.append(2.0 * s_r[:, i])
        else:
            two_sig.append(np.full(m, 2.0 * space._eval(skel[i], skel[j])))
    two_sig = np.stack(two_sig, axis=1)
    coefs = np.array([c for c, _, _ in terms])
    mag = np.sqrt(np.abs(two_sig))
    value = mag @ coefs
    has_real = np.any(two_sig > 0, axis=1)
    has_imag = np.any(two_sig < 0, axis=1)
    mixed = has_real & has_imag
    value = np.where(mixed, np.nan, value)
    scale = np.sqrt(np.max(np.abs(two_sig), axis=1))
    member = ~mixed & (np.abs(np.nan_to_num(value)) <= tol_rel * scale)
    return value, has_imag & ~mixed, mixed, member


def _section_batch(space, obj, r, tol_rel):
    skel = np.stack([space.as_point(p) for p in obj.skeleton])
    anchor = space.as_point(obj.anchor)
    space._check(skel)
    space._check(anchor)
    s_r = space._eval(skel[None, :], r[:, None])  # (m, k + 1)
    s_p = space._eval(skel, anchor[None])  # (k + 1,)
    diff = np.abs(s_r - s_p[None, :])
    scale = np.maximum(np.abs(s_r), np.abs(s_p)[None, :]).max(axis=1)
    value = diff.max(axis=1)
    member = value <= tol_rel * scale
    return value, member


def envelope_batch(space: SigmaSpace, obj: EnvelopeObject, runners, tol_rel: float = TOL_REL):
    """Envelope values and membership for a batch of running points.

    Returns ``(value, imaginary, mixed, member)`` arrays. Points are checked
    against the domain of ``space``.
    """
    r = space.as_points(runners)
    if r.shape == space._point_shape:
        r = r[None]
    space._check(r)
    m = len(r)
    false = np.zeros(m, dtype=bool)
    if obj.kind in _ROOT_KINDS:
        return _root_batch(space, obj, r, tol_rel)
    _check_tube_skeleton(space, obj.skeleton, tol_rel)
    if obj.kind == "tube_section":
        if not tube_member(space, obj.skeleton, obj.anchor, tol_rel):
            raise ContractError("tube section anchor is not on the tube")
        value, member = _section_batch(space, obj, r, tol_rel)
        return value, false, false.copy(), member
    value, member = bordered_det(space, obj.skeleton, r, tol_rel)
    return value, false, false.copy(), member


def evaluate_envelope(space: SigmaSpace, obj: EnvelopeObject, point, tol_rel: float = TOL_REL) -> EnvelopeEval:
    value, imag, mixed, member = envelope_batch(space, obj, [space.as_point(point)], tol_rel)
    if obj.kind == "tube" and has_repeated_point(space, [*obj.skeleton, point]):
        value, member = [0.0], [True]
    return EnvelopeEval(float(value[0]), bool(imag[0]), bool(mixed[0]), bool(member[0]))


def envelope_value(space: SigmaSpace, obj: EnvelopeObject, point) -> float:
    """Envelope function at ``point``; NaN for a mixed real/imaginary sum."""
    return evaluate_envelope(space, obj, point).value


def tube_member(space: SigmaSpace, skeleton, point, tol_rel: float = TOL_REL) -> bool:
    """Does ``point`` lie on the tube ``F_{n+1}(skeleton, R) = 0``?"""
    skeleton = tuple(skeleton)
    _check_tube_skeleton(space, skeleton, tol_rel)
    if has_repeated_point(space, [*skeleton, point]):
        return True
    if len(skeleton) == 1:
        return space.sigma(skeleton[0], point) == 0.0
    _, member = bordered_det(space, skeleton, point, tol_rel)
    return bool(member[0])


def tube_section_member(space: SigmaSpace, skeleton, anchor, point, tol_rel: float = TOL_REL) -> bool:
    """Is ``point`` in the section of the tube through ``anchor``?"""
    obj = EnvelopeObject("tube_section", tuple(skeleton), anchor)
    return evaluate_envelope(space, obj, point, tol_rel).member


def classify_tube(space: SigmaSpace, x, x_prime) -> TubeClass:
    """Sign of the world function between the two skeleton points."""
    s = space.sigma(x, x_prime)
    if s > 0:
        return TubeClass.TIMELIKE
    if s < 0:
        return TubeClass.SPACELIKE
    return TubeClass.NULL


@dataclass
class GridSample:
    """Member grid points (lexicographic order) and their envelope values."""

    points: np.ndarray
    values: np.ndarray
    shape: tuple = ()

    def __len__(self):
        return len(self.values)

    def to_csv(self) -> str:
        n = self.points.shape[1]
        lines = [",".join([f"x{i}" for i in range(n)] + ["envelope_value"])]
        for p, v in zip(self.points, self.values):
            lines.append(",".join(format(float(c), ".17g") for c in (*p, v)))
        return "\n".join(lines) + "\n"


def grid_axes(low, high, resolution, dim):
    low = np.broadcast_to(np.asarray(low, float), (dim,))
    high = np.broadcast_to(np.asarray(high, float), (dim,))
    res = np.broadcast_to(np.asarray(resolution), (dim,))
    if np.any(res < 2) or not np.all(np.asarray(res) == np.round(res)):
        raise ContractError("resolution must be an integer >= 2 on every axis")
    if np.any(high <= low):
        raise ContractError("degenerate sampling region: need low < high on every axis")
    return [np.linspace(lo, hi, int(k)) for lo, hi, k in zip(low, high, res)]


def grid_sample(
    space: SigmaSpace,
    obj: EnvelopeObject,
    low,
    high,
    resolution,
    tol_rel: float = TOL_REL,
    chunk: int = 1 << 16,
) -> GridSample:
    """Scan an axis-aligned box and keep grid points on the object.

    Points outside the domain of ``space`` (e.g. a removed region) are
    skipped. Output order is lexicographic in the coordinates.
    """
    if not space.has_coordinates:
        raise UnsupportedOperation("sampling requires coordinates")
    axes = grid_axes(low, high, resolution, space.dim)
    shape = tuple(len(a) for a in axes)
    total = int(np.prod(shape))
    pts_out, vals_out = [], []
    for start in range(0, total, chunk):
        idx = np.unravel_index(np.arange(start, min(start + chunk, total)), shape)
        pts = np.stack([a[i] for a, i in zip(axes, idx)], axis=1)
        pts = pts[np.asarray(space.contains_batch(pts), dtype=bool)]
        if not len(pts):
            continue
        value, _, _, member = envelope_batch(space, obj, pts, tol_rel)
        pts_out.append(pts[member])
        vals_out.append(value[member])
    if pts_out:
        points, values = np.concatenate(pts_out), np.concatenate(vals_out)
    else:
        points, values = np.empty((0, space.dim)), np.empty(0)
    return GridSample(points, values, shape)


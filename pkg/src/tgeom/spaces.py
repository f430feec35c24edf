"""World-function backends.

A space is anything that can evaluate ``sigma(P, Q)``: half the squared
distance between two points, allowed to be negative. Coordinate backends
(Euclidean, Minkowski and anything derived from them) take points as real
vectors; the tabulated backend takes integer ids into a dense table.

Every backend implements a vectorised ``_eval(a, b)`` that broadcasts over
leading axes. Public evaluation goes through :meth:`SigmaSpace.sigma` and
:meth:`SigmaSpace.sigma_batch`, which check that points lie in the domain.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractError, DomainError, TableValidationError, UnsupportedOperation

__all__ = [
    "SigmaSpace",
    "FlatSpace",
    "EuclideanSpace",
    "MinkowskiSpace",
    "TabulatedSpace",
    "RestrictedSpace",
    "DeformedSpace",
    "HalfSpace",
    "BallComplement",
    "IdSubset",
    "PredicateRegion",
    "Scale",
    "AffineCap",
    "Quadratic",
    "make_euclidean",
    "make_minkowski",
    "make_tabulated",
    "tabulate",
    "space_from_spec",
    "region_from_spec",
    "distortion_from_spec",
    "metric_from_sigma_fd",
    "uniform_points",
    "PRNG_NAME",
]

PRNG_NAME = "numpy.random.PCG64/uniform-v1"


class SigmaSpace:
    """Base class for a point domain paired with a world function."""

    has_coordinates = False
    dim: int | None = None

    # -- point handling -------------------------------------------------
    def as_points(self, points):
        raise NotImplementedError

    def as_point(self, p):
        pts = self.as_points(p)
        if pts.shape != self._point_shape:
            raise DomainError(f"expected a single point, got array of shape {pts.shape}")
        return pts

    @property
    def _point_shape(self):
        return (self.dim,) if self.has_coordinates else ()

    def contains_batch(self, points):
        """Boolean mask of points lying in the domain (no exception)."""
        raise NotImplementedError

    def contains(self, p) -> bool:
        try:
            p = self.as_point(p)
        except DomainError:
            return False
        return bool(self.contains_batch(p))

    def _check(self, pts):
        inside = np.asarray(self.contains_batch(pts))
        if not inside.all():
            bad = pts if pts.shape == self._point_shape else pts[~inside][0]
            raise DomainError(f"point {np.asarray(bad).tolist()} is outside the domain")
        return pts

    # -- evaluation -----------------------------------------------------
    def _eval(self, a, b):
        raise NotImplementedError

    def sigma(self, p, q) -> float:
        p = self._check(self.as_point(p))
        q = self._check(self.as_point(q))
        return float(self._eval(p, q))

    def sigma_batch(self, a, b):
        """World function over broadcast batches of points."""
        a = self._check(self.as_points(a))
        b = self._check(self.as_points(b))
        return self._eval(a, b)

    def metric_tensor(self, x):
        """Exact metric tensor at ``x`` for backends that know it."""
        raise UnsupportedOperation(f"{type(self).__name__} has no analytic metric tensor")

    def to_spec(self) -> dict:
        raise UnsupportedOperation(f"{type(self).__name__} cannot be serialised")


class _CoordinateSpace(SigmaSpace):
    has_coordinates = True

    def as_points(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 0 and self.dim == 1:
            pts = pts.reshape(1)
        if pts.ndim == 0 or pts.shape[-1] != self.dim:
            raise DomainError(f"points must have {self.dim} coordinates, got shape {pts.shape}")
        return pts

    def contains_batch(self, points):
        pts = self.as_points(points)
        return np.ones(pts.shape[:-1], dtype=bool)


class FlatSpace(_CoordinateSpace):
    """Constant diagonal metric: ``sigma = 1/2 * sum_i g_i (x_i - x'_i)**2``."""

    def __init__(self, signs):
        signs = np.asarray(signs, dtype=float)
        if signs.ndim != 1 or signs.size == 0:
            raise ContractError("metric signs must be a non-empty vector")
        self._signs = signs
        self._signs.setflags(write=False)
        self.dim = int(signs.size)

    @property
    def signs(self):
        return self._signs

    def _eval(self, a, b):
        d = a - b
        return 0.5 * np.sum(self._signs * d * d, axis=-1)

    def metric_tensor(self, x=None):
        return np.diag(self._signs)

    def inner(self, u, v):
        """Bilinear form of the metric on coordinate difference vectors."""
        return np.sum(self._signs * np.asarray(u, float) * np.asarray(v, float), axis=-1)


class EuclideanSpace(FlatSpace):
    def __init__(self, dim: int):
        if int(dim) < 1:
            raise ContractError("Euclidean dimension must be >= 1")
        super().__init__(np.ones(int(dim)))

    def __repr__(self):
        return f"EuclideanSpace(dim={self.dim})"

    def to_spec(self):
        return {"kind": "euclidean", "dim": self.dim}


class MinkowskiSpace(FlatSpace):
    """Index-1 pseudoeuclidean space, signature diag(1, -1, ..., -1)."""

    def __init__(self, dim: int):
        if int(dim) < 2:
            raise ContractError("Minkowski dimension must be >= 2")
        signs = -np.ones(int(dim))
        signs[0] = 1.0
        super().__init__(signs)

    def __repr__(self):
        return f"MinkowskiSpace(dim={self.dim})"

    def to_spec(self):
        return {"kind": "minkowski", "dim": self.dim}


class TabulatedSpace(SigmaSpace):
    """Finite sigma-space stored as a dense symmetric table."""

    def __init__(self, table):
        table = np.array(table, dtype=float)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise TableValidationError(f"sigma table must be a non-empty square matrix, got {table.shape}")
        asym = np.argwhere(np.triu(table != table.T, 1))
        diag = np.flatnonzero(np.diag(table) != 0)
        offending = [tuple(map(int, ij)) for ij in asym] + [(int(i), int(i)) for i in diag]
        if offending:
            raise TableValidationError(
                f"sigma table is not symmetric with zero diagonal at {offending[:10]}", offending
            )
        table.setflags(write=False)
        self._table = table

    @property
    def table(self):
        return self._table

    @property
    def count(self) -> int:
        return self._table.shape[0]

    def __repr__(self):
        return f"TabulatedSpace(count={self.count})"

    def as_points(self, points):
        arr = np.asarray(points)
        if arr.dtype == bool or not np.issubdtype(arr.dtype, np.integer):
            raise DomainError(f"tabulated points are integer ids, got {arr.dtype}")
        return arr.astype(np.int64, copy=False)

    def contains_batch(self, points):
        ids = self.as_points(points)
        return (ids >= 0) & (ids < self.count)

    def _eval(self, a, b):
        return self._table[a, b]

    def to_spec(self):
        return {"kind": "table", "sigma": self._table.tolist()}


# -- restriction regions ------------------------------------------------


class HalfSpace:
    """Points with ``normal . x > offset`` (strict)."""

    def __init__(self, normal, offset=0.0):
        self.normal = np.asarray(normal, dtype=float)
        self.offset = float(offset)

    def contains_batch(self, pts):
        return pts @ self.normal > self.offset

    def to_spec(self):
        return {"kind": "halfspace", "normal": self.normal.tolist(), "offset": self.offset}


class BallComplement:
    """Points strictly outside the closed Euclidean ball ``|x - center| <= radius``."""

    def __init__(self, center, radius):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        if self.radius < 0:
            raise ContractError("ball radius must be nonnegative")

    def contains_batch(self, pts):
        d = pts - self.center
        return np.sum(d * d, axis=-1) > self.radius**2

    def to_spec(self):
        return {"kind": "ball_complement", "center": self.center.tolist(), "radius": self.radius}


class IdSubset:
    """Retained ids of a tabulated space."""

    def __init__(self, ids):
        self.ids = np.unique(np.asarray(ids, dtype=np.int64))
        if self.ids.size == 0:
            raise ContractError("restriction to an empty id set")

    def contains_batch(self, pts):
        return np.isin(pts, self.ids)

    def to_spec(self):
        return {"kind": "ids", "ids": self.ids.tolist()}


class PredicateRegion:
    """Wraps a caller-supplied predicate ``f(point) -> bool``."""

    def __init__(self, predicate):
        self.predicate = predicate

    def contains_batch(self, pts):
        pts = np.asarray(pts)
        if pts.ndim <= 1:
            return np.bool_(self.predicate(pts))
        flat = pts.reshape(-1, pts.shape[-1])
        out = np.fromiter((bool(self.predicate(p)) for p in flat), dtype=bool, count=len(flat))
        return out.reshape(pts.shape[:-1])


class RestrictedSpace(SigmaSpace):
    """Contraction of a space to a subset of its points.

    Sigma values on retained points are the base values, untouched; querying a
    removed point raises :class:`DomainError`.
    """

    def __init__(self, base: SigmaSpace, region):
        self.base = base
        self.region = region
        self.has_coordinates = base.has_coordinates
        self.dim = base.dim

    def __repr__(self):
        return f"RestrictedSpace({self.base!r}, {type(self.region).__name__})"

    def as_points(self, points):
        return self.base.as_points(points)

    def contains_batch(self, points):
        pts = self.as_points(points)
        return np.asarray(self.base.contains_batch(pts)) & np.asarray(self.region.contains_batch(pts))

    def _eval(self, a, b):
        return self.base._eval(a, b)

    def metric_tensor(self, x):
        return self.base.metric_tensor(x)

    def to_spec(self):
        region = self.region.to_spec() if hasattr(self.region, "to_spec") else None
        if region is None:
            raise UnsupportedOperation("predicate restrictions cannot be serialised")
        return {"kind": "restrict", "base": self.base.to_spec(), "region": region}


# -- deformations ---------------------------------------------------------


class Scale:
    """``D(s) = lam * s``."""

    def __init__(self, lam):
        self.lam = float(lam)
        if self.lam <= 0:
            raise ContractError("scale factor must be positive")

    def __call__(self, s):
        return self.lam * s

    def slope_at_zero(self):
        return self.lam

    def to_spec(self):
        return {"kind": "scale", "lambda": self.lam}


class AffineCap:
    """``D(s) = s + d * sign(s) * min(|s|, sigma0)``."""

    def __init__(self, d, sigma0):
        self.d = float(d)
        self.sigma0 = float(sigma0)
        if self.d <= -1:
            raise ContractError("affine_cap requires d > -1 for monotonicity")
        if self.sigma0 < 0:
            raise ContractError("affine_cap requires sigma0 >= 0")

    def __call__(self, s):
        return s + self.d * np.sign(s) * np.minimum(np.abs(s), self.sigma0)

    def slope_at_zero(self):
        return 1.0 + self.d if self.sigma0 > 0 else 1.0

    def to_spec(self):
        return {"kind": "affine_cap", "d": self.d, "sigma0": self.sigma0}


class Quadratic:
    """``D(s) = s + c * s * |s|``; smooth enough for finite-difference checks."""

    def __init__(self, c):
        self.c = float(c)
        if self.c < 0:
            raise ContractError("quadratic distortion requires c >= 0 for monotonicity")

    def __call__(self, s):
        return s + self.c * s * np.abs(s)

    def slope_at_zero(self):
        return 1.0

    def to_spec(self):
        return {"kind": "quadratic", "c": self.c}


class DeformedSpace(SigmaSpace):
    """Base space with its world function passed through a monotone map ``D``."""

    def __init__(self, base: SigmaSpace, distortion):
        self.base = base
        self.distortion = distortion
        self.has_coordinates = base.has_coordinates
        self.dim = base.dim

    def __repr__(self):
        return f"DeformedSpace({self.base!r}, {type(self.distortion).__name__})"

    def as_points(self, points):
        return self.base.as_points(points)

    def contains_batch(self, points):
        return self.base.contains_batch(points)

    def _eval(self, a, b):
        return self.distortion(self.base._eval(a, b))

    def metric_tensor(self, x):
        return self.distortion.slope_at_zero() * self.base.metric_tensor(x)

    def to_spec(self):
        return {"kind": "deformed", "base": self.base.to_spec(), "distortion": self.distortion.to_spec()}


# -- constructors -------------------------------------------------------------


def make_euclidean(n: int) -> EuclideanSpace:
    return EuclideanSpace(n)


def make_minkowski(n: int) -> MinkowskiSpace:
    return MinkowskiSpace(n)


def make_tabulated(sigma_table) -> TabulatedSpace:
    """Finite sigma-space from an ``N x N`` table (validated bit-exactly)."""
    return TabulatedSpace(sigma_table)


def tabulate(space: SigmaSpace, points) -> TabulatedSpace:
    """Freeze the world function of ``space`` on ``points`` into a table."""
    pts = space.as_points(points)
    space._check(pts)
    m = len(pts)
    upper = np.triu(space._eval(pts[:, None], pts[None, :]), 1)
    # mirrored from one triangle so the table is bit-exactly symmetric
    return TabulatedSpace(upper + upper.T + np.zeros((m, m)))


def uniform_points(count: int, dim: int, seed: int, low=-1.0, high=1.0):
    """Seeded uniform sample in a box; algorithm recorded as :data:`PRNG_NAME`."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.uniform(low, high, size=(int(count), int(dim)))


def _require(spec, key, where):
    if key not in spec:
        raise ContractError(f"{where}: missing field '{key}'")
    return spec[key]


def region_from_spec(spec: dict):
    kind = _require(spec, "kind", "region")
    if kind == "halfspace":
        return HalfSpace(_require(spec, "normal", "region"), spec.get("offset", 0.0))
    if kind == "ball_complement":
        return BallComplement(_require(spec, "center", "region"), _require(spec, "radius", "region"))
    if kind == "ids":
        return IdSubset(_require(spec, "ids", "region"))
    raise ContractError(f"region: unknown kind '{kind}'")


def distortion_from_spec(spec: dict):
    kind = _require(spec, "kind", "distortion")
    if kind == "scale":
        return Scale(_require(spec, "lambda", "distortion"))
    if kind == "affine_cap":
        return AffineCap(_require(spec, "d", "distortion"), _require(spec, "sigma0", "distortion"))
    if kind == "quadratic":
        return Quadratic(_require(spec, "c", "distortion"))
    raise ContractError(f"distortion: unknown kind '{kind}'")


def space_from_spec(spec: dict) -> SigmaSpace:
    """Build a space from its JSON description.

    >>> space_from_spec({"kind": "minkowski", "dim": 3})
    MinkowskiSpace(dim=3)
    """
    if not isinstance(spec, dict):
        raise ContractError("space: expected a JSON object")
    kind = _require(spec, "kind", "space")
    if kind == "euclidean":
        return make_euclidean(_require(spec, "dim", "space"))
    if kind == "minkowski":
        return make_minkowski(_require(spec, "dim", "space"))
    if kind == "table":
        return make_tabulated(_require(spec, "sigma", "space"))
    if kind == "restrict":
        base = space_from_spec(_require(spec, "base", "space"))
        region = region_from_spec(_require(spec, "region", "space"))
        if isinstance(region, IdSubset) and base.has_coordinates:
            raise ContractError("region: id subsets need a tabulated base")
        return RestrictedSpace(base, region)
    if kind == "deformed":
        base = space_from_spec(_require(spec, "base", "space"))
        return DeformedSpace(base, distortion_from_spec(_require(spec, "distortion", "space")))
    raise ContractError(f"space: unknown kind '{kind}'")


def metric_from_sigma_fd(space: SigmaSpace, x, h: float = 1e-4):
    """Estimate ``g_ik(x) = -d2 sigma / dx^i dx'^k`` at ``x' = x``.

    Uses the 4-point cross stencil with steps ``+-h`` in ``x^i`` and in
    ``x'^k``; error is O(h**2) for smooth world functions.
    """
    if not space.has_coordinates:
        raise UnsupportedOperation("finite-difference metric requires a coordinate backend")
    if not h > 0:
        raise ContractError("step h must be positive")
    x = space.as_point(x)
    n = space.dim
    eye = np.eye(n) * h
    # a[i] = x + s*h*e_i, b[k] = x + t*h*e_k for s, t in {+1, -1}
    plus, minus = x + eye, x - eye
    pp = space.sigma_batch(plus[:, None], plus[None, :])
    pm = space.sigma_batch(plus[:, None], minus[None, :])
    mp = space.sigma_batch(minus[:, None], plus[None, :])
    mm = space.sigma_batch(minus[:, None], minus[None, :])
    return -(pp - pm - mp + mm) / (4.0 * h * h)

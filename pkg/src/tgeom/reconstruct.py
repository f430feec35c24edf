"""Recover flat coordinates from a world function and test embeddability.

The pipeline mirrors how one would rebuild Euclidean geometry knowing only
sigma:

1. :func:`detect_dimension` grows a basis ``P0..Pn`` greedily, each time
   adding the sample point with the largest ``|F_{k+1}|``, until every
   remaining point lies on the tube of the basis.
2. :func:`build_frame` turns the basis into covariant/contravariant metric
   tensors ``g_ik = gamma(P0, Pi, Pk)`` and its inverse.
3. :func:`coordinates` assigns ``x_i(P) = gamma(P0, Pi, P)``;
   :func:`sigma_from_coords` evaluates ``1/2 g^ik dx_i dx_k``.
4. :func:`verify_conditions` checks dimension (I), the coordinate formula
   for sigma (II) and injectivity of the coordinate map (IIIa) on a sample.

"Embeddable" means embeddable in a flat space of some signature; the
signature is reported and ``proper`` tells whether all metric eigenvalues
share one sign.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, NoBasisError
from .sigma_core import TOL_REL, is_negligible
from .spaces import DeformedSpace, RestrictedSpace, SigmaSpace, TabulatedSpace

__all__ = [
    "ReconstructionFrame",
    "EmbeddabilityReport",
    "EXHAUSTIVE_LIMIT",
    "build_frame",
    "detect_dimension",
    "coordinates",
    "sigma_from_coords",
    "verify_conditions",
    "menger_embed_test",
]

EXHAUSTIVE_LIMIT = 12
N_MAX_DEFAULT = 8
CONDITION_III = "not decidable at sample scale"


@dataclass(frozen=True)
class ReconstructionFrame:
    basis: tuple
    g_cov: np.ndarray
    g_contra: np.ndarray
    dim: int
    signature: tuple

    @property
    def proper(self) -> bool:
        return 0 in self.signature


@dataclass
class EmbeddabilityReport:
    embeddable: bool
    dim: int
    signature: tuple
    max_residual: float
    witness: list
    sigma_residual: float = 0.0
    proper: bool = False
    basis: list = field(default_factory=list)
    search: str = "direct"
    condition_iii: str = CONDITION_III

    def to_dict(self) -> dict:
        return {
            "embeddable": bool(self.embeddable),
            "dim": int(self.dim),
            "signature": [int(s) for s in self.signature],
            "max_residual": float(self.max_residual),
            "witness": [int(i) for i in self.witness],
            "sigma_residual": float(self.sigma_residual),
            "proper": bool(self.proper),
            "basis": [int(i) for i in self.basis],
            "search": self.search,
            "condition_iii": self.condition_iii,
        }

    def to_json(self, **extra) -> str:
        return json.dumps({**self.to_dict(), **extra}, indent=2, ensure_ascii=False)


# -- helpers over a precomputed sigma table -------------------------------------


def _gram_from_table(s, idx):
    i0, rest = idx[0], list(idx[1:])
    return s[i0, rest][:, None] + s[i0, rest][None, :] - s[np.ix_(rest, rest)]


def _bordered_from_table(s, idx, cand):
    """Bordered Gram matrices of basis ``idx`` with each candidate index."""
    i0, rest = idx[0], list(idx[1:])
    k = len(rest)
    cand = np.asarray(cand, dtype=int)
    g = np.empty((len(cand), k + 1, k + 1))
    g[:, :k, :k] = _gram_from_table(s, idx) if k else np.empty((0, 0))
    border = s[i0, rest][None, :] + s[i0, cand][:, None] - s[np.ix_(cand, rest)]
    g[:, :k, k] = border
    g[:, k, :k] = border
    g[:, k, k] = 2.0 * s[i0, cand]
    return g


def _normalised_det(g):
    d = np.linalg.det(g)
    scale = np.max(np.abs(g), axis=(-2, -1)) ** g.shape[-1]
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(scale > 0, np.abs(d) / scale, 0.0)
    return d, r


def _pairwise(space, pts):
    return space._eval(pts[:, None], pts[None, :])


def _prepare(space, sample):
    pts = space.as_points(sample)
    if pts.ndim == len(space._point_shape):
        raise ContractError("sample must be a list of points")
    space._check(pts)
    return pts


def _greedy_indices(s, tol_rel, max_dim=None):
    m = s.shape[0]
    if m < 2:
        raise ContractError("need at least two sample points")
    upper = np.abs(np.triu(s, 1))
    flat = int(np.argmax(upper))
    if upper.flat[flat] == 0.0:
        raise NoBasisError("every pair of sample points has sigma = 0")
    idx = [flat // m, flat % m]
    limit = m - 1 if max_dim is None else min(max_dim, m - 1)
    while len(idx) - 1 < limit:
        cand = np.array([c for c in range(m) if c not in idx])
        g = _bordered_from_table(s, idx, cand)
        d, r = _normalised_det(g)
        if np.all(r <= tol_rel):
            break
        idx.append(int(cand[int(np.argmax(np.abs(d)))]))
    return idx


# -- public API ---------------------------------------------------------------


def detect_dimension(space: SigmaSpace, sample, tol: float = TOL_REL, max_dim: int | None = None):
    """Dimension of the flat hull of ``sample`` and a basis spanning it.

    Returns ``(n, basis)`` with ``basis`` a list of ``n + 1`` sample points.
    Ties are broken by first index. ``max_dim`` stops the basis growth early;
    the sample is then generally not embeddable in the returned frame.
    """
    pts = _prepare(space, sample)
    idx = _greedy_indices(_pairwise(space, pts), tol, max_dim)
    basis = [int(pts[i]) if pts.ndim == 1 else pts[i] for i in idx]
    return len(idx) - 1, basis


def build_frame(space: SigmaSpace, basis, tol: float = TOL_REL) -> ReconstructionFrame:
    """Metric tensors of the basis ``P0..Pn``; rejects degenerate bases."""
    pts = _prepare(space, basis)
    if len(pts) < 2:
        raise ContractError("a frame needs at least two basis points")
    s = _pairwise(space, pts)
    g = _gram_from_table(s, list(range(len(pts))))
    det = np.linalg.det(g)
    if is_negligible(det, g, tol):
        raise ContractError("degenerate basis: F_n vanishes")
    g_contra = np.linalg.inv(g)
    n = g.shape[0]
    if not np.allclose(g @ g_contra, np.eye(n), rtol=0, atol=1e-9):
        raise ContractError("basis too ill-conditioned to invert the metric")
    eig = np.linalg.eigvalsh(g)
    signature = (int(np.sum(eig > 0)), int(np.sum(eig < 0)))
    g.setflags(write=False)
    g_contra.setflags(write=False)
    return ReconstructionFrame(tuple(pts), g, g_contra, n, signature)


def _coords_batch(space, frame, pts):
    basis = np.stack(frame.basis)
    s_bb = space._eval(basis[0], basis[1:])  # sigma(P0, Pi)
    s_0p = space._eval(basis[0], pts)  # sigma(P0, P)
    s_ip = space._eval(basis[1:][None, :], pts[:, None])  # sigma(Pi, P)
    return s_bb[None, :] + s_0p[:, None] - s_ip


def coordinates(space: SigmaSpace, frame: ReconstructionFrame, p):
    """Covariant coordinates ``x_i(P) = gamma(P0, Pi, P)``."""
    pt = space._check(space.as_point(p))
    return _coords_batch(space, frame, pt[None])[0]


def sigma_from_coords(frame: ReconstructionFrame, x_p, x_q) -> float:
    d = np.asarray(x_p, float) - np.asarray(x_q, float)
    return float(0.5 * d @ frame.g_contra @ d)


def _index_of(pts, p):
    if pts.ndim == 1:
        hit = np.flatnonzero(pts == p)
    else:
        hit = np.flatnonzero(np.all(pts == p, axis=1))
    return int(hit[0]) if hit.size else -1


def _verify(space, pts, s, frame, basis_idx, tol):
    m = len(pts)
    n = frame.dim
    scale = max(1.0, float(np.max(np.abs(s))))
    witness = []

    # I: every point on the n-th order tube of the basis
    basis = np.stack(frame.basis)
    s_bp = space._eval(basis[None, :], pts[:, None])  # sigma(P_l, P)
    s_bb = _pairwise(space, basis)
    g = np.empty((m, n + 1, n + 1))
    g[:, :n, :n] = frame.g_cov
    border = s_bb[0, 1:][None, :] + s_bp[:, :1] - s_bp[:, 1:]
    g[:, :n, n] = border
    g[:, n, :n] = border
    g[:, n, n] = 2.0 * s_bp[:, 0]
    _, r_tube = _normalised_det(g)
    max_residual = float(r_tube.max()) if m else 0.0

    # II: sigma reproduced by coordinates
    x = border  # covariant coordinates, one row per sample point
    dx = x[:, None, :] - x[None, :, :]
    s_rec = 0.5 * np.einsum("pqi,ik,pqk->pq", dx, frame.g_contra, dx)
    r_sigma = np.abs(s - s_rec) / scale
    sigma_residual = float(r_sigma.max()) if m else 0.0

    ok_i = max_residual <= tol
    ok_ii = sigma_residual <= tol
    if not ok_i:
        witness = [*basis_idx, int(np.argmax(r_tube))]
    elif not ok_ii:
        p, q = np.unravel_index(int(np.argmax(r_sigma)), r_sigma.shape)
        witness = [*basis_idx, int(p), int(q)]

    # IIIa: equal coordinates must mean equal sigma rows
    ok_iiia = True
    if ok_i and ok_ii and m > 1:
        xscale = max(1.0, float(np.max(np.abs(x))))
        same = np.max(np.abs(dx), axis=2) <= tol * xscale
        np.fill_diagonal(same, False)
        for p, q in zip(*np.nonzero(np.triu(same, 1))):
            row = np.abs(s[p] - s[q])
            if row.max() > tol * scale:
                ok_iiia = False
                witness = [*basis_idx, int(p), int(q), int(np.argmax(row))]
                break

    witness = sorted({i for i in witness if i >= 0})
    report = EmbeddabilityReport(
        embeddable=ok_i and ok_ii and ok_iiia,
        dim=n,
        signature=frame.signature,
        max_residual=max_residual,
        witness=witness,
        sigma_residual=sigma_residual,
        proper=frame.proper,
        basis=[i for i in basis_idx],
    )
    return report


def verify_conditions(space: SigmaSpace, sample, frame: ReconstructionFrame, tol: float = TOL_REL) -> EmbeddabilityReport:
    """Check conditions I, II and IIIa of ``frame`` over all sample points.

    Failures are report content: ``embeddable`` is False and ``witness``
    holds sample indices of a point set that cannot be embedded at
    ``frame.dim`` (basis indices are included when the basis lies in the
    sample).
    """
    pts = _prepare(space, sample)
    s = _pairwise(space, pts)
    basis_idx = [_index_of(pts, b) for b in frame.basis]
    return _verify(space, pts, s, frame, basis_idx, tol)


def _finite_ids(space):
    base = space
    while isinstance(base, (RestrictedSpace, DeformedSpace)):
        base = base.base
    if not isinstance(base, TabulatedSpace):
        raise ContractError("menger_embed_test needs a finite (tabulated) sigma-space")
    ids = np.arange(base.count)
    return ids[np.asarray(space.contains_batch(ids), dtype=bool)]


def menger_embed_test(space: SigmaSpace, n_max: int = N_MAX_DEFAULT, tol: float = TOL_REL) -> EmbeddabilityReport:
    """Smallest ``n <= n_max`` at which the finite space embeds in a flat space.

    With at most :data:`EXHAUSTIVE_LIMIT` points every basis of every order
    is tried; larger spaces use the greedy basis only (``search`` says which).
    Indices in the report refer to positions among the retained points.
    """
    ids = _finite_ids(space)
    m = len(ids)
    if m < 2:
        raise ContractError("menger_embed_test needs at least two points")
    s = _pairwise(space, ids)

    def run(idx):
        frame = build_frame(space, ids[list(idx)], tol)
        return _verify(space, ids, s, frame, list(idx), tol)

    if m > EXHAUSTIVE_LIMIT:
        try:
            idx = _greedy_indices(s, tol, max_dim=n_max + 1)
        except NoBasisError:
            return EmbeddabilityReport(False, 0, (0, 0), 0.0, list(range(m)), search="greedy")
        if len(idx) - 1 > n_max:
            witness = sorted(idx[: n_max + 2])
            g = _bordered_from_table(s, idx[: n_max + 1], [idx[n_max + 1]])
            _, r = _normalised_det(g)
            return EmbeddabilityReport(False, n_max, (0, 0), float(r[0]), witness, basis=idx[: n_max + 1], search="greedy")
        report = run(idx)
        report.search = "greedy"
        return report

    failure = None
    for n in range(1, min(n_max, m - 1) + 1):
        best = None
        for idx in itertools.combinations(range(m), n + 1):
            g = _gram_from_table(s, idx)
            d, r = _normalised_det(g[None])
            if r[0] <= tol:
                continue
            try:
                report = run(idx)
            except ContractError:
                continue
            report.search = "exhaustive"
            if report.embeddable:
                return report
            if best is None or r[0] > best[0]:
                best = (r[0], report)
        if best is not None:
            failure = best[1]
    if failure is None:
        return EmbeddabilityReport(False, 0, (0, 0), 0.0, list(range(m)), search="exhaustive")
    return failure

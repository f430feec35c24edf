import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tgeom import (
    BallComplement,
    ContractError,
    EnvelopeObject,
    TubeClass,
    UnsupportedOperation,
    classify_tube,
    envelope_value,
    evaluate_envelope,
    grid_sample,
    make_euclidean,
    make_minkowski,
    make_tabulated,
    restrict,
    tube_member,
    tube_section_member,
)
from tgeom.objects import grid_axes

E2 = make_euclidean(2)
E3 = make_euclidean(3)
M2 = make_minkowski(2)
M3 = make_minkowski(3)


def test_envelope_examples():
    assert envelope_value(E2, EnvelopeObject("sphere", ((0, 0), (1, 0))), (0, 1)) == 0.0
    seg = EnvelopeObject("segment", ((0, 0), (2, 0)))
    assert envelope_value(E2, seg, (1, 0)) == 0.0
    assert envelope_value(E2, seg, (3, 0)) != 0.0
    ray = EnvelopeObject("ray", ((0, 0), (1, 0)))
    assert envelope_value(E2, ray, (3, 0)) == 0.0
    assert envelope_value(E2, ray, (-1, 0)) != 0.0


def test_arity_and_kind_checks():
    with pytest.raises(ContractError):
        EnvelopeObject("sphere", ((0, 0),))
    with pytest.raises(ContractError):
        EnvelopeObject("ellipsoid", ((0, 0), (1, 0)))
    with pytest.raises(ContractError):
        EnvelopeObject("blob", ((0, 0),))
    with pytest.raises(ContractError):
        EnvelopeObject("tube_section", ((0, 0), (1, 0)))
    with pytest.raises(ContractError):
        EnvelopeObject("tube", tuple((i, 0) for i in range(12)))


@settings(max_examples=200)
@given(arrays(np.float64, (3, 2), elements=st.floats(-5, 5)))
def test_ellipsoid_degenerations(pts):
    p0, p1, r = pts
    ell_seg = EnvelopeObject("ellipsoid", (p0, p1, p1))
    seg = EnvelopeObject("segment", (p0, p1))
    assert envelope_value(E2, ell_seg, r) == pytest.approx(envelope_value(E2, seg, r), rel=1e-12, abs=1e-12)
    ell_sph = EnvelopeObject("ellipsoid", (p0, p0, p1))
    sph = EnvelopeObject("sphere", (p0, p1))
    # coincident foci double every term, so the zero sets agree
    assert envelope_value(E2, ell_sph, r) == pytest.approx(2 * envelope_value(E2, sph, r), rel=1e-12, abs=1e-12)


def test_imaginary_and_mixed_roots():
    sph = EnvelopeObject("sphere", ((0, 0), (0, 1)))  # spacelike radius
    ev = evaluate_envelope(M2, sph, (0, -1))
    assert ev.member and ev.imaginary and not ev.mixed
    ev = evaluate_envelope(M2, sph, (1, 0))  # timelike separation from the centre
    assert ev.mixed and not ev.member and np.isnan(ev.value)


# -- tubes ------------------------------------------------------------------------


def test_tube_member_examples():
    skel = [(0, 0, 0), (1, 0, 0)]
    assert tube_member(E3, skel, (2, 0, 0))
    assert not tube_member(E3, skel, (0, 1, 0))
    for p in skel:
        assert tube_member(E3, skel, p)


def test_degenerate_skeleton_rejected():
    with pytest.raises(ContractError):
        tube_member(E3, [(0, 0, 0), (0, 0, 0)], (1, 0, 0))
    with pytest.raises(ContractError):
        tube_member(E3, [(0, 0, 0), (1, 0, 0), (2, 0, 0)], (1, 0, 0))
    with pytest.raises(ContractError):
        tube_member(M2, [(0, 0), (1, 1)], (1, 0))


def test_plane_tube_e3():
    obj = EnvelopeObject("tube", ((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    got = grid_sample(E3, obj, -1, 1, 5)
    axis = np.linspace(-1, 1, 5)
    assert {tuple(p) for p in got.points} == {(x, y, 0.0) for x in axis for y in axis}


@settings(max_examples=100)
@given(arrays(np.float64, (2, 2), elements=st.integers(-3, 3).map(float)))
def test_line_tube_matches_parametric_oracle(skel):
    if np.all(skel[0] == skel[1]):
        return
    obj = EnvelopeObject("tube", tuple(map(tuple, skel)))
    got = {tuple(p) for p in grid_sample(E2, obj, -4, 4, 9).points}
    u = skel[1] - skel[0]
    axis = np.linspace(-4, 4, 9)
    # integer grid: R is on the line iff the 2-D cross product vanishes exactly
    expected = {(x, y) for x in axis for y in axis if u[0] * (y - skel[0][1]) - u[1] * (x - skel[0][0]) == 0}
    assert got == expected


def test_classify_tube():
    assert classify_tube(M2, (0, 0), (1, 0)) is TubeClass.TIMELIKE
    assert classify_tube(M2, (0, 0), (0, 1)) is TubeClass.SPACELIKE
    assert classify_tube(M2, (3, 1), (3, 1)) is TubeClass.NULL


def test_timelike_tube_is_a_line():
    obj = EnvelopeObject("tube", ((0, 0, 0), (1, 0, 0)))
    got = grid_sample(M3, obj, -2, 2, 41)
    assert len(got) == 41
    assert np.all(got.points[:, 1:] == 0.0)


def test_spacelike_tube_is_a_surface():
    obj = EnvelopeObject("tube", ((0, 0, 0), (0, 1, 0)))
    got = grid_sample(M3, obj, -2, 2, 21)
    # F_2 = y^2 - t^2 for this skeleton: the pair of planes t = +-y,
    # i.e. grid indices with i_t == i_y or i_t + i_y == 20
    expected = {(i, j, k) for i, j, k in itertools.product(range(21), repeat=3) if i == k or i + k == 20}
    idx = {tuple(int(v) for v in np.rint((p + 2) / 0.2)) for p in got.points}
    assert idx == expected
    assert all((10, j, 10) in idx for j in range(21))


# -- tube sections -------------------------------------------------------------


def test_section_singleton_e2():
    skel = ((0, 0), (1, 0))
    anchor = (0.5, 0.0)
    obj = EnvelopeObject("tube_section", skel, anchor)
    got = grid_sample(E2, obj, -2, 2, 41)
    assert [tuple(p) for p in got.points] == [anchor]
    assert tube_section_member(E2, skel, anchor, anchor)


def test_section_anchor_must_be_on_tube():
    with pytest.raises(ContractError):
        tube_section_member(E2, ((0, 0), (1, 0)), (0, 1), (0, 1))


def test_section_subset_of_tube():
    skel = ((0, 0, 0), (0, 1, 0))
    anchor = (0.0, 0.5, 0.0)
    obj = EnvelopeObject("tube_section", skel, anchor)
    got = grid_sample(M3, obj, -2, 2, 41)
    for p in got.points:
        assert tube_member(M3, skel, p)


def test_spacelike_section_is_a_curve():
    skel = ((0, 0, 0), (0, 1, 0))
    obj = EnvelopeObject("tube_section", skel, (0.0, 0.5, 0.0))
    counts = [len(grid_sample(M3, obj, -2, 2, r)) for r in (41, 81)]
    # oracle: x = 1/2 and t = +-y, two crossing lines
    assert counts == [81, 161]


# -- sampling plumbing -------------------------------------------------------------


def test_sphere_rasterisation():
    obj = EnvelopeObject("sphere", ((0, 0), (1, 0)))
    res = 81
    cell = 4 / (res - 1)
    got = grid_sample(E2, obj, -2, 2, res, tol_rel=cell / 2)
    radii = np.linalg.norm(got.points, axis=1)
    assert np.all(np.abs(radii - 1) <= cell)
    coarse = grid_sample(E2, obj, -2, 2, 41, tol_rel=(4 / 40) / 2)
    assert 1.5 < len(got) / len(coarse) < 2.5


def test_grid_sample_restricted_and_errors():
    obj = EnvelopeObject("tube", ((-1, 0), (1, 0)))
    holed = restrict(E2, BallComplement((0, 0), 0.5))
    got = grid_sample(holed, obj, -2, 2, 9)
    assert {tuple(p) for p in got.points} == {(x, 0.0) for x in np.linspace(-2, 2, 9) if abs(x) > 0.5}
    with pytest.raises(UnsupportedOperation, match="sampling requires coordinates"):
        grid_sample(make_tabulated([[0, 1], [1, 0]]), EnvelopeObject("sphere", (0, 1)), 0, 1, 2)
    with pytest.raises(ContractError):
        grid_axes(0, 1, 1, 2)
    with pytest.raises(ContractError):
        grid_axes(1, 1, 5, 2)


def test_grid_csv_format():
    obj = EnvelopeObject("tube", ((0, 0), (1, 1)))
    text = grid_sample(E2, obj, -1, 1, 3).to_csv()
    lines = text.split("\n")
    assert lines[0] == "x0,x1,envelope_value"
    assert lines[1:-1] == ["-1,-1,0", "0,0,0", "1,1,0"]
    assert lines[-1] == ""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tgeom import (
    ContractError,
    Orientation,
    UnsupportedOperation,
    cone_sample,
    fibonacci_directions,
    is_collinear,
    make_euclidean,
    make_minkowski,
    make_tabulated,
    tube_member,
    tube_through_point_member,
)
from tgeom.collinearity import collinearity_defect

E2 = make_euclidean(2)
E3 = make_euclidean(3)
M3 = make_minkowski(3)

vec3 = arrays(np.float64, (3,), elements=st.floats(-3, 3))


def test_is_collinear_examples():
    v = is_collinear(E2, [(0, 0), (1, 0)], [(5, 5), (7, 5)])
    assert v.collinear and v.orientation is Orientation.PARALLEL
    a = [(0.2, 0.1), (1.7, -0.4)]
    v = is_collinear(E2, a, a)
    assert v.collinear and v.orientation is Orientation.PARALLEL and v.defect == 0.0
    v = is_collinear(E2, [(0, 0), (1, 0)], [(0, 0), (0, 1)])
    assert not v.collinear and v.orientation is Orientation.INDETERMINATE


def test_antiparallel_and_order_mismatch():
    v = is_collinear(E2, [(0, 0), (1, 0)], [(3, 3), (1, 3)])
    assert v.collinear and v.orientation is Orientation.ANTIPARALLEL
    with pytest.raises(ContractError):
        is_collinear(E2, [(0, 0), (1, 0)], [(0, 0), (1, 0), (0, 1)])


def test_null_vectors_are_indeterminate():
    v = is_collinear(E2, [(0, 0), (1, 0)], [(2, 2), (2, 2)])
    assert v.collinear and v.orientation is Orientation.INDETERMINATE
    m2 = make_minkowski(2)
    v = is_collinear(m2, [(0, 0), (1, 1)], [(0, 0), (2, 2)])
    assert v.orientation is Orientation.INDETERMINATE


def test_imaginary_vectors_orientation():
    # both spacelike in Minkowski: squared lengths negative, product positive
    v = is_collinear(M3, [(0, 0, 0), (0, 1, 0)], [(1, 1, 1), (1, 3, 1)])
    assert v.collinear and v.orientation is Orientation.PARALLEL
    v = is_collinear(M3, [(0, 0, 0), (0, 1, 0)], [(1, 1, 1), (1, 0, 1)])
    assert v.collinear and v.orientation is Orientation.ANTIPARALLEL


def test_multivector_collinearity():
    a = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    b = [(0, 0, 5), (2, 1, 5), (-1, 3, 5)]  # same plane orientation, different area
    assert is_collinear(E3, a, b).orientation is Orientation.PARALLEL
    c = [(0, 0, 0), (1, 0, 0), (0, 0, 1)]
    assert not is_collinear(E3, a, c).collinear


@settings(max_examples=200)
@given(vec3, vec3, vec3, vec3)
def test_euclidean_collinearity_matches_cross_product(p0, p1, q0, q1):
    u, w = p1 - p0, q1 - q0
    nu, nw = np.linalg.norm(u), np.linalg.norm(w)
    assume(nu > 1e-3 and nw > 1e-3)
    sin = np.linalg.norm(np.cross(u, w)) / (nu * nw)
    assume(sin > 1e-3 or sin == 0.0)
    v = is_collinear(E3, [p0, p1], [q0, q1])
    assert v.collinear == (sin == 0.0)


@settings(max_examples=100)
@given(vec3, vec3, vec3, st.floats(-4, 4))
def test_scaling_invariance(p0, p1, q0, lam):
    assume(abs(lam) > 1e-2 and np.linalg.norm(p1 - p0) > 1e-2)
    q1 = q0 + 1.7 * (p1 - p0)
    base = is_collinear(M3, [p0, p1], [q0, q1], tol=1e-7)
    scaled = is_collinear(M3, [p0, p0 + lam * (p1 - p0)], [q0, q1], tol=1e-7)
    assert scaled.collinear == base.collinear
    if base.orientation is not Orientation.INDETERMINATE:
        flipped = base.orientation is not scaled.orientation
        assert flipped == (lam < 0)


@given(vec3, vec3, vec3, vec3)
def test_collinearity_symmetric(p0, p1, q0, q1):
    a, b = is_collinear(M3, [p0, p1], [q0, q1]), is_collinear(M3, [q0, q1], [p0, p1])
    assert a.collinear == b.collinear
    assert a.orientation is b.orientation


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_defect_in_unit_interval(ab, aa, bb):
    d = float(collinearity_defect(ab, aa, bb))
    assert 0.0 <= d <= 1.0


# -- tube through a point ------------------------------------------------------


def test_tube_through_point_line_y5():
    p0, p1, q0 = (0, 0), (1, 0), (0, 5)
    axis = np.linspace(-3, 7, 21)
    members = {(x, y) for x in axis for y in axis if tube_through_point_member(E2, p0, p1, q0, (x, y))}
    assert members == {(x, 5.0) for x in axis}
    assert tube_through_point_member(E2, p0, p1, q0, q0)


def test_tube_through_point_degenerate():
    with pytest.raises(ContractError):
        tube_through_point_member(E2, (1, 1), (1, 1), (0, 0), (1, 0))
    with pytest.raises(ContractError):
        tube_through_point_member(make_minkowski(2), (0, 0), (1, 1), (0, 0), (1, 0))


def test_tube_through_point_spacelike_is_wider_than_line():
    p0, p1, q0 = (0, 0, 0), (0, 1, 0), (0, 0, 0)
    axis = np.linspace(-2, 2, 9)
    members = [
        (t, x, y) for t in axis for x in axis for y in axis if tube_through_point_member(M3, p0, p1, q0, (t, x, y))
    ]
    # the line through q0 along the skeleton gives only 9 points
    assert len(members) > 9
    for t, _, y in members:
        assert abs(t) == abs(y)


@settings(max_examples=100)
@given(vec3, vec3, vec3)
def test_tube_through_own_origin_equals_tube(p0, p1, r):
    assume(M3.sigma(p0, p1) != 0.0)
    assume(abs(M3.sigma(p0, p1)) > 1e-3)
    a = tube_through_point_member(M3, p0, p1, p0, r, tol=1e-9)
    b = tube_member(M3, [p0, p1], r, 1e-9)
    # both test F_2(p0, p1, r) = 0; the thresholds differ only in normalisation
    if a != b:
        from tgeom import gram_det

        f2 = abs(gram_det(M3, [p0, p1, r]))
        assert f2 <= 1e-8 * max(1.0, np.max(np.abs([p0, p1, r]))) ** 4


# -- cone sampling ------------------------------------------------------------


def test_fibonacci_directions_contain_axis():
    axis = np.array([0.3, -0.2, 0.9])
    d = fibonacci_directions(200, 3, axis)
    np.testing.assert_allclose(np.linalg.norm(d, axis=1), 1.0, atol=1e-12)
    unit = axis / np.linalg.norm(axis)
    np.testing.assert_array_equal(d[0], unit)
    np.testing.assert_array_equal(d[-1], -unit)
    d2 = fibonacci_directions(8, 2, (0, 1))
    assert len(d2) == 8
    with pytest.raises(UnsupportedOperation):
        fibonacci_directions(10, 4)


def _brute_collinear(g, u, w, tol):
    # collinearity condition (A.B)^2 = (A.A)(B.B) written with coordinate inner products
    ab, aa, bb = u @ g @ w, u @ g @ u, w @ g @ w
    return abs(ab * ab - aa * bb) <= tol * (ab * ab + abs(aa * bb))


@pytest.mark.parametrize("p1", [(1, 0, 0), (0.3, -0.5, 0.8)])
def test_cone_euclidean_degenerates(p1):
    cone = cone_sample(E3, (0, 0, 0), p1, (0.5, 0.5, 0.5), 2000)
    assert cone.accepted_count == 2
    assert cone.aperture == 0.0
    counts = cone.class_counts()
    assert counts["parallel"] == 1 and counts["antiparallel"] == 1


def test_cone_timelike_degenerates():
    cone = cone_sample(M3, (0, 0, 0), (1, 0, 0), (0.2, 0.1, -0.3), 2000)
    assert cone.accepted_count == 2


def test_cone_spacelike_is_nontrivial():
    cone = cone_sample(M3, (0, 0, 0), (0, 1, 0), (0.2, 0.1, -0.3), 2000, tol=1e-3)
    assert cone.accepted_count > 2
    assert cone.aperture > 0.1
    g = M3.metric_tensor()
    for d in cone.directions:
        assert _brute_collinear(g, np.array([0, 1.0, 0]), d, 1e-3)
        assert abs(abs(d[0]) - abs(d[2])) < 0.1  # near the cone t = +-y


def test_cone_csv_and_errors():
    cone = cone_sample(E2, (0, 0), (1, 0), (0, 0), 16)
    text = cone.to_csv()
    assert text.splitlines()[0] == "d0,d1,defect,orientation"
    assert text.endswith("\n") and " \n" not in text
    assert cone.accepted_count == 2
    with pytest.raises(UnsupportedOperation):
        cone_sample(make_tabulated([[0, 1], [1, 0]]), 0, 1, 0, 10)
    with pytest.raises(ContractError):
        cone_sample(E3, (0, 0, 0), (0, 0, 0), (1, 1, 1), 10)

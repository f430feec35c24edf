"""
The collinearity cone
=====================

Which directions at Q0 are parallel to a fixed vector P0P1? In Euclidean
space only two (forward and backward). In Minkowski space the same holds
for a timelike vector, but a spacelike vector has a whole cone of them.
"""

from tgeom import cone_sample, is_collinear, make_euclidean, make_minkowski

e3 = make_euclidean(3)
m3 = make_minkowski(3)

print(is_collinear(e3, [(0, 0, 0), (1, 0, 0)], [(5, 5, 5), (7, 5, 5)]))
print(is_collinear(e3, [(0, 0, 0), (1, 0, 0)], [(5, 5, 5), (5, 6, 5)]))

q0 = (0.2, 0.1, -0.3)
for name, space, p1 in [
    ("Euclidean", e3, (0.3, 0.4, 0.5)),
    ("Minkowski timelike", m3, (1, 0, 0)),
    ("Minkowski spacelike", m3, (0, 1, 0)),
]:
    cone = cone_sample(space, (0, 0, 0), p1, q0, sphere_samples=2000)
    print(f"{name:20s} accepted {cone.accepted_count:3d}  aperture {cone.aperture:.3f} rad  {cone.class_counts()}")

# the spacelike cone lies along t = +-y; a looser tolerance shows more of it
cone = cone_sample(m3, (0, 0, 0), (0, 1, 0), q0, sphere_samples=2000, tol=1e-3)
for d in cone.directions[:6]:
    print("  direction", d.round(3))

"""
Objects as zero sets of envelope functions
==========================================

A sphere, a segment, a ray and a plane, each described by a few skeleton
points and found by scanning a grid.
"""

import numpy as np

from tgeom import EnvelopeObject, envelope_value, grid_sample, make_euclidean

e2 = make_euclidean(2)
e3 = make_euclidean(3)

# a sphere through P1 with centre P0; cell-sized tolerance for rasterisation
circle = EnvelopeObject("sphere", ((0.0, 0.0), (1.0, 0.0)))
for res in (41, 81):
    cell = 4 / (res - 1)
    pts = grid_sample(e2, circle, -2, 2, res, tol_rel=cell / 2).points
    radii = np.linalg.norm(pts, axis=1)
    print(f"res {res}: {len(pts)} circle points, radius in [{radii.min():.3f}, {radii.max():.3f}]")

# segment vs ray: the triangle equality picks different parts of the line
seg = EnvelopeObject("segment", ((0.0, 0.0), (1.0, 0.0)))
ray = EnvelopeObject("ray", ((0.0, 0.0), (1.0, 0.0)))
for x in (-0.5, 0.5, 2.0):
    print(f"x={x:+.1f}  segment {envelope_value(e2, seg, (x, 0)):+.3f}  ray {envelope_value(e2, ray, (x, 0)):+.3f}")

# an ellipsoid with coincident second focus and surface point is a segment
ell = EnvelopeObject("ellipsoid", ((0.0, 0.0), (1.0, 0.0), (1.0, 0.0)))
print("ellipsoid vs segment at (0.3, 0.4):", envelope_value(e2, ell, (0.3, 0.4)), envelope_value(e2, seg, (0.3, 0.4)))

# a second-order tube through three points is their plane
plane = EnvelopeObject("tube", ((0, 0, 0), (1, 0, 0), (0, 1, 0)))
pts = grid_sample(e3, plane, -1, 1, 11).points
print("plane tube:", len(pts), "members, all with z = 0:", bool(np.all(pts[:, 2] == 0)))

# a tube section through an anchor collapses to that anchor in Euclidean space
sec = EnvelopeObject("tube_section", ((0, 0), (1, 0)), (0.5, 0.0))
print("section members:", grid_sample(e2, sec, -2, 2, 41).points.tolist())

"""
Scalar products and lengths from a world function
=================================================

Everything below is computed from sigma values only. The coordinates are
there just to build the spaces.
"""

import numpy as np

from tgeom import (
    gamma,
    gram_det,
    make_euclidean,
    make_minkowski,
    mv_length,
    mv_scalar_product,
    two_point_scalar,
)

e2 = make_euclidean(2)
m2 = make_minkowski(2)

# sigma is half the squared distance
print("sigma((0,0),(3,4)) in E2:", e2.sigma((0, 0), (3, 4)))
print("sigma((0,0),(1,1)) in M2:", m2.sigma((0, 0), (1, 1)), "(null separation)")

# scalar product of two vectors sharing an origin, and with unrelated origins
print("P0P1 . P0P2 for orthogonal unit vectors:", gamma(e2, (0, 0), (1, 0), (0, 1)))
print("(0,0)->(1,0) . (5,5)->(6,5):", two_point_scalar(e2, (0, 0), (1, 0), (5, 5), (6, 5)))

# compare with the coordinate dot product on random vectors
rng = np.random.default_rng(0)
p0, p1, q0, q1 = rng.uniform(-1, 1, size=(4, 3))
e3 = make_euclidean(3)
print("from sigma :", two_point_scalar(e3, p0, p1, q0, q1))
print("from coords:", (p1 - p0) @ (q1 - q0))

# Gram determinants give squared volumes: the unit right triangle has area 1/2
f2 = gram_det(e2, [(0, 0), (1, 0), (0, 1)])
print("F_2 of the unit triangle:", f2, "-> area", np.sqrt(f2) / 2)

# bivector scalar product and lengths; spacelike vectors have imaginary length
print("bivector product:", mv_scalar_product(e2, [(0, 0), (1, 0), (0, 1)], [(0, 0), (2, 0), (0, 2)]))
print("length of (0,0)->(3,4):", mv_length(e2, [(0, 0), (3, 4)]))
print("length of spacelike (0,0)->(0,1) in M2:", mv_length(m2, [(0, 0), (0, 1)]))

"""
Embeddability of finite tables and restricted spaces
====================================================

A finite sigma table either fits into a flat space of some dimension or it
does not; the report says which and names a point set to blame. Removing
part of a space changes nothing for the points that stay.
"""

import numpy as np

from tgeom import (
    BallComplement,
    EnvelopeObject,
    grid_sample,
    make_euclidean,
    make_tabulated,
    menger_embed_test,
    restrict,
)

square = np.array([[0, 0.5, 1, 0.5], [0.5, 0, 0.5, 1], [1, 0.5, 0, 0.5], [0.5, 1, 0.5, 0]])
print("unit square:", menger_embed_test(make_tabulated(square)).to_dict())

# stretch one side by 10%: no longer flat in 2-D, but fine in 3-D
bent = square.copy()
bent[0, 1] = bent[1, 0] = 0.55
print("bent, n <= 2:", menger_embed_test(make_tabulated(bent), n_max=2).to_dict())
print("bent, any n :", menger_embed_test(make_tabulated(bent)).to_dict())

# a random table does not fit in low dimensions
rng = np.random.default_rng(0)
a = np.triu(rng.uniform(size=(6, 6)), 1)
r = menger_embed_test(make_tabulated(a + a.T), n_max=3)
print("random 6x6, n <= 3: embeddable", r.embeddable, "witness", r.witness)

# a hole in the plane punches a gap in the segment but keeps every other point
e2 = make_euclidean(2)
holed = restrict(e2, BallComplement((0, 0), 0.5))
seg = EnvelopeObject("segment", ((-1.0, 0.0), (1.0, 0.0)))
print("segment in E2   :", grid_sample(e2, seg, -1, 1, 9).points[:, 0].tolist())
print("segment with hole:", grid_sample(holed, seg, -1, 1, 9).points[:, 0].tolist())

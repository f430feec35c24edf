"""
Timelike and spacelike tubes in Minkowski space
===============================================

The first-order tube through two points is a straight line when the points
are timelike separated, but a two-dimensional surface when they are
spacelike separated. Member counts at two grid resolutions show this.
"""

import math

from tgeom import EnvelopeObject, classify_tube, grid_sample, make_minkowski

m3 = make_minkowski(3)

for end in [(1, 0, 0), (0, 1, 0), (1, 1, 0)]:
    cls = classify_tube(m3, (0, 0, 0), end)
    print(f"(0,0,0)->{end}: {cls.value}, sigma = {m3.sigma((0, 0, 0), end)}")
    if cls.value == "null":
        continue  # no tube through null-separated points
    tube = EnvelopeObject("tube", ((0, 0, 0), end))
    counts = [len(grid_sample(m3, tube, -2, 2, res)) for res in (41, 81)]
    exponent = math.log(counts[1] / counts[0]) / math.log(81 / 41)
    print(f"    members {counts}, scaling exponent {exponent:.3f}")

# the spacelike tube is the pair of planes t = +-y and still contains the line
tube = EnvelopeObject("tube", ((0, 0, 0), (0, 1, 0)))
pts = grid_sample(m3, tube, -2, 2, 21).points
print("max | |t| - |y| | over members:", abs(abs(pts[:, 0]) - abs(pts[:, 2])).max())
print("line t = y = 0 present:", sum(1 for p in pts if p[0] == 0 and p[2] == 0), "of 21 points")

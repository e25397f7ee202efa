import math

import numpy as np

from parade_cover import (Point2, Rect, RouteInstance, SensorModel, World, best_heading,
                          coverage_column, segment_blocked)

# a 10 x 10 world with one building in it
world = World(Rect.from_coords(0, 0, 10, 10), (Rect.from_coords(2, 2, 4, 4),))

# sight lines through the building are blocked, along its wall they are not
print(segment_blocked(world, Point2(0, 3), Point2(6, 3)))   # True
print(segment_blocked(world, Point2(0, 5), Point2(6, 5)))   # False
print(segment_blocked(world, Point2(0, 2), Point2(6, 2)))   # False, grazing the bottom edge

# a 175 degree camera cannot see points at 0, 10 and 180 degrees at once
angles = [math.radians(a) for a in (0, 10, 180)]
heading, count = best_heading(angles, math.radians(175))
print(f"best heading {math.degrees(heading):.1f} deg covers {count} points")

# coverage of a short route seen from one guard, sweep vs centroid heading
guard = Point2(1, 1)
route = RouteInstance(0, (Point2(9, 1), Point2(9, 5), Point2(5, 9), Point2(1, 9), Point2(1, 5)))
for policy in ("sweep", "centroid"):
    col = coverage_column(world, guard, route, SensorModel(90.0, heading_policy=policy))
    print(f"{policy:>8}: {col}")

# graded coverage: falls off linearly with distance out to max_range
decay = SensorModel(360.0, max_range=12.0, attenuation="linear_decay")
print("linear decay:", np.round(coverage_column(world, guard, route, decay), 3))

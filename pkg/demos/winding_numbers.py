"""
Counting how often a loop goes around a point
=============================================

Loops in the punctured plane are classified by an integer: the net number
of turns around the puncture. Joining loops adds their counts and running
a loop backwards negates it.
"""
import math

from winding_kernel import PolylinePath, concat, reverse, winding_number


def circle(turns, radius=1.0, center=(0.0, 0.0), vertices_per_turn=12):
    n = abs(turns) * vertices_per_turn
    sign = 1 if turns > 0 else -1
    pts = [(center[0] + radius * math.cos(sign * 2 * math.pi * k / n),
            center[1] + radius * math.sin(sign * 2 * math.pi * k / n)) for k in range(n)]
    pts.append(pts[0])
    return PolylinePath.from_points(pts)


square = PolylinePath.from_points([(1, 1), (-1, 1), (-1, -1), (1, -1), (1, 1)])
print("square around the origin :", winding_number(square))
print("same square, reversed    :", winding_number(reverse(square)))
print("square around (5, 0)     :", winding_number(square, puncture=(5.0, 0.0)))

# %% Counts add under concatenation.
loop = concat(circle(2), circle(-3))
print("two turns then three back:", winding_number(loop))

# %% A star that goes around twice.
star = PolylinePath.from_points([(math.cos(4 * math.pi * k / 5), math.sin(4 * math.pi * k / 5)) for k in range(5)]
                                + [(1.0, 0.0)])
print("pentagram                :", winding_number(star))

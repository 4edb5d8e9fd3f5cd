"""Screen-space vector helpers shared across the package.

Convention used everywhere: angles are degrees, 0 points screen-right,
90 points screen-up. Screen y grows downward, so the angle of a vector
is atan2(-dy, dx) and a positive rotation is counter-clockwise as seen
on screen.
"""

from __future__ import annotations

import math

Vec = tuple[float, float]


def screen_angle(vec: Vec) -> float:
    """Direction of a screen-space vector in degrees, in [0, 360)."""
    return math.degrees(math.atan2(-vec[1], vec[0])) % 360.0


def unit_from_angle(deg: float) -> Vec:
    """Unit vector pointing along a screen angle."""
    r = math.radians(deg)
    return (math.cos(r), -math.sin(r))


def rotate_screen(vec: Vec, deg: float) -> Vec:
    """Rotate a vector by deg counter-clockwise on screen (y-down axes)."""
    r = math.radians(deg)
    c, s = math.cos(r), math.sin(r)
    x, y = vec
    return (x * c + y * s, -x * s + y * c)


def wrap_deg(deg: float) -> float:
    """Wrap an angle difference into [-180, 180)."""
    return (deg + 180.0) % 360.0 - 180.0


def dist(a: Vec, b: Vec) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def centroid(points: list[Vec]) -> Vec:
    n = len(points)
    return (sum(p[0] for p in points) / n, sum(p[1] for p in points) / n)

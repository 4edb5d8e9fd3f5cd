import math
import random

from palmboard.geometry import (
    centroid, dist, rotate_screen, screen_angle, unit_from_angle, wrap_deg,
)


def test_screen_angle_cardinals():
    assert screen_angle((1.0, 0.0)) == 0.0
    assert screen_angle((0.0, -1.0)) == 90.0   # up on screen
    assert screen_angle((-1.0, 0.0)) == 180.0
    assert screen_angle((0.0, 1.0)) == 270.0   # down on screen


def test_unit_from_angle_inverts_screen_angle():
    rng = random.Random(7)
    for _ in range(200):
        a = rng.uniform(0.0, 360.0)
        v = unit_from_angle(a)
        assert math.isclose(screen_angle(v), a % 360.0, abs_tol=1e-9)


def test_rotate_screen_is_ccw_on_screen():
    # +90 degrees takes screen-right to screen-up (negative y)
    x, y = rotate_screen((1.0, 0.0), 90.0)
    assert math.isclose(x, 0.0, abs_tol=1e-12)
    assert math.isclose(y, -1.0, abs_tol=1e-12)


def test_rotate_screen_adds_to_angle():
    rng = random.Random(11)
    for _ in range(200):
        a = rng.uniform(0.0, 360.0)
        d = rng.uniform(-720.0, 720.0)
        v = rotate_screen(unit_from_angle(a), d)
        assert math.isclose(screen_angle(v), (a + d) % 360.0, abs_tol=1e-9) \
            or math.isclose(abs(screen_angle(v) - (a + d) % 360.0), 360.0, abs_tol=1e-9)


def test_wrap_deg_range_and_identity():
    rng = random.Random(13)
    for _ in range(500):
        a = rng.uniform(-2000.0, 2000.0)
        w = wrap_deg(a)
        assert -180.0 <= w < 180.0
        assert math.isclose((a - w) % 360.0, 0.0, abs_tol=1e-9) \
            or math.isclose((a - w) % 360.0, 360.0, abs_tol=1e-9)
    assert wrap_deg(180.0) == -180.0
    assert wrap_deg(-180.0) == -180.0


def test_dist_and_centroid():
    assert dist((0.0, 0.0), (3.0, 4.0)) == 5.0
    assert centroid([(0.0, 0.0), (10.0, 0.0), (5.0, 9.0)]) == (5.0, 3.0)

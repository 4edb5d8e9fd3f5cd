import math
import random

import pytest

from palmboard.geometry import dist, rotate_screen, unit_from_angle, wrap_deg
from palmboard.piemenu import (
    DegeneratePoseError, Handedness, MenuItem, PieMenuConfig,
    default_menu, estimate_palm_pose, fallback_pose, layout_menu,
    map_direction, numbered_menu, presenter_pose, select_from_displacement,
)


def test_pose_example_row_of_three():
    pose = estimate_palm_pose(
        [(100.0, 100.0), (110.0, 100.0), (120.0, 100.0)], default_menu())
    assert math.isclose(pose.center[0], 110.0, abs_tol=1e-9)
    assert math.isclose(pose.center[1], 180.0, abs_tol=1e-9)
    assert math.isclose(pose.orientation, 270.0, abs_tol=1e-9)


def test_pose_follows_contact_order():
    cfg = default_menu()
    fwd = estimate_palm_pose([(100.0, 100.0), (110.0, 100.0), (120.0, 100.0)], cfg)
    rev = estimate_palm_pose([(120.0, 100.0), (110.0, 100.0), (100.0, 100.0)], cfg)
    assert math.isclose(abs(wrap_deg(fwd.orientation - rev.orientation)), 180.0,
                        abs_tol=1e-9)


def test_presenter_pose_never_opens_up_screen():
    cfg = default_menu()
    # reversed row: the raw pose points up-screen, the presenter variant flips
    raw = estimate_palm_pose([(120.0, 100.0), (110.0, 100.0), (100.0, 100.0)], cfg)
    assert math.isclose(raw.center[1], 20.0, abs_tol=1e-9)
    flipped = presenter_pose([(120.0, 100.0), (110.0, 100.0), (100.0, 100.0)], cfg)
    assert math.isclose(flipped.center[1], 180.0, abs_tol=1e-9)
    rng = random.Random(31)
    for _ in range(200):
        pts = [(rng.uniform(0, 1900), rng.uniform(0, 1000)) for _ in range(3)]
        try:
            pose = presenter_pose(pts, cfg)
        except DegeneratePoseError:
            continue
        assert unit_from_angle(pose.orientation)[1] >= -1e-12


def test_left_hand_mirrors_menu_side():
    cfg = default_menu()
    cfg.handedness = Handedness.LEFT
    pose = estimate_palm_pose(
        [(100.0, 100.0), (110.0, 100.0), (120.0, 100.0)], cfg)
    assert math.isclose(pose.center[1], 20.0, abs_tol=1e-9)  # above the contacts


def test_degenerate_constellation_raises_and_fallback_points_down():
    cfg = default_menu()
    with pytest.raises(DegeneratePoseError):
        estimate_palm_pose([(10.0, 10.0), (10.5, 10.2), (10.9, 10.1)], cfg)
    pose = fallback_pose([(10.0, 10.0), (10.5, 10.2), (10.9, 10.1)], cfg)
    assert pose.orientation == 270.0
    assert pose.center[1] > 10.0


def test_equilateral_triangle_has_defined_pose():
    # isotropic covariance: falls back to the widest contact pair
    a, b = (0.0, 0.0), (100.0, 0.0)
    c = (50.0, 100.0 * math.sqrt(3.0) / 2.0)
    pose = estimate_palm_pose([a, b, c], default_menu())
    assert 0.0 <= pose.orientation < 360.0


def test_pose_equivariance_under_rigid_motion():
    rng = random.Random(4242)
    cfg = default_menu()
    for _ in range(200):
        pts = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(3)]
        try:
            pose = estimate_palm_pose(pts, cfg)
        except DegeneratePoseError:
            continue
        theta = rng.uniform(0.0, 360.0)
        tx, ty = rng.uniform(-500, 500), rng.uniform(-500, 500)
        moved = []
        for p in pts:
            q = rotate_screen(p, theta)
            moved.append((q[0] + tx, q[1] + ty))
        got = estimate_palm_pose(moved, cfg)
        want_c = rotate_screen(pose.center, theta)
        assert math.isclose(got.center[0], want_c[0] + tx, abs_tol=1e-9)
        assert math.isclose(got.center[1], want_c[1] + ty, abs_tol=1e-9)
        assert abs(wrap_deg(got.orientation - (pose.orientation + theta))) < 1e-9


def test_horizontal_row_puts_right_hand_menu_below():
    # x-sorted fingertip rows are the common resting pose; no flip needed
    rng = random.Random(99)
    cfg = default_menu()
    for _ in range(100):
        y = rng.uniform(100, 900)
        x0 = rng.uniform(0, 1500)
        pts = sorted(((x0 + i * rng.uniform(25, 60), y + rng.uniform(-8, 8))
                      for i in range(3)))
        pose = estimate_palm_pose(pts, cfg)
        assert unit_from_angle(pose.orientation)[1] > 0.5
        assert presenter_pose(pts, cfg) == pose


def test_menu_disc_avoids_fingertips():
    # occlusion premise: with defaults (radius 60 < offset 80) the disc
    # sits under the palm, not under any resting fingertip
    rng = random.Random(7)
    cfg = default_menu()
    for _ in range(200):
        y = rng.uniform(100, 900)
        x0 = rng.uniform(100, 1500)
        pts = sorted(((x0 + i * rng.uniform(25, 60), y + rng.uniform(-10, 10))
                      for i in range(3)))
        geo = layout_menu(presenter_pose(pts, cfg), cfg)
        for p in pts:
            assert dist(p, geo.center) > geo.radius


def test_layout_arcs_default_menu():
    cfg = default_menu()
    geo = layout_menu(estimate_palm_pose(
        [(100.0, 100.0), (110.0, 100.0), (120.0, 100.0)], cfg), cfg)
    spans = {cfg.items[a.item].label: (a.start, a.end) for a in geo.arcs}
    assert spans["Back"] == (135.0, 225.0)
    assert spans["Next"] == (315.0, 45.0)
    assert spans["Overview"] == (45.0, 135.0)
    assert spans["Copy"] == (225.0, 315.0)
    widths = [(a.end - a.start) % 360.0 for a in geo.arcs]
    assert all(math.isclose(w, 90.0) for w in widths)


def test_default_menu_smoke_directions():
    cfg = default_menu()
    cases = {
        (-60.0, 0.0): "Back",
        (60.0, 0.0): "Next",
        (0.0, -60.0): "Overview",
        (0.0, 60.0): "Copy",
    }
    for disp, label in cases.items():
        idx = select_from_displacement(disp, cfg, 30.0)
        assert cfg.items[idx].label == label


def test_selection_threshold_behavior():
    cfg = default_menu()
    assert select_from_displacement((0.0, 0.0), cfg, 30.0) is None
    # |(21,-21)| ~ 29.7: below threshold; |(22,-22)| ~ 31.1: 45 degree boundary
    assert select_from_displacement((21.0, -21.0), cfg, 30.0) is None
    idx = select_from_displacement((22.0, -22.0), cfg, 30.0)
    assert cfg.items[idx].label == "Overview"
    assert select_from_displacement((30.0, 0.0), cfg, 30.0) is not None


def test_sector_boundaries_are_half_open_ccw():
    cfg = numbered_menu(4)  # centers: 1 at 90, 2 at 0, 3 at 270, 4 at 180
    # a boundary angle belongs to the item on its counter-clockwise side
    assert cfg.items[map_direction(45.0, cfg)].label == "1"
    assert cfg.items[map_direction(44.999, cfg)].label == "2"
    assert cfg.items[map_direction(135.0, cfg)].label == "4"
    assert cfg.items[map_direction(315.0, cfg)].label == "2"
    assert cfg.items[map_direction(314.999, cfg)].label == "3"


def _oracle_sector(angle: float, n: int) -> int:
    # closed-form index for numbered_menu: item i covers the half-open
    # span (i*s, (i+1)*s] of u = (90 + 180/n - angle) mod 360
    s = 360.0 / n
    u = (90.0 + 180.0 / n - angle) % 360.0
    if u == 0.0:
        u = 360.0
    return math.ceil(u / s) - 1


def test_map_direction_matches_closed_form_oracle():
    for n in (2, 4, 8, 16):
        cfg = numbered_menu(n)
        for k in range(0, 3600, 7):  # dense-ish; full grid runs in acceptance
            angle = k / 10.0
            assert map_direction(angle, cfg) == _oracle_sector(angle, n), (n, angle)


def test_validate_flags_nonstandard_counts():
    assert numbered_menu(4).validate() == []
    warns = numbered_menu(6).validate()
    assert len(warns) == 1 and "6" in warns[0]


def test_validate_rejects_uneven_sectors():
    cfg = PieMenuConfig(items=[
        MenuItem("a", "a", 0.0), MenuItem("b", "b", 90.0), MenuItem("c", "c", 120.0),
    ])
    with pytest.raises(ValueError):
        cfg.validate()


def test_validate_rejects_duplicate_centers():
    cfg = PieMenuConfig(items=[MenuItem("a", "a", 0.0), MenuItem("b", "b", 0.0)])
    with pytest.raises(ValueError):
        cfg.validate()


def test_validate_rejects_bad_dimensions():
    cfg = default_menu()
    cfg.radius = 0.0
    with pytest.raises(ValueError):
        cfg.validate()

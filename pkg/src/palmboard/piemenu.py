"""Palm-anchored pie menu: pose estimation, layout, sector selection.

The menu opens under the presenter's palm: three resting fingertips give
a contact constellation, the constellation's principal axis gives the
hand direction, and the menu center sits offset_distance px from the
contact centroid along that axis rotated palm-ward (offset_angle degrees,
clockwise of the axis for a right hand, counter-clockwise for a left).
Items occupy half-open angular sectors of width 360/N centered on each
item's center_angle; a swipe selects the sector its direction falls in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .geometry import Vec, centroid, dist, screen_angle, unit_from_angle, wrap_deg


class Handedness(Enum):
    RIGHT = "right"
    LEFT = "left"


class DegeneratePoseError(ValueError):
    """Contacts too close together to define a hand direction."""


@dataclass(frozen=True)
class MenuItem:
    label: str
    action: str
    center_angle: float  # degrees, 0 = screen-right, 90 = screen-up


@dataclass
class PieMenuConfig:
    items: list[MenuItem]
    radius: float = 60.0
    offset_distance: float = 80.0
    offset_angle: float = 90.0
    handedness: Handedness = Handedness.RIGHT

    # Item counts used by the accuracy study. Other counts work but are
    # flagged by validate() so configs stay comparable across runs.
    STANDARD_COUNTS = (2, 4, 8, 16)

    def validate(self) -> list[str]:
        """Raise ValueError on broken invariants; return soft warnings."""
        if not self.items:
            raise ValueError("menu needs at least one item")
        if self.radius <= 0 or self.offset_distance <= 0:
            raise ValueError("radius and offset_distance must be positive")
        n = len(self.items)
        centers = sorted(item.center_angle % 360.0 for item in self.items)
        spacing = 360.0 / n
        for i in range(n):
            gap = (centers[(i + 1) % n] - centers[i]) % 360.0 if n > 1 else 360.0
            if abs(gap - spacing) > 1e-9:
                raise ValueError(
                    "sector centers must be evenly spaced so half-open "
                    f"sectors of width {spacing:g} tile the circle")
        warnings = []
        if n not in self.STANDARD_COUNTS:
            warnings.append(
                f"item count {n} is outside the standard set {self.STANDARD_COUNTS}; "
                "accuracy numbers will not be comparable to the study sizes")
        return warnings

    @property
    def sector_width(self) -> float:
        return 360.0 / len(self.items)


@dataclass(frozen=True)
class PalmPose:
    """Where the menu anchors: the palm-ward point offset from the
    fingertips, and the fingertip-to-palm direction."""
    center: Vec
    orientation: float  # degrees in [0, 360)


@dataclass(frozen=True)
class Arc:
    item: int
    start: float  # degrees, half-open [start, end) going counter-clockwise
    end: float


@dataclass
class MenuGeometry:
    center: Vec
    radius: float
    orientation: float  # palm-ward direction, kept for rendering
    items: list[MenuItem] = field(default_factory=list)
    arcs: list[Arc] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "center": [self.center[0], self.center[1]],
            "radius": self.radius,
            "orientation": self.orientation,
            "items": [
                {"label": it.label, "action": it.action, "center_angle": it.center_angle}
                for it in self.items
            ],
            "arcs": [{"item": a.item, "start": a.start, "end": a.end}
                     for a in self.arcs],
        }


def _principal_axis(contacts: list[Vec]) -> Vec:
    """Unit direction of largest spread; falls back to the widest pair
    when the covariance is isotropic (e.g. an equilateral triangle)."""
    cx, cy = centroid(contacts)
    sxx = sxy = syy = 0.0
    for x, y in contacts:
        dx, dy = x - cx, y - cy
        sxx += dx * dx
        sxy += dx * dy
        syy += dy * dy
    iso_eps = 1e-12 * (sxx + syy)
    if abs(sxx - syy) <= iso_eps and abs(sxy) <= iso_eps:
        best, pair = -1.0, (contacts[0], contacts[-1])
        for i in range(len(contacts)):
            for j in range(i + 1, len(contacts)):
                d = dist(contacts[i], contacts[j])
                if d > best:
                    best, pair = d, (contacts[i], contacts[j])
        vx, vy = pair[1][0] - pair[0][0], pair[1][1] - pair[0][1]
    else:
        theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
        vx, vy = math.cos(theta), math.sin(theta)
    norm = math.hypot(vx, vy)
    return (vx / norm, vy / norm)


def _oriented_axis(contacts: list[Vec]) -> Vec:
    """Principal axis oriented by contact order: along (last - first),
    tie-broken by (middle - centroid).

    A screen-absolute sign choice (say, always down-screen) would flip
    the pose when a rigid rotation pushes the axis past horizontal;
    orienting by contact order keeps the pose equivariant under rigid
    motions of the ordered constellation.
    """
    scale = max(dist(a, b) for i, a in enumerate(contacts) for b in contacts[i + 1:])
    if scale < 2.0:
        raise DegeneratePoseError(f"contacts span {scale:.3g} px (< 2 px)")
    u = _principal_axis(contacts)
    first, last = contacts[0], contacts[-1]
    s = u[0] * (last[0] - first[0]) + u[1] * (last[1] - first[1])
    if abs(s) <= 1e-9 * scale:
        mid = contacts[len(contacts) // 2]
        c = centroid(contacts)
        s = u[0] * (mid[0] - c[0]) + u[1] * (mid[1] - c[1])
    if s < 0:
        u = (-u[0], -u[1])
    return u


def _pose_from_direction(contacts: list[Vec], direction: float,
                         config: PieMenuConfig) -> PalmPose:
    c = centroid(contacts)
    ux, uy = unit_from_angle(direction)
    center = (c[0] + config.offset_distance * ux, c[1] + config.offset_distance * uy)
    return PalmPose(center, direction % 360.0)


def estimate_palm_pose(contacts: list[Vec], config: PieMenuConfig) -> PalmPose:
    """Pose from an ordered contact list (normally 3 resting fingertips).

    The palm-ward direction is the oriented hand axis rotated by
    offset_angle (clockwise for a right hand, counter-clockwise for a
    left hand); the pose center sits offset_distance px along it from
    the contact centroid. Raises DegeneratePoseError when all contacts
    sit within 2 px; callers fall back to centroid + straight-down.
    """
    if len(contacts) < 2:
        raise DegeneratePoseError("need at least 2 contacts")
    u = _oriented_axis(contacts)
    axis_angle = screen_angle(u)
    if config.handedness is Handedness.RIGHT:
        direction = axis_angle - config.offset_angle
    else:
        direction = axis_angle + config.offset_angle
    return _pose_from_direction(contacts, direction, config)


def presenter_pose(contacts: list[Vec], config: PieMenuConfig) -> PalmPose:
    """estimate_palm_pose, then flip 180 degrees if the palm direction
    would point up-screen. A presenter faces the board with fingers
    pointing up, so the menu must never open above the hand; the gesture
    engine uses this variant while the raw pose op stays equivariant."""
    pose = estimate_palm_pose(contacts, config)
    if unit_from_angle(pose.orientation)[1] < 0.0:
        return _pose_from_direction(contacts, pose.orientation + 180.0, config)
    return pose


def fallback_pose(contacts: list[Vec], config: PieMenuConfig) -> PalmPose:
    """Degenerate-constellation fallback: centroid + straight-down."""
    return _pose_from_direction(contacts, 270.0, config)


def layout_menu(pose: PalmPose, config: PieMenuConfig) -> MenuGeometry:
    """Sector geometry centered at the pose center: item i covers the
    half-open arc [center_angle - 180/N, center_angle + 180/N)."""
    half = 180.0 / len(config.items)
    arcs = [Arc(i, (it.center_angle - half) % 360.0, (it.center_angle + half) % 360.0)
            for i, it in enumerate(config.items)]
    return MenuGeometry(pose.center, config.radius, pose.orientation,
                        list(config.items), arcs)


def map_direction(angle_deg: float, config: PieMenuConfig) -> int:
    """Index of the item whose sector contains the angle.

    Sectors are half-open: item i covers [center - w/2, center + w/2)
    with w = 360/N, so an exact boundary belongs to the item on its
    counter-clockwise side.
    """
    half = 180.0 / len(config.items)
    for i, item in enumerate(config.items):
        d = wrap_deg(angle_deg - item.center_angle)
        if -half <= d < half:
            return i
    raise RuntimeError(f"no sector contains {angle_deg!r}; config.validate() first")


def select_from_displacement(disp: Vec, config: PieMenuConfig,
                             threshold: float) -> int | None:
    """Selected item for a swipe displacement, or None below threshold."""
    if math.hypot(disp[0], disp[1]) < threshold:
        return None
    return map_direction(screen_angle(disp), config)


def default_menu() -> PieMenuConfig:
    """Presenter menu: Back on the left, Next on the right, Overview up,
    Copy down."""
    return PieMenuConfig(items=[
        MenuItem("Back", "prev_slide", 180.0),
        MenuItem("Next", "next_slide", 0.0),
        MenuItem("Overview", "overview", 90.0),
        MenuItem("Copy", "duplicate_selection", 270.0),
    ])


def numbered_menu(n: int) -> PieMenuConfig:
    """Integer-labeled wheel used by the accuracy experiment: item 1 at
    screen-top, following items clockwise."""
    spacing = 360.0 / n
    items = [MenuItem(str(i + 1), f"item_{i + 1}", (90.0 - i * spacing) % 360.0)
             for i in range(n)]
    return PieMenuConfig(items=items)

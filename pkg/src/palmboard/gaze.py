"""Gaze-trace analysis: visual-angle movement, fixations, paired t-test.

Geometry: the eye sits on the perpendicular through the screen center
at the viewing distance; pixels convert to millimeters via the screen's
physical width. Each gaze sample defines a ray from the eye, and the
movement between consecutive samples is the angle between their rays,
in degrees of visual angle.

Trace file format (line-delimited JSON, LF endings): a header line

    {"w": <px>, "h": <px>, "screen_mm": <number>, "distance_mm": <number>, "v": 1}

followed by one sample per line, time-ordered:

    {"t": <int ms>, "x": <number px>, "y": <number px>}
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

from scipy.special import betainc

from .geometry import Vec

DISPERSION_DEG = 1.0     # I-DT defaults
MIN_DURATION_MS = 100


class GazeFormatError(ValueError):
    """Raised when a gaze trace file cannot be parsed."""


@dataclass(frozen=True)
class GazeSample:
    t: int
    x: float
    y: float


@dataclass
class GazeTrace:
    width: int                # px
    height: int               # px
    screen_mm: float          # physical width of the display
    distance_mm: float        # eye to screen
    samples: list[GazeSample] = field(default_factory=list)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("screen pixel size must be positive")
        if self.screen_mm <= 0 or self.distance_mm <= 0:
            raise ValueError("physical sizes must be positive")

    def ray(self, p: Vec) -> tuple[float, float, float]:
        """Unit-free ray from the eye through screen point p (px)."""
        k = self.screen_mm / self.width
        return ((p[0] - self.width / 2.0) * k,
                (p[1] - self.height / 2.0) * k,
                self.distance_mm)


@dataclass(frozen=True)
class Fixation:
    centroid: Vec             # px
    start: int                # ms
    duration: int             # ms


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p: float                  # two-tailed


def visual_angle(trace: GazeTrace, a: Vec, b: Vec) -> float:
    """Angle in degrees between the eye rays through two screen points."""
    ax, ay, az = trace.ray(a)
    bx, by, bz = trace.ray(b)
    dot = ax * bx + ay * by + az * bz
    cx = ay * bz - az * by
    cy = az * bx - ax * bz
    cz = ax * by - ay * bx
    cross = math.sqrt(cx * cx + cy * cy + cz * cz)
    return math.degrees(math.atan2(cross, dot))


def total_gaze_movement(trace: GazeTrace) -> float:
    """Sum of per-step visual angles over the sample sequence, degrees."""
    if len(trace.samples) < 2:
        warnings.warn("fewer than 2 samples: gaze movement is zero",
                      stacklevel=2)
        return 0.0
    total = 0.0
    for prev, cur in zip(trace.samples, trace.samples[1:]):
        total += visual_angle(trace, (prev.x, prev.y), (cur.x, cur.y))
    return total


def gaze_movement_rate(trace: GazeTrace) -> float:
    """Movement per second, degrees. The aggregate in the literature is
    ambiguous between a sum and a rate; both are exposed."""
    if len(trace.samples) < 2:
        warnings.warn("fewer than 2 samples: gaze movement is zero",
                      stacklevel=2)
        return 0.0
    span_ms = trace.samples[-1].t - trace.samples[0].t
    if span_ms <= 0:
        raise ValueError("trace spans no time; rate undefined")
    return total_gaze_movement(trace) * 1000.0 / span_ms


def detect_fixations(trace: GazeTrace, dispersion_deg: float = DISPERSION_DEG,
                     min_duration_ms: int = MIN_DURATION_MS) -> list[Fixation]:
    """Dispersion-based (I-DT) detection: grow a window while the max
    pairwise visual angle stays within dispersion_deg; emit it as a
    fixation once it spans at least min_duration_ms. Emitted fixations
    are non-overlapping and time-ordered."""
    if dispersion_deg <= 0 or min_duration_ms <= 0:
        raise ValueError("thresholds must be positive")
    samples = trace.samples
    out: list[Fixation] = []
    start = 0
    while start < len(samples):
        end = start + 1  # window is samples[start:end]
        while end < len(samples) and _window_fits(trace, samples, start, end,
                                                  dispersion_deg):
            end += 1
        duration = samples[end - 1].t - samples[start].t
        if duration >= min_duration_ms:
            n = end - start
            cx = sum(s.x for s in samples[start:end]) / n
            cy = sum(s.y for s in samples[start:end]) / n
            out.append(Fixation((cx, cy), samples[start].t, duration))
            start = end
        else:
            start += 1
    return out


def _window_fits(trace: GazeTrace, samples: list[GazeSample], start: int,
                 end: int, limit: float) -> bool:
    """True when samples[end] joins samples[start:end] without pushing
    the max pairwise dispersion over the limit."""
    cand = (samples[end].x, samples[end].y)
    for i in range(start, end):
        if visual_angle(trace, (samples[i].x, samples[i].y), cand) > limit:
            return False
    return True


def paired_t_test(a: list[float], b: list[float]) -> TTestResult:
    """Two-tailed paired t-test on per-subject values; p comes from the
    regularized incomplete beta form of the t CDF."""
    if len(a) != len(b):
        raise ValueError("paired samples need equal lengths")
    n = len(a)
    if n < 2:
        raise ValueError("need at least 2 pairs")
    d = [x - y for x, y in zip(a, b)]
    mean = sum(d) / n
    var = sum((x - mean) ** 2 for x in d) / (n - 1)
    if var == 0.0:
        raise ValueError("degenerate differences")
    t = mean / math.sqrt(var / n)
    df = n - 1
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return TTestResult(t=t, df=df, p=p)


# ------------------------------------------------------------- file I/O

_HEADER_KEYS = ("w", "h", "screen_mm", "distance_mm", "v")
_SAMPLE_KEYS = ("t", "x", "y")


def parse_gaze_trace(text: str) -> GazeTrace:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GazeFormatError("empty trace: missing header")
    header = _json_line(lines[0], 1)
    if set(header) != set(_HEADER_KEYS):
        raise GazeFormatError("line 1: header must carry exactly "
                              f"{list(_HEADER_KEYS)}")
    if header["v"] != 1:
        raise GazeFormatError(f"line 1: unsupported version {header['v']!r}")
    try:
        trace = GazeTrace(int(header["w"]), int(header["h"]),
                          float(header["screen_mm"]),
                          float(header["distance_mm"]))
    except (TypeError, ValueError) as e:
        raise GazeFormatError(f"line 1: {e}") from None
    prev_t = None
    for lineno, line in enumerate(lines[1:], start=2):
        obj = _json_line(line, lineno)
        if set(obj) != set(_SAMPLE_KEYS):
            raise GazeFormatError(f"line {lineno}: sample must carry exactly "
                                  f"{list(_SAMPLE_KEYS)}")
        t, x, y = obj["t"], obj["x"], obj["y"]
        if isinstance(t, bool) or not isinstance(t, int):
            raise GazeFormatError(f"line {lineno}: t must be an integer")
        for name, v in (("x", x), ("y", y)):
            if isinstance(v, bool) or not isinstance(v, (int, float)) \
                    or not math.isfinite(v):
                raise GazeFormatError(f"line {lineno}: {name} must be finite")
        if prev_t is not None and t < prev_t:
            raise GazeFormatError(f"line {lineno}: time goes backwards")
        prev_t = t
        trace.samples.append(GazeSample(t, float(x), float(y)))
    return trace


def _json_line(line: str, lineno: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise GazeFormatError(f"line {lineno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise GazeFormatError(f"line {lineno}: expected an object")
    return obj


def emit_gaze_trace(trace: GazeTrace) -> str:
    out = [json.dumps({"w": trace.width, "h": trace.height,
                       "screen_mm": trace.screen_mm,
                       "distance_mm": trace.distance_mm, "v": 1},
                      separators=(",", ":"))]
    for s in trace.samples:
        out.append(json.dumps({"t": s.t, "x": float(s.x), "y": float(s.y)},
                              separators=(",", ":")))
    return "\n".join(out) + "\n"


def load_gaze_trace(path) -> GazeTrace:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_gaze_trace(f.read())


def save_gaze_trace(trace: GazeTrace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(emit_gaze_trace(trace))

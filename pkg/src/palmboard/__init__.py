"""Deterministic multi-touch whiteboard engine with a palm-hidden pie menu."""

from .document import Document, DocumentFormatError
from .gaze import (
    Fixation, GazeFormatError, GazeSample, GazeTrace, TTestResult,
    detect_fixations, gaze_movement_rate, paired_t_test, parse_gaze_trace,
    total_gaze_movement, visual_angle,
)
from .gestures import EngineConfig, GestureEngine
from .noise_model import (
    FitResult, NoiseModel, analytic_success, fit_noise_params, simulate_exp1,
)
from .piemenu import (
    Handedness, MenuGeometry, MenuItem, PalmPose, PieMenuConfig, default_menu,
    estimate_palm_pose, layout_menu, map_direction, numbered_menu,
    presenter_pose, select_from_displacement,
)
from .session import ReplayError, Session, replay
from .touch import (
    Phase, StreamError, TouchEvent, TouchTrace, load_trace, parse_trace,
    save_trace, validate_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Document", "DocumentFormatError",
    "Fixation", "GazeFormatError", "GazeSample", "GazeTrace", "TTestResult",
    "detect_fixations", "gaze_movement_rate", "paired_t_test",
    "parse_gaze_trace", "total_gaze_movement", "visual_angle",
    "EngineConfig", "GestureEngine",
    "FitResult", "NoiseModel", "analytic_success", "fit_noise_params",
    "simulate_exp1",
    "Handedness", "MenuGeometry", "MenuItem", "PalmPose", "PieMenuConfig",
    "default_menu", "estimate_palm_pose", "layout_menu", "map_direction",
    "numbered_menu", "presenter_pose", "select_from_displacement",
    "ReplayError", "Session", "replay",
    "Phase", "StreamError", "TouchEvent", "TouchTrace", "load_trace",
    "parse_trace", "save_trace", "validate_trace",
    "__version__",
]

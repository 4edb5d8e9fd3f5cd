"""Menu accuracy model: Gaussian direction noise plus a lapse mixture.

A selection swipe aimed at an item lands at the item's center angle
plus Gaussian noise (sigma, degrees); with probability `lapse` the
trial is instead executed in a uniformly random direction. Success
means the landed angle falls inside the target's sector, so the
analytic rate for an N-item wheel is

    (1 - lapse) * P(|eps| < 180/N) + lapse / N.

The Monte Carlo routes every trial through the real sector lookup
(select_from_displacement) rather than re-deriving the window, so the
simulation exercises the same code path the engine uses.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf

from .geometry import unit_from_angle
from .piemenu import numbered_menu, select_from_displacement

SIGMA_GRID = (0.05, 45.0, 0.05)     # lo, hi, step
LAPSE_GRID = (0.0, 0.1, 0.001)
REFINE_ROUNDS = 2
REFINE_POINTS = 41


@dataclass(frozen=True)
class NoiseModel:
    sigma: float            # degrees
    lapse: float = 0.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be a positive finite angle")
        if not (0.0 <= self.lapse <= 1.0):
            raise ValueError("lapse must be a probability")


@dataclass(frozen=True)
class FitResult:
    model: NoiseModel
    residuals: dict[int, float]     # analytic - observed, keyed by n_items
    sse: float
    warnings: list[str] = field(default_factory=list)


def analytic_success(model: NoiseModel, n_items: int) -> float:
    if n_items < 2:
        raise ValueError("n_items must be at least 2")
    half = 180.0 / n_items
    p_in = float(erf(half / (model.sigma * math.sqrt(2.0))))
    return (1.0 - model.lapse) * p_in + model.lapse / n_items


def simulate_exp1(model: NoiseModel, n_items: int, trials: int,
                  seed: int) -> float:
    """Seeded Monte Carlo success rate for an N-item wheel.

    The angular offsets (noise, lapse flags, lapse directions) are drawn
    before the targets, in a fixed order, so runs sharing a seed share
    the same offsets across different N: each trial's success is then
    the nested event |offset| < 180/N, which makes rates non-increasing
    in N for a fixed seed.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, model.sigma, trials)
    lapse_mask = rng.random(trials) < model.lapse
    lapse_dirs = rng.uniform(-180.0, 180.0, trials)
    targets = rng.integers(0, n_items, trials)
    offsets = np.where(lapse_mask, lapse_dirs, noise)

    menu = numbered_menu(n_items)
    centers = [item.center_angle for item in menu.items]
    threshold = 1.0
    radius = 3.0 * threshold
    hits = 0
    for i in range(trials):
        angle = centers[targets[i]] + offsets[i]
        ux, uy = unit_from_angle(angle)
        picked = select_from_displacement((radius * ux, radius * uy),
                                          menu, threshold)
        if picked == targets[i]:
            hits += 1
    return hits / trials


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(n)


def _sse_surface(sigmas: np.ndarray, lapses: np.ndarray,
                 ns: np.ndarray, rates: np.ndarray) -> np.ndarray:
    half = 180.0 / ns                                       # (k,)
    p_in = erf(half[None, None, :] /
               (sigmas[:, None, None] * math.sqrt(2.0)))    # (s, 1, k)
    pred = (1.0 - lapses[None, :, None]) * p_in \
        + lapses[None, :, None] / ns[None, None, :]
    return ((pred - rates[None, None, :]) ** 2).sum(axis=2)


def fit_noise_params(observed: list[tuple[int, float]],
                     fix_lapse: float | None = None) -> FitResult:
    """Deterministic least-squares fit over a sigma/lapse grid with local
    refinement. With fix_lapse given, one observation suffices; otherwise
    two are required."""
    if not observed:
        raise ValueError("no observations")
    seen = set()
    for n, rate in observed:
        if n < 2:
            raise ValueError(f"n_items {n} must be at least 2")
        if not (0.0 <= rate <= 1.0):
            raise ValueError(f"rate {rate} for n={n} is not a probability")
        if n in seen:
            raise ValueError(f"duplicate observation for n={n}")
        seen.add(n)
    needed = 1 if fix_lapse is not None else 2
    if len(observed) < needed:
        raise ValueError(f"need at least {needed} observations")

    notes: list[str] = []
    ns = np.array([n for n, _ in observed], dtype=float)
    rates = np.array([r for _, r in observed], dtype=float)
    if np.all(rates >= 1.0):
        notes.append("all observed rates are 1.0; sigma sits at the grid "
                     "boundary and is not identified")

    sigmas = _grid(*SIGMA_GRID)
    lapses = (np.array([fix_lapse]) if fix_lapse is not None
              else _grid(*LAPSE_GRID))
    s_step, l_step = SIGMA_GRID[2], LAPSE_GRID[2]
    half_pts = REFINE_POINTS // 2
    offsets = np.arange(-half_pts, half_pts + 1)
    for round_no in range(1 + REFINE_ROUNDS):
        sse = _sse_surface(sigmas, lapses, ns, rates)
        si, li = np.unravel_index(int(np.argmin(sse)), sse.shape)
        best_sigma, best_lapse = float(sigmas[si]), float(lapses[li])
        if round_no == REFINE_ROUNDS:
            break
        s_step /= half_pts
        sigmas = np.clip(best_sigma + s_step * offsets,
                         SIGMA_GRID[0] / 100.0, SIGMA_GRID[1])
        if fix_lapse is None:
            l_step /= half_pts
            lapses = np.clip(best_lapse + l_step * offsets,
                             LAPSE_GRID[0], LAPSE_GRID[1])

    model = NoiseModel(sigma=best_sigma, lapse=best_lapse)
    residuals = {int(n): analytic_success(model, int(n)) - float(r)
                 for n, r in observed}
    sse_val = float(sum(v * v for v in residuals.values()))
    if best_sigma <= SIGMA_GRID[0] or best_sigma >= SIGMA_GRID[1]:
        notes.append(f"fitted sigma {best_sigma:.4f} is at the search boundary")
    for note in notes:
        warnings.warn(note, stacklevel=2)
    return FitResult(model=model, residuals=residuals, sse=sse_val,
                     warnings=notes)

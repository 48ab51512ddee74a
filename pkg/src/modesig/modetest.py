"""Two-stage mode significance testing with sample splitting.

Stage 1 finds candidate modes by mean shift on one half of the data (X).
Stage 2, on the other half (Y), bootstraps the KDE Hessian at each fixed
candidate location and certifies a mode when the confidence interval for
the top curvature gamma_1 = -lambda_1 lies strictly above zero.  Testing
k candidates at level 1 - alpha/k each gives family-wise level alpha
(Bonferroni), with k the realized stage-1 count.

Splitting matters: the candidate locations are fixed, not data-dependent,
from the viewpoint of the Y half, so the bootstrap distribution is the
honest sampling distribution of the Hessian at a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .boot import EigenPortrait, bootstrap_hessian_batch, esp_quantile, eigen_rectangles
from .kde import DensityModel, as_points
from .modes import ClusterAssignment, MeanShiftOptions, ModeCandidate, find_modes

__all__ = ["ModeTestConfig", "ModeTestReport", "split", "mode_test_on_split", "run_mode_test"]


@dataclass(frozen=True)
class ModeTestConfig:
    """Parameters of the full test pipeline."""

    h: float
    alpha: float = 0.10
    B: int = 500
    split_seed: int = 0
    boot_seed: int = 0
    mean_shift: MeanShiftOptions = field(default_factory=MeanShiftOptions)

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("alpha must lie in (0, 1)")
        if self.B < 1:
            raise ValueError("B must be >= 1")
        if not (self.h > 0.0 and np.isfinite(self.h)):
            raise ValueError("h must be positive and finite")


@dataclass
class ModeTestReport:
    """Candidates, their portraits, and verdict counts for one run."""

    candidates: list[ModeCandidate]
    portraits: list[EigenPortrait]
    k: int
    significant_count: int
    stage2_gradient_norms: np.ndarray
    assignment: ClusterAssignment | None = None


def split(data, seed: int):
    """Random half split: X gets floor(n/2) points, Y the rest.

    The partition is a seeded uniform permutation; as index sets X and Y
    are disjoint and cover the sample.
    """
    pts = as_points(data)
    n = pts.shape[0]
    if n < 2:
        raise ValueError("need at least 2 points to split")
    perm = np.random.default_rng(seed).permutation(n)
    nx = n // 2
    return pts[np.sort(perm[:nx])], pts[np.sort(perm[nx:])]


def mode_test_on_split(X, Y, cfg: ModeTestConfig) -> ModeTestReport:
    """Run stage 1 on X and stage 2 on Y (the halves are taken as given)."""
    X = as_points(X)
    Y = as_points(Y)
    if X.shape[1] != Y.shape[1]:
        raise ValueError("halves disagree on dimension")

    model_x = DensityModel(X, cfg.h)
    candidates, assignment = find_modes(model_x, mesh=None, opts=cfg.mean_shift)
    k = len(candidates)
    if k == 0:
        return ModeTestReport(
            candidates=(), portraits=(), k=0, significant_count=0,
            stage2_gradient_norms=np.zeros(0), assignment=assignment,
        )

    model_y = DensityModel(Y, cfg.h)
    locations = [c.location for c in candidates]
    grad_norms = np.array(
        [float(np.linalg.norm(model_y.gradient(loc))) for loc in locations]
    )

    level_alpha = cfg.alpha / k
    draws_per_mode = bootstrap_hessian_batch(Y, cfg.h, locations, cfg.B, cfg.boot_seed)
    portraits: list[EigenPortrait] = []
    for cand, draws in zip(candidates, draws_per_mode):
        cs = esp_quantile(draws, level_alpha)
        portraits.append(replace(eigen_rectangles(draws, cs), mode=cand))

    return ModeTestReport(
        candidates=tuple(candidates),
        portraits=tuple(portraits),
        k=k,
        significant_count=sum(p.significant for p in portraits),
        stage2_gradient_norms=grad_norms,
        assignment=assignment,
    )


def run_mode_test(data, cfg: ModeTestConfig) -> ModeTestReport:
    """Split the data and run both stages."""
    pts = as_points(data)
    if pts.shape[0] < 4:
        raise ValueError("need at least 4 points for a meaningful split")
    X, Y = split(pts, cfg.split_seed)
    return mode_test_on_split(X, Y, cfg)

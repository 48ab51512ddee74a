"""Bootstrap confidence sets for Hessian eigenvalues at a fixed point.

The resampled quantity is the KDE Hessian at a *fixed* query point (the
candidate mode found on the other half of the data).  Each replicate
draws n points with replacement, recomputes the Hessian, and records its
sorted eigenvalues together with their elementary symmetric polynomials
(ESP).  Inference runs on the ESP scale — an L-infinity hypercube around
the point estimate — and eigenvalue intervals are read off the retained
replicates, which sidesteps the non-smoothness of eigenvalues at ties.

Replicate b draws from ``default_rng([seed, b])``, so draws are
reproducible and independent of any execution schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kde import as_points
from .modes import ModeCandidate

__all__ = [
    "BootstrapDraws",
    "EspConfidenceSet",
    "EigenPortrait",
    "bootstrap_hessian",
    "esp_quantile",
    "eigen_rectangles",
    "test_significance",
]


@dataclass(frozen=True)
class BootstrapDraws:
    """B resampled eigenvalue/ESP rows plus the full-sample point estimate."""

    lambda_star: np.ndarray  # (B, d), each row sorted descending
    s_star: np.ndarray  # (B, d), row-wise ESP of lambda_star
    lambda_hat: np.ndarray  # (d,)
    s_hat: np.ndarray  # (d,)

    @property
    def B(self) -> int:
        return self.lambda_star.shape[0]


@dataclass(frozen=True)
class EspConfidenceSet:
    """Hypercube { s : ||s - center||_inf <= q } at confidence `level`."""

    center: np.ndarray
    q: float
    level: float


@dataclass(frozen=True)
class EigenPortrait:
    """Per-eigenvalue confidence rectangles for gamma = -lambda at one mode.

    rectangles[s] = [lo, hi] bounds gamma_{s+1}; c_interval is rectangles[0]
    (the top eigenvalue), and significant means its lower end is strictly
    positive — the curvature certificate for a true mode.
    """

    rectangles: np.ndarray  # (d, 2)
    c_interval: np.ndarray  # (2,)
    significant: bool
    level: float
    mode: ModeCandidate | None = None


# --- resampling core ---------------------------------------------------------

def _resample_counts(n: int, B: int, seed: int) -> np.ndarray:
    """(B, n) multiplicity matrix: row b counts each data index in resample b."""
    counts = np.empty((B, n))
    for b in range(B):
        idx = np.random.default_rng([seed, b]).integers(0, n, size=n)
        counts[b] = np.bincount(idx, minlength=n)
    return counts


def _hessian_vech_terms(points: np.ndarray, h: float, at: np.ndarray):
    """Per-point Hessian contributions, flattened to lower-triangle columns.

    Returns (terms, (rows, cols), scale) with terms of shape (n, d(d+1)/2):
    the Hessian of a weighted resample is scale * (counts @ terms), unpacked
    symmetrically via the (rows, cols) index pair.
    """
    n, d = points.shape
    u = (at[None, :] - points) / h
    e = np.exp(-0.5 * np.sum(u**2, axis=1))
    rows, cols = np.tril_indices(d)
    terms = u[:, rows] * u[:, cols] * e[:, None]
    terms[:, rows == cols] -= e[:, None]
    scale = (2.0 * np.pi) ** (-0.5 * d) / (n * h ** (d + 2))
    return terms, (rows, cols), scale


def _eigs_from_counts(counts: np.ndarray, terms, index_pair, scale: float, d: int):
    """Sorted-descending eigenvalues (B, d) of the count-weighted Hessians."""
    vech = scale * (counts @ terms)  # (B, q)
    B = vech.shape[0]
    rows, cols = index_pair
    mats = np.zeros((B, d, d))
    mats[:, rows, cols] = vech
    mats[:, cols, rows] = vech
    lam = np.linalg.eigvalsh(mats)  # ascending
    return lam[:, ::-1]


def _esp_rows(lam: np.ndarray) -> np.ndarray:
    """Row-wise ESP via the same Vieta update order as esp_forward."""
    B, d = lam.shape
    s = np.zeros((B, d + 1))
    s[:, 0] = 1.0
    for i in range(d):
        s[:, 1 : i + 2] += lam[:, i : i + 1] * s[:, 0 : i + 1]
    return s[:, 1:]


def bootstrap_hessian(Y, h: float, point, B: int, seed: int) -> BootstrapDraws:
    """Bootstrap the KDE Hessian of Y at a fixed point.

    Parameters
    ----------
    Y : array-like, shape (n, d)
        The inference half of the data; resampling is with replacement
        from these points.
    h : float
        Bandwidth.
    point : array-like, shape (d,)
        Fixed evaluation point (a candidate mode).
    B : int
        Number of bootstrap replicates (>= 1).
    seed : int
        Base seed; replicate b uses the stream keyed by (seed, b).
    """
    draws = bootstrap_hessian_batch(Y, h, [point], B, seed)
    return draws[0]


def bootstrap_hessian_batch(Y, h: float, points, B: int, seed: int) -> list[BootstrapDraws]:
    """bootstrap_hessian at several fixed points, sharing the resamples.

    Each replicate's count vector depends only on (seed, b), so the result
    at every point is identical to a separate bootstrap_hessian call with
    the same seed; batching just avoids regenerating the counts.
    """
    Y = as_points(Y)
    n, d = Y.shape
    if B < 1:
        raise ValueError("B must be >= 1")
    if not (h > 0.0 and np.isfinite(h)):
        raise ValueError("bandwidth must be positive and finite")
    counts = _resample_counts(n, B, seed)
    ones = np.ones((1, n))
    out = []
    for p in points:
        at = np.asarray(p, dtype=np.float64)
        if at.shape != (d,):
            raise ValueError(f"point must have shape ({d},)")
        terms, index_pair, scale = _hessian_vech_terms(Y, h, at)
        lam_star = _eigs_from_counts(counts, terms, index_pair, scale, d)
        lam_hat = _eigs_from_counts(ones, terms, index_pair, scale, d)[0]
        out.append(
            BootstrapDraws(
                lambda_star=lam_star,
                s_star=_esp_rows(lam_star),
                lambda_hat=lam_hat,
                s_hat=_esp_rows(lam_hat[None, :])[0],
            )
        )
    return out


# --- confidence sets ---------------------------------------------------------

def ceil_order_statistic(values: np.ndarray, level: float) -> float:
    """Ascending order statistic at index ceil(B * level), 1-based.

    The epsilon guards binary round-up (100 * 0.95 is 94.999...94 in
    floats); the clip keeps the endpoints lawful for level -> 0 or 1.
    """
    values = np.sort(np.asarray(values, dtype=np.float64))
    B = values.shape[0]
    i = int(np.ceil(B * level - 1e-9))
    return float(values[min(max(i, 1), B) - 1])


def esp_quantile(draws: BootstrapDraws, alpha_over_k: float) -> EspConfidenceSet:
    """Radius of the ESP hypercube: the smallest q with at most an
    alpha_over_k fraction of replicates outside it."""
    if not 0.0 < alpha_over_k < 1.0:
        raise ValueError("alpha_over_k must lie in (0, 1)")
    dist = np.max(np.abs(draws.s_star - draws.s_hat[None, :]), axis=1)
    q = ceil_order_statistic(dist, 1.0 - alpha_over_k)
    return EspConfidenceSet(center=draws.s_hat.copy(), q=q, level=1.0 - alpha_over_k)


def eigen_rectangles(draws: BootstrapDraws, cs: EspConfidenceSet) -> EigenPortrait:
    """Eigenvalue rectangles from the replicates retained by the hypercube.

    J = replicates whose ESP row lies in the hypercube; for each eigen
    index the rectangle spans [min, max] of -lambda over J.  J is never
    empty: the replicate attaining the quantile is itself retained.
    """
    dist = np.max(np.abs(draws.s_star - cs.center[None, :]), axis=1)
    J = dist <= cs.q
    if not np.any(J):
        raise AssertionError("retained set J is empty; quantile convention violated")
    gamma = -draws.lambda_star[J]
    rectangles = np.stack([gamma.min(axis=0), gamma.max(axis=0)], axis=1)
    c_interval = rectangles[0].copy()
    return EigenPortrait(
        rectangles=rectangles,
        c_interval=c_interval,
        significant=test_significance(c_interval),
        level=cs.level,
    )


def test_significance(interval) -> bool:
    """A mode certifies as significant iff its gamma_1 interval is strictly positive."""
    lo = float(np.asarray(interval, dtype=np.float64)[0])
    return lo > 0.0

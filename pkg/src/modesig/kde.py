"""Gaussian kernel density estimation with exact first and second derivatives.

The estimator is the standard multivariate KDE with a single scalar
bandwidth ``h`` (isotropic Gaussian kernel, covariance ``h**2 * I``):

    p(x) = (1/n) * sum_i (2*pi)**(-d/2) * h**(-d) * exp(-||x - X_i||**2 / (2 h**2))

Because the kernel is Gaussian, gradient and Hessian are available in
closed form from the same exponential weights, so a single pass over the
data yields density, gradient and Hessian together.  Evaluation is exact
O(n) per query point; no tree or binning approximation is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DensityModel", "HessianEval", "as_points"]


# --- input validation -------------------------------------------------------

def as_points(data) -> np.ndarray:
    """Coerce array-like data to a float (n, d) matrix.

    1-d input is treated as n scalar observations, i.e. shape (n, 1).
    Raises ValueError for empty input or non-finite coordinates.
    """
    pts = np.asarray(data, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2:
        raise ValueError(f"expected a 2-d point matrix, got ndim={pts.ndim}")
    if pts.shape[0] < 1 or pts.shape[1] < 1:
        raise ValueError(f"need at least one point and one coordinate, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("data contains non-finite coordinates")
    return pts


def _as_query(x, d: int) -> tuple[np.ndarray, bool]:
    """Coerce a query to (m, d); second value says whether input was a single point."""
    q = np.asarray(x, dtype=np.float64)
    single = q.ndim == 1
    if single:
        q = q[None, :]
    if q.ndim != 2 or q.shape[1] != d:
        raise ValueError(f"query dimension mismatch: expected d={d}, got shape {np.shape(x)}")
    if not np.all(np.isfinite(q)):
        raise ValueError("query contains non-finite coordinates")
    return q, single


# --- model ------------------------------------------------------------------

@dataclass(frozen=True)
class HessianEval:
    """Density curvature at one point: gradient vector and symmetrized Hessian."""

    point: np.ndarray
    gradient: np.ndarray
    hessian: np.ndarray


class DensityModel:
    """Kernel density estimate over a fixed sample, with derivatives.

    Parameters
    ----------
    points : array-like, shape (n, d)
        The sample.  A 1-d array is read as n univariate observations.
    h : float
        Bandwidth, in the same units as the coordinates.  Must be positive
        and finite.

    Notes
    -----
    The model is immutable after construction; all evaluations are pure
    functions of (points, h, query) and safe to call concurrently.
    """

    def __init__(self, points, h: float):
        pts = as_points(points)
        h = float(h)
        if not (h > 0.0 and np.isfinite(h)):
            raise ValueError(f"bandwidth must be positive and finite, got {h}")
        self.points = pts
        self.points.setflags(write=False)
        self.n, self.d = pts.shape
        self.h = h
        # (2*pi)**(-d/2) / (n * h**d): the shared normalizing constant.
        self._norm = (2.0 * np.pi) ** (-0.5 * self.d) / (self.n * h**self.d)

    # -- kernel weights shared by every evaluation --

    def _exp_weights(self, q: np.ndarray) -> np.ndarray:
        """exp(-||q_j - X_i||^2 / (2 h^2)) as an (m, n) matrix."""
        # Squared distances via the expansion ||q||^2 + ||x||^2 - 2 q.x; the
        # matmul keeps the reduction order fixed regardless of thread count.
        sq = (
            np.sum(q**2, axis=1)[:, None]
            + np.sum(self.points**2, axis=1)[None, :]
            - 2.0 * (q @ self.points.T)
        )
        np.maximum(sq, 0.0, out=sq)  # clip tiny negatives from cancellation
        return np.exp(-sq / (2.0 * self.h**2))

    # -- evaluations --

    def density(self, x):
        """Density at x: scalar for a (d,) query, (m,) array for (m, d)."""
        q, single = _as_query(x, self.d)
        vals = self._norm * np.sum(self._exp_weights(q), axis=1)
        return float(vals[0]) if single else vals

    def gradient(self, x):
        """Gradient of the density at x: (d,) for a single query, else (m, d)."""
        q, single = _as_query(x, self.d)
        w = self._exp_weights(q)  # (m, n)
        # grad p(x) = -norm/h^2 * sum_i w_i * (x - X_i)
        #           = -norm/h^2 * (x * sum_i w_i - w @ X)
        g = -(self._norm / self.h**2) * (q * np.sum(w, axis=1)[:, None] - w @ self.points)
        return g[0] if single else g

    def hessian(self, x) -> HessianEval:
        """Gradient and Hessian at a single point x, Hessian exactly symmetric."""
        q, single = _as_query(x, self.d)
        if not single:
            raise ValueError("hessian evaluates one point at a time")
        u = (q[0][None, :] - self.points) / self.h  # (n, d)
        e = np.exp(-0.5 * np.sum(u**2, axis=1))  # (n,)
        grad = -(self._norm / self.h) * (e @ u)
        # H = norm/h^2 * sum_i e_i * (u_i u_i^T - I)
        hess = (self._norm / self.h**2) * ((u * e[:, None]).T @ u - np.sum(e) * np.eye(self.d))
        hess = 0.5 * (hess + hess.T)
        if not np.all(np.isfinite(hess)):
            raise ValueError("non-finite Hessian")
        return HessianEval(point=q[0].copy(), gradient=grad, hessian=hess)

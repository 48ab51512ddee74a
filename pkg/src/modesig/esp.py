"""Eigenvalues of small symmetric matrices and the elementary-symmetric-polynomial map.

The map ``w: (lambda_1 >= ... >= lambda_d) -> (s_1, ..., s_d)`` sends sorted
eigenvalues to the elementary symmetric polynomials, i.e. the (sign-adjusted)
coefficients of the characteristic polynomial.  Unlike the eigenvalues
themselves, s is a smooth function of the matrix even at repeated roots,
which is what makes it bootstrappable.  The inverse map is only needed as
an oracle and is computed by polynomial root finding.
"""

from __future__ import annotations

import numpy as np

__all__ = ["sym_eigenvalues", "esp_forward", "esp_inverse", "all_negative"]

MAX_DIM = 32
SYMMETRY_TOL = 1e-10


def sym_eigenvalues(a) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted descending.

    The input must be symmetric to within 1e-10 (absolute, relative to scale);
    it is symmetrized before the solve so the result is exactly that of
    (A + A.T)/2.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds the supported maximum {MAX_DIM}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    vals = np.linalg.eigvalsh(0.5 * (a + a.T))
    return vals[::-1].copy()


def esp_forward(lam) -> np.ndarray:
    """Elementary symmetric polynomials (s_1, ..., s_d) of the entries of lam.

    Computed by the Vieta recurrence: multiply out prod_i (t + lam_i) one
    root at a time, updating coefficients in place from high index down.
    Stable, O(d^2), and independent of input order.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    if lam.ndim != 1:
        raise ValueError("lam must be a vector")
    if not np.all(np.isfinite(lam)):
        raise ValueError("lam contains non-finite entries")
    d = lam.shape[0]
    s = np.zeros(d + 1)
    s[0] = 1.0
    for i, x in enumerate(lam):
        # e_k <- e_k + x * e_{k-1} for all k at once; the RHS product is a
        # temporary, so the overlapping slices read pre-update values.
        s[1 : i + 2] += x * s[0 : i + 1]
    return s[1:]


def esp_inverse(s) -> np.ndarray:
    """Recover sorted-descending real roots from their ESP vector.

    Solves the monic polynomial t^d - s_1 t^{d-1} + s_2 t^{d-2} - ... = 0
    via the companion matrix.  If any root's imaginary part exceeds
    1e-6 * (1 + max |root|) the input is outside the image of esp_forward
    on real vectors and a ValueError is raised.
    """
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    if s.ndim != 1 or s.shape[0] < 1 or not np.all(np.isfinite(s)):
        raise ValueError("s must be a finite, nonempty vector")
    d = s.shape[0]
    coeffs = np.empty(d + 1)
    coeffs[0] = 1.0
    signs = -np.ones(d)
    signs[1::2] = 1.0  # (-1)^k for k = 1..d
    coeffs[1:] = signs * s
    roots = np.roots(coeffs)
    tol = 1e-6 * (1.0 + float(np.max(np.abs(roots))))
    if np.max(np.abs(roots.imag)) > tol:
        raise ValueError("ESP vector has complex roots: not in the image of esp_forward")
    return np.sort(roots.real)[::-1]


def all_negative(s) -> bool:
    """True iff every root of the ESP vector s is negative.

    Uses the sign test (-1)^k s_k > 0 for all k; no root finding involved.
    """
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    signs = -np.ones(s.shape[0])
    signs[1::2] = 1.0
    return bool(np.all(signs * s > 0.0))

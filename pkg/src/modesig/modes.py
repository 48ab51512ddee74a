"""Mode seeking by mean shift, with deduplication and basin labeling.

Each starting point is iterated through the kernel-weighted mean of the
data until the step length drops below ``step_tol``.  With a Gaussian
kernel the update satisfies

    grad p(a) = p(a) / h**2 * (m(a) - a),

so a trajectory is stopped *at the point where the small step was
measured*: the returned location then has gradient norm below
``p(a) * step_tol / h**2`` by construction.  Converged endpoints are
merged by single linkage at ``merge_tol`` and each cluster is represented
by its highest-density endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kde import DensityModel, as_points

__all__ = ["MeanShiftOptions", "ModeCandidate", "ClusterAssignment", "mean_shift_step", "find_modes"]

# Cap on per-iteration weight-matrix rows, to bound memory at large meshes.
_CHUNK_ROWS = 2048


@dataclass(frozen=True)
class MeanShiftOptions:
    """Convergence and deduplication thresholds for find_modes.

    Any threshold left as None is resolved against the model bandwidth:
    step_tol = 1e-7 * h, merge_tol = 1e-2 * h, and grad_tol =
    1e-6 * peak_density / h (peak taken over the found candidates), so
    behavior does not depend on the units of the data.
    """

    max_iter: int = 500
    step_tol: float | None = None
    merge_tol: float | None = None
    grad_tol: float | None = None

    def resolved(self, h: float) -> tuple[int, float, float]:
        step = 1e-7 * h if self.step_tol is None else float(self.step_tol)
        merge = 1e-2 * h if self.merge_tol is None else float(self.merge_tol)
        if self.max_iter < 1 or step <= 0 or merge <= 0:
            raise ValueError("max_iter must be >= 1 and tolerances positive")
        return int(self.max_iter), step, merge


@dataclass(frozen=True)
class ModeCandidate:
    """A located mode: position, density there, and how it was reached."""

    location: np.ndarray
    density_value: float
    basin_size: int
    iterations: int


@dataclass
class ClusterAssignment:
    """Per-mesh-point outcome of find_modes.

    labels[i] indexes the candidate list (nearest candidate for trajectories
    that ran out of iterations; -1 only if no trajectory converged at all).
    converged[i] says whether trajectory i met the step tolerance; only
    converged trajectories count toward basin sizes.  diagnostics carries
    grad_norms / grad_tol for the candidates, the worst per-step density
    change (ascent check), and the non-converged count.
    """

    labels: np.ndarray
    converged: np.ndarray
    diagnostics: dict = field(default_factory=dict)


def mean_shift_step(model: DensityModel, a) -> np.ndarray:
    """One mean-shift update: the kernel-weighted mean of the data around a."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 1 or a.shape[0] != model.d:
        raise ValueError(f"expected a point of dimension {model.d}")
    w = model._exp_weights(a[None, :])[0]
    total = float(np.sum(w))
    if total <= 0.0:
        raise ValueError("empty neighborhood: all kernel weights underflowed to zero")
    return (w @ model.points) / total


def find_modes(
    model: DensityModel,
    mesh=None,
    opts: MeanShiftOptions | None = None,
) -> tuple[list[ModeCandidate], ClusterAssignment]:
    """Run mean shift from every mesh point and merge the destinations.

    Parameters
    ----------
    model : DensityModel
        The density whose modes are sought.
    mesh : array-like, shape (m, d), optional
        Starting points; defaults to the model's own data points.
    opts : MeanShiftOptions, optional
        Thresholds; defaults scale with the bandwidth.

    Returns
    -------
    (candidates, assignment)
        Candidates sorted by descending density value; assignment labels
        every mesh point and flags non-converged trajectories.
    """
    opts = opts or MeanShiftOptions()
    max_iter, step_tol, merge_tol = opts.resolved(model.h)
    mesh = model.points if mesh is None else as_points(mesh)
    if mesh.shape[1] != model.d:
        raise ValueError("mesh dimension does not match the model")
    m = mesh.shape[0]

    current = mesh.copy()
    endpoint = mesh.copy()
    end_density = np.zeros(m)
    iterations = np.zeros(m, dtype=np.int64)
    converged = np.zeros(m, dtype=bool)
    prev_density = np.full(m, -np.inf)
    min_ascent_delta = np.inf  # most negative observed p(a_{t+1}) - p(a_t)

    active = np.arange(m)
    for it in range(max_iter + 1):
        if active.size == 0:
            break
        shifted = np.empty((active.size, model.d))
        wsum = np.empty(active.size)
        for lo in range(0, active.size, _CHUNK_ROWS):
            rows = active[lo : lo + _CHUNK_ROWS]
            w = model._exp_weights(current[rows])
            ws = np.sum(w, axis=1)
            wsum[lo : lo + len(rows)] = ws
            safe = np.maximum(ws, 1e-300)
            shifted[lo : lo + len(rows)] = (w @ model.points) / safe[:, None]

        density = model._norm * wsum
        delta_density = density - prev_density[active]
        finite_prev = np.isfinite(prev_density[active])
        if np.any(finite_prev):
            min_ascent_delta = min(min_ascent_delta, float(np.min(delta_density[finite_prev])))
        prev_density[active] = density

        dead = wsum <= 0.0  # absurdly far starts: no neighborhood at all
        step = np.linalg.norm(shifted - current[active], axis=1)
        done = (step < step_tol) & ~dead
        if it == max_iter:  # final sweep only measures convergence, takes no step
            done_rows = active[done]
            endpoint[done_rows] = current[done_rows]
            end_density[done_rows] = density[done]
            iterations[done_rows] = it
            converged[done_rows] = True
            rest = active[~done]
            endpoint[rest] = current[rest]
            end_density[rest] = density[~done]
            break
        finish = done | dead
        fin_rows = active[finish]
        endpoint[fin_rows] = current[fin_rows]
        end_density[fin_rows] = density[finish]
        iterations[fin_rows] = it
        converged[fin_rows] = done[finish]
        keep = ~finish
        rows = active[keep]
        current[rows] = shifted[keep]
        iterations[rows] = it + 1
        active = rows

    return _merge_candidates(
        model, mesh, endpoint, end_density, iterations, converged, merge_tol, opts, min_ascent_delta
    )


def _merge_candidates(model, mesh, endpoint, end_density, iterations, converged,
                      merge_tol, opts, min_ascent_delta):
    """Single-linkage dedup of converged endpoints; build candidates and labels."""
    m = mesh.shape[0]
    conv_idx = np.flatnonzero(converged)
    if conv_idx.size == 0:
        assignment = ClusterAssignment(
            labels=np.full(m, -1, dtype=np.int64),
            converged=converged,
            diagnostics={
                "n_unconverged": int(m),
                "min_ascent_delta": min_ascent_delta,
                "grad_norms": np.zeros(0),
                "grad_tol": np.nan,
            },
        )
        return [], assignment

    pts = endpoint[conv_idx]
    dens = end_density[conv_idx]

    # Endpoints of one basin agree to ~step_tol; collapse on a grid far finer
    # than merge_tol, then do exact single linkage on the few survivors.
    pitch = merge_tol * 1e-3
    keys = np.round(pts / pitch).astype(np.int64)
    _, group_of, counts = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
    n_groups = counts.shape[0]

    # Representative endpoint per collapsed group: its highest-density member.
    order = np.lexsort((np.arange(conv_idx.size), -dens))  # density desc, stable
    rep_member = np.full(n_groups, -1, dtype=np.int64)
    for i in order:
        g = group_of[i]
        if rep_member[g] < 0:
            rep_member[g] = i
    rep_pts = pts[rep_member]

    # Single-linkage union-find over the collapsed representatives.
    parent = np.arange(n_groups)

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    diff = rep_pts[:, None, :] - rep_pts[None, :, :]
    close = np.sqrt(np.sum(diff**2, axis=2)) < merge_tol
    for i in range(n_groups):
        for j in range(i + 1, n_groups):
            if close[i, j]:
                ri, rj = root(i), root(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    cluster_of_group = np.array([root(g) for g in range(n_groups)])

    # Per cluster: representative = highest-density member endpoint.
    cluster_ids = np.unique(cluster_of_group)
    cluster_index = {c: i for i, c in enumerate(cluster_ids)}
    k = cluster_ids.shape[0]
    best_density = np.full(k, -np.inf)
    best_member = np.zeros(k, dtype=np.int64)
    basin = np.zeros(k, dtype=np.int64)
    max_iters = np.zeros(k, dtype=np.int64)
    member_cluster = np.array([cluster_index[cluster_of_group[g]] for g in group_of])
    for i in order[::-1]:  # ascending density; last write wins -> max density, earliest index on ties
        c = member_cluster[i]
        best_density[c] = dens[i]
        best_member[c] = i
    np.add.at(basin, member_cluster, 1)
    np.maximum.at(max_iters, member_cluster, iterations[conv_idx])

    # Sort candidates by descending density (stable, so ties keep cluster order).
    sort = np.argsort(-best_density, kind="stable")
    rank = np.empty(k, dtype=np.int64)
    rank[sort] = np.arange(k)

    candidates = []
    locations = np.empty((k, model.d))
    for new, old in enumerate(sort):
        loc = pts[best_member[old]].copy()
        loc.setflags(write=False)
        locations[new] = loc
        candidates.append(
            ModeCandidate(
                location=loc,
                density_value=float(best_density[old]),
                basin_size=int(basin[old]),
                iterations=int(max_iters[old]),
            )
        )

    labels = np.full(m, -1, dtype=np.int64)
    labels[conv_idx] = rank[member_cluster]
    stray = np.flatnonzero(~converged)
    if stray.size:
        # label by nearest candidate to the last iterate; excluded from basins
        d2 = (
            np.sum(endpoint[stray] ** 2, axis=1)[:, None]
            + np.sum(locations**2, axis=1)[None, :]
            - 2.0 * endpoint[stray] @ locations.T
        )
        labels[stray] = np.argmin(d2, axis=1)

    peak = float(np.max(best_density))
    grad_tol = 1e-6 * peak / model.h if opts.grad_tol is None else float(opts.grad_tol)
    grad_norms = np.array(
        [float(np.linalg.norm(model.gradient(c.location))) for c in candidates]
    )
    assignment = ClusterAssignment(
        labels=labels,
        converged=converged,
        diagnostics={
            "n_unconverged": int(stray.size),
            "min_ascent_delta": min_ascent_delta,
            "grad_norms": grad_norms,
            "grad_tol": grad_tol,
        },
    )
    return candidates, assignment

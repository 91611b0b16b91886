"""Extremum search for the assisted average entanglement entropy.

The objective, for a pivot qubit measured in the basis defined by Bloch
angles (theta, phi), is the probability-weighted average entanglement
entropy of the two conditional pair states.  It is smooth and lives on a
hemisphere (antipodal directions give the same basis), so the search is a
coarse grid followed by derivative-free simplex refinement
(reflection-expansion-contraction) from the best grid cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import EMPTY_BRANCH_TOL

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class OptimizerSettings:
    grid_theta: int = 64
    grid_phi: int = 64
    refine_starts: int = 5
    max_iterations: int = 500
    diameter_tol: float = 1e-7

    def __post_init__(self):
        if self.grid_theta < 2 or self.grid_phi < 1 or self.refine_starts < 1:
            raise ValueError("grid must have at least 2x1 cells and 1 refinement start")


DEFAULT_SETTINGS = OptimizerSettings()


@dataclass(frozen=True)
class ExtremumResult:
    """One located extremum: value in bits plus the achieving Bloch angles."""

    value: float
    theta: float
    phi: float
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class ProjectiveExtrema:
    maximum: ExtremumResult
    minimum: ExtremumResult
    evaluations: int


def pair_matrix(amplitudes: np.ndarray, pivot_axis: int) -> np.ndarray:
    """Reshape a tripartite vector to (pivot, pair) with the pair in C,A,B order."""
    t = np.asarray(amplitudes, dtype=complex).reshape(2, 2, 2)
    return np.moveaxis(t, pivot_axis, 0).reshape(2, 4)


@lru_cache(maxsize=8)
def _grid_bases(n_theta: int, n_phi: int):
    thetas = np.linspace(0.0, np.pi / 2, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    c, s = np.cos(tt / 2), np.sin(tt / 2)
    eip = np.exp(1j * pp)
    # conjugated basis rows, ready to contract against the pivot axis
    e0c = np.stack([c, s * eip.conj()], axis=-1).reshape(-1, 2)
    e1c = np.stack([-s * eip, c.astype(complex)], axis=-1).reshape(-1, 2)
    for arr in (e0c, e1c):
        arr.flags.writeable = False
    return thetas, phis, e0c, e1c


def _binary_entropy_vec(x: np.ndarray) -> np.ndarray:
    h = np.zeros_like(x)
    inner = (x > 0.0) & (x < 1.0)
    xi = x[inner]
    h[inner] = -(xi * np.log2(xi) + (1.0 - xi) * np.log2(1.0 - xi))
    return h


def grid_objective(m: np.ndarray, settings: OptimizerSettings):
    """Objective on the whole (theta, phi) grid at once; returns (thetas, phis, values)."""
    thetas, phis, e0c, e1c = _grid_bases(settings.grid_theta, settings.grid_phi)
    values = np.zeros(e0c.shape[0])
    for ec in (e0c, e1c):
        w = ec @ m
        p = np.einsum("ij,ij->i", w, w.conj()).real
        det = w[:, 0] * w[:, 3] - w[:, 1] * w[:, 2]
        safe_p = np.maximum(p, EMPTY_BRANCH_TOL)
        conc = np.clip(2.0 * np.abs(det) / safe_p, 0.0, 1.0)
        x = 0.5 * (1.0 + np.sqrt(1.0 - conc * conc))
        values += np.where(p < EMPTY_BRANCH_TOL, 0.0, p * _binary_entropy_vec(x))
    return thetas, phis, values


def scalar_objective(m: np.ndarray):
    """Closure computing the average entropy at one (theta, phi); plain-float hot path."""
    m00, m01, m02, m03 = (complex(v) for v in m[0])
    m10, m11, m12, m13 = (complex(v) for v in m[1])

    def objective(theta: float, phi: float) -> float:
        c = math.cos(theta / 2)
        s = math.sin(theta / 2)
        emip = complex(math.cos(phi), -math.sin(phi))
        f0 = s * emip  # conj of the |1> coefficient of |e>
        g0 = -s * emip.conjugate()  # conj of the |0> coefficient of |e_perp>
        total = 0.0
        for a0, a1 in ((c, f0), (g0, c)):
            w0 = a0 * m00 + a1 * m10
            w1 = a0 * m01 + a1 * m11
            w2 = a0 * m02 + a1 * m12
            w3 = a0 * m03 + a1 * m13
            p = (
                w0.real * w0.real + w0.imag * w0.imag
                + w1.real * w1.real + w1.imag * w1.imag
                + w2.real * w2.real + w2.imag * w2.imag
                + w3.real * w3.real + w3.imag * w3.imag
            )
            if p < EMPTY_BRANCH_TOL:
                continue
            det = w0 * w3 - w1 * w2
            conc = 2.0 * abs(det) / p
            if conc > 1.0:
                conc = 1.0
            x = 0.5 * (1.0 + math.sqrt(1.0 - conc * conc))
            if 0.0 < x < 1.0:
                total += p * (-(x * math.log(x) + (1.0 - x) * math.log(1.0 - x)) / _LN2)
        return total

    return objective


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Fold arbitrary angles onto the hemisphere theta in [0, pi/2], phi in [0, 2pi)."""
    nx = math.sin(theta) * math.cos(phi)
    ny = math.sin(theta) * math.sin(phi)
    nz = math.cos(theta)
    if nz < 0.0 or (abs(nz) < 1e-15 and ny < 0.0):
        nx, ny, nz = -nx, -ny, -nz
    r = math.hypot(nx, ny)
    theta_c = math.atan2(r, nz)
    if r < 1e-15:
        return 0.0, 0.0
    return theta_c, math.atan2(ny, nx) % (2 * math.pi)


def _nelder_mead(fn, x0, steps, max_iterations, diameter_tol):
    """Minimize fn over R^2; returns (x_best, f_best, evaluations, converged)."""
    simplex = [np.array(x0, dtype=float)]
    for i, st in enumerate(steps):
        v = np.array(x0, dtype=float)
        v[i] += st
        simplex.append(v)
    values = [fn(*v) for v in simplex]
    evals = len(simplex)
    converged = False
    for _ in range(max_iterations):
        order = sorted(range(3), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        diameter = max(
            np.linalg.norm(simplex[0] - simplex[1]),
            np.linalg.norm(simplex[0] - simplex[2]),
            np.linalg.norm(simplex[1] - simplex[2]),
        )
        if diameter < diameter_tol:
            converged = True
            break
        centroid = (simplex[0] + simplex[1]) / 2
        reflected = centroid + (centroid - simplex[2])
        f_r = fn(*reflected)
        evals += 1
        if f_r < values[0]:
            expanded = centroid + 2.0 * (reflected - centroid)
            f_e = fn(*expanded)
            evals += 1
            if f_e < f_r:
                simplex[2], values[2] = expanded, f_e
            else:
                simplex[2], values[2] = reflected, f_r
        elif f_r < values[1]:
            simplex[2], values[2] = reflected, f_r
        else:
            contracted = centroid + 0.5 * (simplex[2] - centroid)
            f_c = fn(*contracted)
            evals += 1
            if f_c < values[2]:
                simplex[2], values[2] = contracted, f_c
            else:
                for i in (1, 2):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = fn(*simplex[i])
                evals += 2
    best = int(np.argmin(values))
    return simplex[best], values[best], evals, converged


def projective_extrema(
    amplitudes: np.ndarray,
    pivot_axis: int,
    settings: OptimizerSettings = DEFAULT_SETTINGS,
) -> ProjectiveExtrema:
    """Locate both the maximum and the minimum of the assisted average entropy.

    One shared grid pass seeds simplex refinements from the best
    `refine_starts` cells of each extremum; the returned evaluation count
    covers the grid plus all refinements.  Deterministic: ties on the grid
    break toward the smaller flat index (so exact sigma_z / sigma_x hits are
    reported at their canonical angles).
    """
    m = pair_matrix(amplitudes, pivot_axis)
    thetas, phis, values = grid_objective(m, settings)
    objective = scalar_objective(m)
    evals = values.size
    theta_step = thetas[1] - thetas[0]
    phi_step = phis[1] - phis[0] if len(phis) > 1 else np.pi / settings.grid_theta

    results = {}
    for mode, sign in (("max", -1.0), ("min", 1.0)):
        order = np.argsort(sign * values, kind="stable")[: settings.refine_starts]
        best_val = values[order[0]]
        best_angles = (float(thetas[order[0] // len(phis)]), float(phis[order[0] % len(phis)]))
        converged = True
        flat = np.max(values) - np.min(values) < 1e-12
        if not flat:
            for idx in order:
                t0 = float(thetas[idx // len(phis)])
                p0 = float(phis[idx % len(phis)])
                fn = (lambda t, p: sign * objective(t, p))
                x, f, used, ok = _nelder_mead(
                    fn,
                    (t0, p0),
                    (theta_step, phi_step),
                    settings.max_iterations,
                    settings.diameter_tol,
                )
                evals += used
                converged = converged and ok
                candidate = -f if sign < 0 else f
                # strict improvement only, so grid-exact optima keep their angles
                if (candidate > best_val) if sign < 0 else (candidate < best_val):
                    best_val = candidate
                    best_angles = (float(x[0]), float(x[1]))
        theta_c, phi_c = canonical_angles(*best_angles)
        results[mode] = ExtremumResult(
            value=float(best_val),
            theta=theta_c,
            phi=phi_c,
            evaluations=evals,
            converged=converged,
        )
    return ProjectiveExtrema(maximum=results["max"], minimum=results["min"], evaluations=evals)

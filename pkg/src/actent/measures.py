"""Entanglement quantities for pure three-qubit states and two-qubit mixtures.

All entropies are in bits (log base 2, with 0 log 0 = 0).  The assisted
quantities optimize over two-outcome projective measurements on the
assisting qubit; the formation entanglement uses the spin-flip closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AXIS,
    DEFAULT_RANK_TOL,
    DensityMatrix,
    Ensemble,
    PureTripartiteState,
    StateValidationError,
    SUBSYSTEMS,
    numerical_rank,
    partial_trace,
    von_neumann_entropy,
)
from .optimize import (
    DEFAULT_SETTINGS,
    ExtremumResult,
    OptimizerSettings,
    projective_extrema,
)

TANGLE_CLAMP_TOL = 1e-8
DELTA_S_FLOOR = -1e-9


class MonogamyViolationError(RuntimeError):
    """Residual tangle below the numerical floor; indicates an implementation bug."""


def entropy_term(x: float) -> float:
    """-x log2 x, the building block shared by all closed-form expressions."""
    if x <= 0.0:
        return 0.0
    return -x * math.log2(x)


def binary_entropy(x: float) -> float:
    x = min(max(x, 0.0), 1.0)
    return entropy_term(x) + entropy_term(1.0 - x)


def pair_entanglement_entropy(vec4: np.ndarray) -> float:
    """Entanglement entropy of a normalized two-qubit pure state."""
    v = np.asarray(vec4, dtype=complex).reshape(2, 2)
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    conc = min(2.0 * abs(det), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - conc * conc))))


def ensemble_average_entropy(ensemble: Ensemble) -> float:
    """Probability-weighted entanglement entropy of an ensemble of pure pair states."""
    total = 0.0
    for p, member in ensemble.members:
        if isinstance(member, DensityMatrix):
            raise StateValidationError("average entropy is defined over pure-state decompositions")
        if p == 0.0:
            continue
        total += p * pair_entanglement_entropy(member)
    return total


_SY_SY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def concurrence(rho) -> float:
    """Two-qubit concurrence max(0, mu1 - mu2 - mu3 - mu4).

    The mu_i are the decreasing square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed here as the singular values of
    the symmetric matrix v_i^T (sy x sy) v_j over subnormalized eigenvectors
    of rho; this avoids the square-root precision loss of the direct
    non-Hermitian eigenvalue route near zero.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if rho.dim != 4:
        raise StateValidationError("concurrence needs a two-qubit density matrix")
    eigs, vecs = np.linalg.eigh(rho.matrix)
    # sqrt turns eigensolver noise at 1e-16 into 1e-8 rows of t; drop it
    eigs = np.where(eigs < 1e-14, 0.0, eigs)
    sub = vecs * np.sqrt(eigs)
    t = sub.T @ _SY_SY @ sub
    mu = np.linalg.svd(t, compute_uv=False)
    return max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3]))


def eof_wootters(rho) -> float:
    """Formation entanglement h((1 + sqrt(1 - C^2)) / 2) of a two-qubit state."""
    c = concurrence(rho)
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c))))


def assisted_entropy_extremum(
    state: PureTripartiteState,
    assisting: str = "C",
    mode: str = "max",
    settings: OptimizerSettings = DEFAULT_SETTINGS,
) -> ExtremumResult:
    """Extremum of the average pair entropy over projective bases on one qubit.

    Returns the extremal value in bits and the achieving Bloch angles
    (hemisphere convention).  Deterministic for fixed settings.
    """
    if assisting not in SUBSYSTEMS:
        raise StateValidationError(f"unknown subsystem {assisting!r}")
    if mode not in ("max", "min"):
        raise StateValidationError("mode must be 'max' or 'min'")
    extrema = projective_extrema(state.amplitudes, AXIS[assisting], settings)
    return extrema.maximum if mode == "max" else extrema.minimum


@dataclass(frozen=True)
class W2Analytic:
    """Closed-form pair measures of the two-excitation-parameter W family.

    The two arguments are the excitation amplitudes of the kept pair of
    qubits; the assisting qubit carries the dependent amplitude
    sqrt(1 - a^2 - b^2).  All three expressions are symmetric in (a, b).
    """

    e_f: float
    e_a: float
    delta_s: float


def w2_analytic(l0: float, l3: float) -> W2Analytic:
    a, b = l0 * l0, l3 * l3
    if l0 < 0 or l3 < 0 or a + b > 1.0 + 1e-12:
        raise StateValidationError("arguments must be nonnegative with squares summing to at most 1")
    e_a = entropy_term(a) + entropy_term(b) - entropy_term(a + b)
    s = math.sqrt(max(0.0, 1.0 - 4.0 * a * b))
    e_f = 1.0 + 0.5 * (entropy_term(1.0 - s) + entropy_term(1.0 + s))
    delta_s = (
        entropy_term(a + b)
        + entropy_term(max(0.0, 1.0 - a - b))
        - abs(entropy_term(a) + entropy_term(1.0 - a) - entropy_term(b) - entropy_term(1.0 - b))
    )
    return W2Analytic(e_f=e_f, e_a=e_a, delta_s=delta_s)


def _pair_of(assisting: str) -> tuple[str, str]:
    first, second = (s for s in SUBSYSTEMS if s != assisting)
    return first, second


def delta_s(state: PureTripartiteState, assisting: str = "C") -> float:
    """Activation headroom S(pair) - |S(first) - S(second)| of the kept pair."""
    first, second = _pair_of(assisting)
    s_pair = von_neumann_entropy(partial_trace(state, keep=(first, second)))
    s_first = von_neumann_entropy(partial_trace(state, keep=first))
    s_second = von_neumann_entropy(partial_trace(state, keep=second))
    value = s_pair - abs(s_first - s_second)
    if value < DELTA_S_FLOOR:
        raise MonogamyViolationError(f"pair entropy bound came out at {value!r}")
    return max(0.0, value)


def _tangle_raw(state: PureTripartiteState) -> float:
    rho_c = partial_trace(state, keep="C")
    det_c = float(np.linalg.det(rho_c.matrix).real)
    c_sq_c_ab = 4.0 * max(0.0, det_c)
    c_ca = concurrence(partial_trace(state, keep=("C", "A")))
    c_cb = concurrence(partial_trace(state, keep=("C", "B")))
    return c_sq_c_ab - c_ca * c_ca - c_cb * c_cb


def three_tangle(state: PureTripartiteState) -> float:
    """Residual tangle C^2(C|AB) - C^2(CA) - C^2(CB), clamped to [0, 1]."""
    raw = _tangle_raw(state)
    if raw < -TANGLE_CLAMP_TOL:
        raise MonogamyViolationError(f"residual tangle {raw!r} below the -1e-8 floor")
    return min(1.0, max(0.0, raw))


@dataclass(frozen=True)
class MeasureReport:
    """Full record of the computed quantities for one state.

    `abe` is e_a - e_f with e_f the spin-flip closed form; the two-outcome
    projective minimum is reported alongside as `e_f_projective` so the gap
    between the two readings stays visible.
    """

    e_f: float
    e_a: float
    abe: float
    delta_s: float
    tangle: float
    tangle_raw: float
    e_f_projective: float
    ranks: tuple[int, int, int]
    argmax_basis: tuple[float, float]
    argmin_basis: tuple[float, float]
    optimizer_evals: int
    converged: bool
    assisting: str = "C"

    def __post_init__(self):
        if self.e_a < self.e_f - 1e-9:
            raise MonogamyViolationError(f"e_a={self.e_a!r} fell below e_f={self.e_f!r}")
        if not -1e-9 <= self.abe <= self.delta_s + 1e-9:
            raise MonogamyViolationError(
                f"abe={self.abe!r} outside [0, delta_s={self.delta_s!r}] band"
            )
        if not -1e-9 <= self.tangle <= 1.0 + 1e-9:
            raise MonogamyViolationError(f"tangle={self.tangle!r} outside [0, 1]")


def abe(
    state: PureTripartiteState,
    assisting: str = "C",
    settings: OptimizerSettings = DEFAULT_SETTINGS,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> MeasureReport:
    """Activated bipartite entanglement report: e_a - e_f plus all diagnostics."""
    if assisting not in SUBSYSTEMS:
        raise StateValidationError(f"unknown subsystem {assisting!r}")
    first, second = _pair_of(assisting)
    rho_pair = partial_trace(state, keep=(first, second))
    e_f = eof_wootters(rho_pair)
    extrema = projective_extrema(state.amplitudes, AXIS[assisting], settings)
    e_a = extrema.maximum.value
    ranks = tuple(
        numerical_rank(partial_trace(state, keep=s), tol=rank_tol) for s in ("A", "B", "C")
    )
    raw = _tangle_raw(state)
    if raw < -TANGLE_CLAMP_TOL:
        raise MonogamyViolationError(f"residual tangle {raw!r} below the -1e-8 floor")
    return MeasureReport(
        e_f=e_f,
        e_a=e_a,
        abe=e_a - e_f,
        delta_s=delta_s(state, assisting=assisting),
        tangle=min(1.0, max(0.0, raw)),
        tangle_raw=raw,
        e_f_projective=extrema.minimum.value,
        ranks=ranks,
        argmax_basis=(extrema.maximum.theta, extrema.maximum.phi),
        argmin_basis=(extrema.minimum.theta, extrema.minimum.phi),
        optimizer_evals=extrema.evaluations,
        converged=extrema.maximum.converged and extrema.minimum.converged,
        assisting=assisting,
    )

"""Decision procedure: product / biseparable / W-class / GHZ-class.

Single-qubit marginal ranks separate the non-genuine states; among genuine
tripartite states the residual tangle separates the two inequivalent
classes, with the activated entanglement acting as a cross-check (values
above ~0.15 are impossible for the W family).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_RANK_TOL, PureTripartiteState, StateValidationError
from .measures import MeasureReport, abe, w2_analytic
from .optimize import DEFAULT_SETTINGS, OptimizerSettings, _nelder_mead

DEFAULT_ABE_TOL = 1e-4
DEFAULT_TAU_TOL = 1e-6
W_BOUND = 0.15


class StateClass(enum.Enum):
    PRODUCT_ABC = "ProductABC"
    BISEPARABLE = "Biseparable"
    W_CLASS = "WClass"
    GHZ_CLASS = "GHZClass"


@dataclass(frozen=True)
class Evidence:
    """The numbers a classification decision rests on, with the thresholds used."""

    delta_e: float
    tangle: float
    ranks: tuple[int, int, int]
    abe_tol: float
    tau_tol: float
    rank_tol: float


@dataclass(frozen=True)
class ClassLabel:
    kind: StateClass
    evidence: Evidence
    partition: str | None = None

    @property
    def label(self) -> str:
        if self.kind is StateClass.BISEPARABLE:
            return f"Biseparable({self.partition})"
        return self.kind.value


class IndeterminateClassError(RuntimeError):
    """Evidence is inconsistent with every class; carries the evidence record."""

    def __init__(self, message: str, evidence: Evidence):
        super().__init__(message)
        self.evidence = evidence


_PARTITION_BY_RANK1 = {"A": "A|BC", "B": "B|AC", "C": "C|AB"}


def classify(
    state: PureTripartiteState,
    abe_tol: float = DEFAULT_ABE_TOL,
    tau_tol: float = DEFAULT_TAU_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    report: MeasureReport | None = None,
) -> ClassLabel:
    """Classify a pure three-qubit state, optionally reusing a precomputed report."""
    if report is None:
        report = abe(state, rank_tol=rank_tol)
    evidence = Evidence(
        delta_e=report.abe,
        tangle=report.tangle,
        ranks=report.ranks,
        abe_tol=abe_tol,
        tau_tol=tau_tol,
        rank_tol=rank_tol,
    )
    rank1 = [name for name, r in zip(("A", "B", "C"), report.ranks) if r == 1]
    if len(rank1) == 3:
        return ClassLabel(StateClass.PRODUCT_ABC, evidence)
    if len(rank1) == 1:
        return ClassLabel(StateClass.BISEPARABLE, evidence, partition=_PARTITION_BY_RANK1[rank1[0]])
    if len(rank1) == 2:
        raise IndeterminateClassError(
            "exactly two rank-1 marginals is geometrically impossible", evidence
        )
    if report.abe > W_BOUND + abe_tol and report.tangle <= tau_tol:
        raise IndeterminateClassError(
            "activated entanglement exceeds the W-family bound but the tangle vanishes",
            evidence,
        )
    if report.tangle > tau_tol:
        return ClassLabel(StateClass.GHZ_CLASS, evidence)
    if report.abe > abe_tol:
        return ClassLabel(StateClass.W_CLASS, evidence)
    raise IndeterminateClassError(
        "all marginals have rank 2 yet neither the tangle nor the activated "
        "entanglement is resolvable from zero",
        evidence,
    )


@dataclass(frozen=True)
class WBoundScan:
    max_abe: float
    l0: float
    l3: float


def w_bound_scan(grid_step: float = 0.01) -> WBoundScan:
    """Supremum of e_a - e_f over the two-parameter W simplex (grid + refinement)."""
    if not 0.0 < grid_step <= 0.05:
        raise StateValidationError("grid_step must lie in (0, 0.05]")

    def gap(l0: float, l3: float) -> float:
        if l0 < 0.0 or l3 < 0.0 or l0 * l0 + l3 * l3 > 1.0:
            return -1.0
        w2 = w2_analytic(l0, l3)
        return w2.e_a - w2.e_f

    best_val, best_pt = -1.0, (0.0, 0.0)
    l0s = np.arange(0.0, 1.0 + grid_step / 2, grid_step)
    for l0 in l0s:
        for l3 in np.arange(0.0, np.sqrt(max(0.0, 1.0 - l0 * l0)) + grid_step / 2, grid_step):
            v = gap(float(l0), float(l3))
            if v > best_val:
                best_val, best_pt = v, (float(l0), float(l3))
    x, f, _, _ = _nelder_mead(
        lambda a, b: -gap(a, b),
        best_pt,
        (grid_step, grid_step),
        DEFAULT_SETTINGS.max_iterations,
        1e-10,
    )
    if -f > best_val:
        best_val, best_pt = -f, (float(x[0]), float(x[1]))
    return WBoundScan(max_abe=best_val, l0=best_pt[0], l3=best_pt[1])


__all__ = [
    "ClassLabel",
    "Evidence",
    "IndeterminateClassError",
    "StateClass",
    "WBoundScan",
    "classify",
    "w_bound_scan",
    "DEFAULT_ABE_TOL",
    "DEFAULT_TAU_TOL",
    "W_BOUND",
]

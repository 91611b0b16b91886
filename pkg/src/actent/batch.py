"""Batch report computation with optional process-pool fan-out.

Rows are always returned in index order regardless of completion order, so
batched output is deterministic for fixed inputs and seeds.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .classify import DEFAULT_ABE_TOL, DEFAULT_TAU_TOL, IndeterminateClassError, classify
from .core import DEFAULT_RANK_TOL
from .families import haar_random, w_two_param
from .measures import abe, w2_analytic

INDETERMINATE_LABEL = "Indeterminate"


def haar_row(args) -> tuple:
    """One scatter row: (index, seed, abe, delta_s, tangle, r_a, r_b, r_c,
    class, e_f, e_a, argmax_theta, argmax_phi)."""
    index, seed, abe_tol, tau_tol, rank_tol = args
    state = haar_random(seed)
    report = abe(state, rank_tol=rank_tol)
    try:
        label = classify(state, abe_tol=abe_tol, tau_tol=tau_tol, rank_tol=rank_tol, report=report).label
    except IndeterminateClassError:
        label = INDETERMINATE_LABEL
    return (
        index,
        seed,
        report.abe,
        report.delta_s,
        report.tangle,
        report.ranks[0],
        report.ranks[1],
        report.ranks[2],
        label,
        report.e_f,
        report.e_a,
        report.argmax_basis[0],
        report.argmax_basis[1],
    )


def haar_rows(
    n: int,
    seed: int,
    abe_tol: float = DEFAULT_ABE_TOL,
    tau_tol: float = DEFAULT_TAU_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    workers: int = 1,
) -> list[tuple]:
    """Reports for n Haar states with per-row seeds seed, seed+1, ..."""
    jobs = [(i, seed + i, abe_tol, tau_tol, rank_tol) for i in range(n)]
    return _map_ordered(haar_row, jobs, workers)


def w2_row(args) -> tuple:
    """One W-family scan row, comparing the variational pair measures against
    the closed forms.

    The closed forms describe the pair whose excitation amplitudes are the
    two independent coefficients, so the variational side assists with the
    qubit carrying the dependent amplitude (subsystem B for this family's
    amplitude placement).
    """
    index, l0, l3 = args
    state = w_two_param(l0, l3)
    report = abe(state, assisting="B")
    analytic = w2_analytic(l0, l3)
    l2 = max(0.0, 1.0 - l0 * l0 - l3 * l3) ** 0.5
    return (
        index,
        l0,
        l3,
        l2,
        report.e_f,
        report.e_a,
        report.abe,
        report.delta_s,
        analytic.e_f,
        analytic.e_a,
        analytic.e_a - analytic.e_f,
        analytic.delta_s,
    )


def w2_scan_rows(steps: int, workers: int = 1) -> list[tuple]:
    """Grid over the (l0, l3) simplex, steps points per axis, infeasible cells skipped."""
    jobs = []
    index = 0
    for i in range(steps):
        l0 = i / (steps - 1)
        for j in range(steps):
            l3 = j / (steps - 1)
            if l0 * l0 + l3 * l3 > 1.0 + 1e-12:
                continue
            jobs.append((index, l0, l3))
            index += 1
    return _map_ordered(w2_row, jobs, workers)


def _map_ordered(fn, jobs, workers: int) -> list[tuple]:
    if workers <= 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (workers * 8))))
    return sorted(results, key=lambda row: row[0])

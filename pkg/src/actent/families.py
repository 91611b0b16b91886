"""Constructors for the studied three-qubit state families and Haar sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NORM_TOL, PureTripartiteState, StateValidationError, basis_index

# Recorded in output metadata so scatter runs are reproducible across builds.
PRNG_ALGORITHM = "numpy.random.Generator(PCG64)"


@dataclass(frozen=True)
class SchmidtCoefficients:
    """Five nonnegative coefficients with unit square-sum plus one phase in [0, pi]."""

    l0: float
    l1: float
    l2: float
    l3: float
    l4: float
    phi: float = 0.0

    def __post_init__(self):
        lams = (self.l0, self.l1, self.l2, self.l3, self.l4)
        if any(l < 0 for l in lams):
            raise StateValidationError("coefficients must be nonnegative")
        if not 0.0 <= self.phi <= math.pi:
            raise StateValidationError("phase must lie in [0, pi]")
        total = sum(l * l for l in lams)
        if abs(total - 1.0) > NORM_TOL:
            raise StateValidationError(f"squared coefficients sum to {total!r}, not 1")


def ghz_one_param(l1: float) -> PureTripartiteState:
    """l1|000> + sqrt(1-l1^2)|111>."""
    if not 0.0 <= l1 <= 1.0:
        raise StateValidationError("l1 must lie in [0, 1]")
    amps = np.zeros(8, dtype=complex)
    amps[0] = l1
    amps[7] = math.sqrt(max(0.0, 1.0 - l1 * l1))
    return PureTripartiteState(amps)


def w_two_param(l0: float, l3: float) -> PureTripartiteState:
    """l0|100> + l3|010> + l2|001> with dependent l2 = sqrt(1 - l0^2 - l3^2)."""
    if l0 < 0 or l3 < 0:
        raise StateValidationError("coefficients must be nonnegative")
    rest = 1.0 - l0 * l0 - l3 * l3
    if rest < -NORM_TOL:
        raise StateValidationError("l0^2 + l3^2 exceeds 1")
    amps = np.zeros(8, dtype=complex)
    amps[basis_index(1, 0, 0)] = l0
    amps[basis_index(0, 1, 0)] = l3
    amps[basis_index(0, 0, 1)] = math.sqrt(max(0.0, rest))
    return PureTripartiteState(amps)


def w_three_param(l0: float, l1: float, l2: float, l3: float) -> PureTripartiteState:
    """l0|000> + l1|100> + l2|101> + l3|110>."""
    lams = (l0, l1, l2, l3)
    if any(l < 0 for l in lams):
        raise StateValidationError("coefficients must be nonnegative")
    total = sum(l * l for l in lams)
    if abs(total - 1.0) > NORM_TOL:
        raise StateValidationError(f"squared coefficients sum to {total!r}, not 1")
    amps = np.zeros(8, dtype=complex)
    amps[basis_index(0, 0, 0)] = l0
    amps[basis_index(1, 0, 0)] = l1
    amps[basis_index(1, 0, 1)] = l2
    amps[basis_index(1, 1, 0)] = l3
    return PureTripartiteState(amps)


def acin_state(coeffs: SchmidtCoefficients) -> PureTripartiteState:
    """Generalized Schmidt form: l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>."""
    amps = np.zeros(8, dtype=complex)
    amps[basis_index(0, 0, 0)] = coeffs.l0
    amps[basis_index(1, 0, 0)] = coeffs.l1 * np.exp(1j * coeffs.phi)
    amps[basis_index(1, 0, 1)] = coeffs.l2
    amps[basis_index(1, 1, 0)] = coeffs.l3
    amps[basis_index(1, 1, 1)] = coeffs.l4
    return PureTripartiteState(amps)


def haar_random(seed: int) -> PureTripartiteState:
    """Haar-distributed pure state: 8 standard complex Gaussians, normalized.

    Deterministic per seed; one independent PCG64 stream per call, so batches
    may fan out over seeds without any shared generator.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return PureTripartiteState(z / np.linalg.norm(z))

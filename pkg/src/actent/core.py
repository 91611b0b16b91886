"""Exact complex linear algebra for three-qubit states and small density matrices.

Qubit ordering convention, used by every module in this package:

    subsystems  C (assisting), A, B
    basis index = 4*c + 2*a + b          (|C> tensor |A> tensor |B>)

so amplitude 0 is |000>, amplitude 4 is |100> (C excited), amplitude 1 is
|001> (B excited).  All reduced objects keep their subsystems in C, A, B
order as well: e.g. the pair (C, A) lives on a 4-dimensional space indexed
2*c + a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUBSYSTEMS = ("C", "A", "B")
AXIS = {"C": 0, "A": 1, "B": 2}

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIGENVALUE_FLOOR = -1e-10
PROBABILITY_SUM_TOL = 1e-10
EMPTY_BRANCH_TOL = 1e-14
DEFAULT_RANK_TOL = 1e-8


class StateValidationError(ValueError):
    """An input violates a structural constraint (norm, trace, shape, range)."""


class PSDViolationError(ValueError):
    """A supposed density matrix has an eigenvalue below the numerical floor."""


def basis_index(c: int, a: int, b: int) -> int:
    return 4 * c + 2 * a + b


@dataclass(frozen=True)
class PureTripartiteState:
    """Unit-norm vector of 8 complex amplitudes over C tensor A tensor B."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise StateValidationError(f"expected 8 amplitudes, got shape {amps.shape}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise StateValidationError(f"squared norm {norm2!r} deviates from 1 by more than {NORM_TOL}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def tensor3(self) -> np.ndarray:
        """Amplitudes reshaped to a (2, 2, 2) array indexed [c, a, b]."""
        return self.amplitudes.reshape(2, 2, 2)

    def fidelity(self, other: "PureTripartiteState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, numerically PSD matrix of dimension 2 or 4."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
            raise StateValidationError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise StateValidationError("matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise StateValidationError(f"trace {np.trace(m).real!r} deviates from 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs[0] < PSD_EIGENVALUE_FLOOR:
            raise PSDViolationError(f"eigenvalue {eigs[0]!r} below PSD floor {PSD_EIGENVALUE_FLOOR}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending real eigenvalues with the tiny-negative band clamped to 0."""
        eigs = np.linalg.eigvalsh(self.matrix)
        return np.where(eigs < 0.0, 0.0, eigs)


@dataclass(frozen=True)
class Projector:
    """Rank-1 projector pair on one qubit, from a Bloch direction.

    The measured basis is |e> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    together with its orthogonal complement; the two projectors sum to the
    identity on the subsystem.
    """

    subsystem: str
    theta: float
    phi: float

    def __post_init__(self):
        if self.subsystem not in SUBSYSTEMS:
            raise StateValidationError(f"unknown subsystem {self.subsystem!r}")
        if not 0.0 <= self.theta <= np.pi:
            raise StateValidationError("theta must lie in [0, pi]")

    def basis_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = np.cos(self.theta / 2), np.sin(self.theta / 2)
        e = np.array([c, s * np.exp(1j * self.phi)])
        e_perp = np.array([-s * np.exp(-1j * self.phi), c])
        return e, e_perp


@dataclass(frozen=True)
class Ensemble:
    """Convex mixture of two-qubit states: (probability, member) pairs.

    Members are either pure states (4 complex amplitudes) or DensityMatrix
    instances; probabilities are nonnegative and sum to one.
    """

    members: tuple

    def __post_init__(self):
        cleaned = []
        total = 0.0
        for p, st in self.members:
            p = float(p)
            if p < -PROBABILITY_SUM_TOL:
                raise StateValidationError(f"negative probability {p!r}")
            total += p
            if isinstance(st, DensityMatrix):
                cleaned.append((p, st))
            else:
                vec = np.asarray(st, dtype=complex).reshape(-1)
                if vec.shape != (4,):
                    raise StateValidationError("pure members must have 4 amplitudes")
                vec = vec.copy()
                vec.flags.writeable = False
                cleaned.append((p, vec))
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise StateValidationError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "members", tuple(cleaned))


def tensor(x, y):
    """Kronecker product of states or operators, in the package index order.

    Vectors combine to vectors, matrices to matrices; results beyond the
    supported sizes (8 for vectors, 8x8 for matrices) signal misuse.
    """
    xa = np.asarray(x, dtype=complex)
    ya = np.asarray(y, dtype=complex)
    if xa.ndim != ya.ndim or xa.ndim not in (1, 2):
        raise StateValidationError("tensor expects two vectors or two matrices")
    out = np.kron(xa, ya)
    if out.shape[0] > 8:
        raise StateValidationError(f"tensor result dimension {out.shape[0]} exceeds supported size")
    return out


def _as_density_tensor(state_or_matrix, n_subsystems: int) -> np.ndarray:
    """Coerce the input to a rank-2n density tensor over n qubits."""
    if isinstance(state_or_matrix, PureTripartiteState):
        arr = state_or_matrix.amplitudes
    elif isinstance(state_or_matrix, DensityMatrix):
        arr = state_or_matrix.matrix
    else:
        arr = np.asarray(state_or_matrix, dtype=complex)
    dim = 2**n_subsystems
    if arr.ndim == 1:
        if arr.shape != (dim,):
            raise StateValidationError(f"expected a {dim}-vector, got shape {arr.shape}")
        rho = np.outer(arr, arr.conj())
    elif arr.ndim == 2 and arr.shape == (dim, dim):
        rho = arr
    else:
        raise StateValidationError(f"expected a {dim}-vector or {dim}x{dim} matrix, got shape {arr.shape}")
    return rho.reshape((2,) * (2 * n_subsystems))


def partial_trace(state_or_matrix, keep) -> DensityMatrix:
    """Reduced density matrix on the kept subsystems (in C, A, B order).

    Accepts a full tripartite state/matrix, or a two-qubit (A, B) object
    when `keep` is a subset of {A, B}.
    """
    keep = [keep] if isinstance(keep, str) else list(keep)
    if not keep or any(k not in SUBSYSTEMS for k in keep) or len(set(keep)) != len(keep):
        raise StateValidationError(f"invalid subsystem subset {keep!r}")
    keep = sorted(keep, key=lambda k: AXIS[k])

    size = np.asarray(
        state_or_matrix.amplitudes
        if isinstance(state_or_matrix, PureTripartiteState)
        else state_or_matrix.matrix
        if isinstance(state_or_matrix, DensityMatrix)
        else state_or_matrix
    ).shape[0]
    if size == 4:
        if any(k == "C" for k in keep):
            raise StateValidationError("two-qubit inputs carry subsystems (A, B) only")
        labels = ["A", "B"]
    else:
        labels = list(SUBSYSTEMS)
    if len(keep) >= len(labels):
        raise StateValidationError("keep must be a proper subset of the input subsystems")

    rho = _as_density_tensor(state_or_matrix, len(labels))
    n = len(labels)
    for lbl in [s for s in labels if s not in keep]:
        ax = labels.index(lbl)
        rho = np.trace(rho, axis1=ax, axis2=ax + n)
        labels.remove(lbl)
        n -= 1
    d = 2**n
    return DensityMatrix(rho.reshape(d, d))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -tr(rho log2 rho) in bits, with 0 log 0 = 0."""
    eigs = rho.eigenvalues()
    positive = eigs[eigs > 0.0]
    return max(0.0, float(-np.sum(positive * np.log2(positive))))


def numerical_rank(rho: DensityMatrix, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues above `tol` times the largest eigenvalue."""
    eigs = rho.eigenvalues()
    top = eigs[-1]
    if top <= 0.0:
        return 0
    return int(np.sum(eigs > tol * top))


def project(state: PureTripartiteState, projector: Projector):
    """Measure one qubit projectively; return (probability, conditional pair state).

    The conditional state lives on the remaining two qubits in C, A, B order
    and is renormalized.  Branches with probability below 1e-14 return None
    in place of a state (to be excluded from ensembles).
    """
    axis = AXIS[projector.subsystem]
    m = np.moveaxis(state.tensor3(), axis, 0).reshape(2, 4)
    e, _ = projector.basis_vectors()
    branch = e.conj() @ m
    p = float(np.vdot(branch, branch).real)
    if p < EMPTY_BRANCH_TOL:
        return 0.0, None
    return p, branch / np.sqrt(p)


def projective_ensemble(state: PureTripartiteState, projector: Projector) -> Ensemble:
    """Two-outcome ensemble induced on the unmeasured pair by a basis measurement."""
    e, e_perp = projector.basis_vectors()
    axis = AXIS[projector.subsystem]
    m = np.moveaxis(state.tensor3(), axis, 0).reshape(2, 4)
    members = []
    for vec in (e, e_perp):
        branch = vec.conj() @ m
        p = float(np.vdot(branch, branch).real)
        if p < EMPTY_BRANCH_TOL:
            continue
        members.append((p, branch / np.sqrt(p)))
    total = sum(p for p, _ in members)
    members = [(p / total, st) for p, st in members]
    return Ensemble(tuple(members))


def apply_local_unitaries(state: PureTripartiteState, u_c=None, u_a=None, u_b=None) -> PureTripartiteState:
    """Apply single-qubit unitaries (identity where None) to C, A, B."""
    eye = np.eye(2)
    ops = [eye if u is None else np.asarray(u, dtype=complex) for u in (u_c, u_a, u_b)]
    full = np.kron(np.kron(ops[0], ops[1]), ops[2])
    return PureTripartiteState(full @ state.amplitudes)

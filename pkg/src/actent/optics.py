"""Jones-matrix simulation of the state-preparation circuits.

Single-photon encoding over path x polarization x transverse mode:

    path  u, d   -> qubit C (0, 1)
    pol   H, V   -> qubit A (0, 1)
    mode  h, v   -> qubit B (0, 1)

so optical states share the 4c + 2a + b index map of the rest of the
package.  Phase conventions are pinned (real orthogonal routing, symmetric
splitter with the sign on the d -> d branch) so amplitude-level tests are
bit-stable; any lossless alternative differs only by local phases, which
none of the computed measures see.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import Ensemble, PureTripartiteState, StateValidationError
from .measures import ensemble_average_entropy

_NORM_TOL = 1e-12


class ElementKind(enum.Enum):
    SWP = "SWP"
    PBS = "PBS"
    HWP = "HWP"
    DP45 = "DP45"
    HWP45 = "HWP45"
    BS = "BS"
    PREP_PROJECT = "PrepProject"


_ANGLED = {ElementKind.HWP, ElementKind.HWP45}
BOTH_PATHS = frozenset({0, 1})


@dataclass(frozen=True)
class OpticalElement:
    """One circuit element, acting on the given path subset where applicable.

    `control_pol` restricts a DP45 mode flip to one polarization component;
    this models the polarizing-splitter sandwich that routes only one
    polarization through the prism before recombining into the same path.
    """

    kind: ElementKind
    paths: frozenset = BOTH_PATHS
    nominal_angle_deg: float | None = None
    control_pol: int | None = None
    label: str | None = None

    def __post_init__(self):
        if not self.paths or not self.paths <= {0, 1}:
            raise StateValidationError(f"invalid path subset {set(self.paths)!r}")
        if self.kind in _ANGLED:
            angle = 45.0 if self.kind is ElementKind.HWP45 and self.nominal_angle_deg is None else self.nominal_angle_deg
            if angle is None:
                raise StateValidationError("wave plates need a nominal angle")
            object.__setattr__(self, "nominal_angle_deg", float(angle))
        elif self.nominal_angle_deg is not None:
            raise StateValidationError(f"{self.kind.value} takes no angle")
        if self.control_pol is not None and self.kind is not ElementKind.DP45:
            raise StateValidationError("only DP45 supports a polarization condition")


@dataclass(frozen=True)
class OpticalState:
    """8 complex amplitudes over path x pol x mode; norm 1 when lossless,
    possibly below 1 mid-post-selection."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise StateValidationError(f"expected 8 amplitudes, got shape {amps.shape}")
        norm2 = float(np.vdot(amps, amps).real)
        if norm2 > 1.0 + _NORM_TOL or norm2 <= 0.0:
            raise StateValidationError(f"squared norm {norm2!r} outside (0, 1]")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def as_pure_state(self) -> PureTripartiteState:
        return PureTripartiteState(self.amplitudes)

    def fidelity(self, other: "OpticalState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def input_photon() -> OpticalState:
    """Canonical circuit input |u H h>."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0
    return OpticalState(amps)


# Unitary completion of the radial-polarization converter on (pol, mode):
# only the |Hh> column is physically pinned; the rest is a fixed convention.
_SWP_4 = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
        [1.0, 0.0, 0.0, -1.0],
    ]
) / math.sqrt(2.0)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def _half_wave_plate(angle_deg: float) -> np.ndarray:
    two_theta = 2.0 * math.radians(angle_deg)
    c, s = math.cos(two_theta), math.sin(two_theta)
    return np.array([[c, s], [s, -c]])


def element_unitary(element: OpticalElement, angle_deg: float | None = None) -> np.ndarray:
    """8x8 matrix of a lossless element (the post-selection stage has none)."""
    if element.kind is ElementKind.PREP_PROJECT:
        raise StateValidationError("the post-selection stage is not unitary")
    u = np.eye(8, dtype=complex)
    if element.kind is ElementKind.BS:
        return np.kron(_HADAMARD, np.eye(4)).astype(complex)
    if element.kind is ElementKind.PBS:
        # H transmits (path kept), V reflects (path swapped)
        u = np.zeros((8, 8), dtype=complex)
        for c in (0, 1):
            for a in (0, 1):
                for b in (0, 1):
                    src = 4 * c + 2 * a + b
                    dst = 4 * (c if a == 0 else 1 - c) + 2 * a + b
                    u[dst, src] = 1.0
        return u
    for c in element.paths:
        block = slice(4 * c, 4 * c + 4)
        if element.kind is ElementKind.SWP:
            u[block, block] = _SWP_4
        elif element.kind in _ANGLED:
            angle = element.nominal_angle_deg if angle_deg is None else angle_deg
            u[block, block] = np.kron(_half_wave_plate(angle), np.eye(2))
        elif element.kind is ElementKind.DP45:
            flip = np.zeros((4, 4))
            for a in (0, 1):
                keep = element.control_pol is not None and a != element.control_pol
                for b in (0, 1):
                    flip[2 * a + (b if keep else 1 - b), 2 * a + b] = 1.0
            u[block, block] = flip
    return u


def apply_element(
    state: OpticalState, element: OpticalElement, angle_deg: float | None = None
) -> OpticalState:
    """Propagate through one element; the post-selection stage renormalizes."""
    if element.kind is ElementKind.PREP_PROJECT:
        amps = state.amplitudes.copy()
        amps.reshape(2, 2, 2)[:, 1, :] = 0.0  # discard the V-polarized component
        norm = np.linalg.norm(amps)
        if norm < 1e-12:
            raise StateValidationError("post-selection removed the whole state")
        return OpticalState(amps / norm)
    return OpticalState(element_unitary(element, angle_deg) @ state.amplitudes)


@dataclass(frozen=True)
class OpticalCircuit:
    """Ordered elements plus the error model for perturbed runs.

    With `perturb_all` every wave plate (including the fixed 45-degree one)
    receives an independent uniform error of +-error_halfwidth_deg; without
    it only the parameter-setting plates do.
    """

    elements: tuple
    seed: int = 0
    error_halfwidth_deg: float = 1.0
    perturb_all: bool = True

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.error_halfwidth_deg < 0:
            raise StateValidationError("error halfwidth must be nonnegative")


@dataclass(frozen=True)
class AngleDraw:
    label: str
    nominal_deg: float
    used_deg: float


@dataclass(frozen=True)
class CircuitRun:
    state: OpticalState
    angles: tuple[AngleDraw, ...] = field(default_factory=tuple)


def build_ghz_circuit(
    theta_deg: float, seed: int = 0, error_halfwidth_deg: float = 1.0, perturb_all: bool = True
) -> OpticalCircuit:
    """Preparation of cos(2 theta)|uHh> + sin(2 theta)|dVv>."""
    elements = (
        OpticalElement(ElementKind.SWP, paths=frozenset({0})),
        OpticalElement(ElementKind.PREP_PROJECT),
        OpticalElement(ElementKind.HWP, paths=frozenset({0}), nominal_angle_deg=theta_deg, label="theta"),
        OpticalElement(ElementKind.PBS),
        OpticalElement(ElementKind.DP45, paths=frozenset({1})),
    )
    return OpticalCircuit(elements, seed=seed, error_halfwidth_deg=error_halfwidth_deg, perturb_all=perturb_all)


def build_w_circuit(
    alpha_deg: float,
    beta_deg: float,
    seed: int = 0,
    error_halfwidth_deg: float = 1.0,
    perturb_all: bool = True,
) -> OpticalCircuit:
    """Preparation of sin(2a)|dHh> + cos(2a)cos(2b)|uHv> + cos(2a)sin(2b)|uVh>."""
    elements = (
        OpticalElement(ElementKind.SWP, paths=frozenset({0})),
        OpticalElement(ElementKind.PREP_PROJECT),
        OpticalElement(ElementKind.HWP, paths=frozenset({0}), nominal_angle_deg=alpha_deg, label="alpha"),
        OpticalElement(ElementKind.PBS),
        OpticalElement(ElementKind.HWP45, paths=frozenset({1}), label="hwp45"),
        OpticalElement(ElementKind.HWP, paths=frozenset({0}), nominal_angle_deg=beta_deg, label="beta"),
        OpticalElement(ElementKind.DP45, paths=frozenset({0}), control_pol=0),
    )
    return OpticalCircuit(elements, seed=seed, error_halfwidth_deg=error_halfwidth_deg, perturb_all=perturb_all)


def run(circuit: OpticalCircuit, perturb: bool = False) -> CircuitRun:
    """Propagate the canonical input through every element in order.

    When perturbing, each eligible wave plate angle is drawn uniformly from
    nominal +- error_halfwidth using the circuit seed, in element order, so
    equal seeds reproduce identical outputs.
    """
    rng = np.random.default_rng(circuit.seed) if perturb else None
    state = input_photon()
    draws = []
    for element in circuit.elements:
        angle = element.nominal_angle_deg
        if element.kind in _ANGLED:
            eligible = circuit.perturb_all or element.kind is ElementKind.HWP
            if perturb and eligible and circuit.error_halfwidth_deg > 0:
                angle = element.nominal_angle_deg + rng.uniform(
                    -circuit.error_halfwidth_deg, circuit.error_halfwidth_deg
                )
            draws.append(AngleDraw(element.label or element.kind.value, element.nominal_angle_deg, angle))
        state = apply_element(state, element, angle)
    return CircuitRun(state=state, angles=tuple(draws))


class PathBasis(enum.Enum):
    SIGMA_Z = "sigma_z"
    SIGMA_X = "sigma_x"


def measure_path(state: OpticalState, basis: PathBasis | str) -> Ensemble:
    """Path measurement followed by exact tomography of the conditional pair states.

    sigma_z detects the two free paths directly; sigma_x interferes them on
    a balanced splitter first.  Returns the weighted conditional
    polarization-mode states.
    """
    basis = PathBasis(basis)
    if basis is PathBasis.SIGMA_X:
        state = apply_element(state, OpticalElement(ElementKind.BS))
    branches = state.amplitudes.reshape(2, 4)
    members = []
    for branch in branches:
        p = float(np.vdot(branch, branch).real)
        if p < 1e-14:
            continue
        members.append((p, branch / math.sqrt(p)))
    total = sum(p for p, _ in members)
    return Ensemble(tuple((p / total, vec) for p, vec in members))


@dataclass(frozen=True)
class AbeEstimate:
    estimate: float
    sigma_z_entropy: float
    sigma_x_entropy: float
    run: CircuitRun


def estimate_abe_from_circuit(circuit: OpticalCircuit, perturb: bool = False) -> AbeEstimate:
    """Difference of the two fixed-basis average entropies of one circuit run.

    Which basis realizes the maximum differs between the two state families,
    so the estimate takes max - min over both instead of fixing roles.
    """
    outcome = run(circuit, perturb=perturb)
    s_z = ensemble_average_entropy(measure_path(outcome.state, PathBasis.SIGMA_Z))
    s_x = ensemble_average_entropy(measure_path(outcome.state, PathBasis.SIGMA_X))
    return AbeEstimate(
        estimate=max(s_z, s_x) - min(s_z, s_x),
        sigma_z_entropy=s_z,
        sigma_x_entropy=s_x,
        run=outcome,
    )

"""Brute-force protocol simulation and the rotation-optimization oracle.

The protocol: a source qubit S carrying ``rho_S = (I + phi . sigma)/2``
is measured jointly with the dealer qubit in the Bell basis (outcome
``l``), the assistant qubit is measured in the x basis (outcome ``x``),
and the reconstructor applies a correction rotation chosen per branch.
Reconstruction quality for one branch is the overlap of the corrected
conditional state with ``rho_S``; the figure of merit is the average of
the branch-weighted fidelity over a uniformly random input direction
``phi``.

Wire order in the simulation is (S, dealer, assistant, reconstructor)
on a 16-dimensional space; :func:`permute_to_canonical` maps any role
assignment onto that layout first.

Two closed-form routes are computed side by side and never merged: the
SO(3)-restricted optimum (attainable with unitary corrections, what the
Monte Carlo must match) and the trace-norm bound (which equals the
closed-form ``f_max`` and may exceed the SO(3) value when a branch
matrix has negative determinant).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from .fidelity import (
    CANONICAL_SETTING,
    Setting,
    f_max_from_theta,
    pair_correlation_for_setting,
    t_matrix_for_setting,
    trace_norm,
)
from .paulis import identity2, pauli_x, paulis, pauli_vector
from .states import BlochDecomposition, decompose_state, validate_state

ROTATION_TOL = 1e-10
ZERO_PROBABILITY = 1e-15

#: Signs (t1, t2, t3) such that the l-th Bell projector is
#: (1/4)(I + sum_i t_i sigma_i (x) sigma_i); l = 0 is the singlet.
BELL_DIAGONALS = (
    (-1.0, -1.0, -1.0),
    (-1.0, 1.0, 1.0),
    (1.0, -1.0, 1.0),
    (1.0, 1.0, -1.0),
)


def _bell_projector(diag: tuple[float, float, float]) -> np.ndarray:
    p = np.eye(4, dtype=complex)
    for t, s in zip(diag, paulis):
        p = p + t * np.kron(s, s)
    p /= 4.0
    p.setflags(write=False)
    return p


#: The four two-qubit Bell projectors, indexed by outcome l.
bell_projectors = tuple(_bell_projector(d) for d in BELL_DIAGONALS)

#: x-basis projectors keyed by outcome sign.
hadamard_projectors = {
    +1: (identity2 + pauli_x) / 2.0,
    -1: (identity2 - pauli_x) / 2.0,
}

#: Branch order used everywhere: l major, x = +1 before -1.
BRANCHES = tuple((l, x) for l in range(4) for x in (+1, -1))


def _branch_kernels() -> np.ndarray:
    kernels = np.empty((8, 8, 8), dtype=complex)
    for i, (l, x) in enumerate(BRANCHES):
        kernels[i] = np.kron(bell_projectors[l], hadamard_projectors[x])
    kernels.setflags(write=False)
    return kernels


# measurement kernel per branch acting on (S, dealer, assistant)
_KERNELS = _branch_kernels()


def rotation_to_unitary(omega: np.ndarray) -> np.ndarray:
    """SU(2) element implementing a rotation: U (n.sigma) U^dag = (Omega^T n).sigma.

    Equivalently U sigma_i U^dag = sum_j Omega_ij sigma_j.  Raises
    ValueError if ``omega`` is not special orthogonal to 1e-10.
    """
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got {omega.shape}")
    defect = np.abs(omega @ omega.T - np.eye(3)).max()
    if defect > ROTATION_TOL or abs(np.linalg.det(omega) - 1.0) > ROTATION_TOL:
        raise ValueError(f"not special orthogonal: orthogonality defect {defect:.3e}, det {np.linalg.det(omega):.12f}")
    rotvec = Rotation.from_matrix(omega.T).as_rotvec()
    angle = np.linalg.norm(rotvec)
    if angle < 1e-300:
        return identity2.copy()
    axis = rotvec / angle
    return np.cos(angle / 2.0) * identity2 - 1j * np.sin(angle / 2.0) * pauli_vector(axis)


@dataclass(frozen=True)
class CorrectionRotation:
    """A per-branch correction: SO(3) matrix and its SU(2) unitary."""

    omega: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        for name in ("omega", "u"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_matrix(cls, omega: np.ndarray) -> "CorrectionRotation":
        return cls(omega=np.asarray(omega, dtype=float), u=rotation_to_unitary(omega))


IDENTITY_ROTATION = CorrectionRotation.from_matrix(np.eye(3))


def optimal_rotation(m: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Best SO(3) rotation for one branch matrix.

    Maximizes Tr(M Omega) over rotations: with SVD M = U S V^T the
    optimum is Omega = V diag(1, 1, det(UV^T)) U^T, attaining
    s1 + s2 + sign(det M) s3 (the trace norm when det M >= 0).  Returns
    (omega, so3_value, trace_norm_value).  Degenerate singular values
    are resolved by whatever valid SVD the backend picks; any maximizer
    gives the same value.
    """
    m = np.asarray(m, dtype=float)
    u, s, vt = np.linalg.svd(m)
    d = np.linalg.det(u @ vt)
    omega = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    return omega, float(s[0] + s[1] + d * s[2]), float(s.sum())


def branch_matrix(d: BlochDecomposition, setting: Setting, l: int, x: int) -> np.ndarray:
    """M_{l,x} = T_l^T (P + x T): the per-branch payoff matrix whose
    rotation overlap sets that branch's fidelity contribution."""
    P = pair_correlation_for_setting(d, setting)
    T = t_matrix_for_setting(d, setting)
    t_l = np.diag(BELL_DIAGONALS[l])
    return t_l.T @ (P + x * T)


def optimal_rotations(d: BlochDecomposition, setting: Setting = CANONICAL_SETTING) -> tuple[CorrectionRotation, ...]:
    """Per-branch optimal corrections, in :data:`BRANCHES` order."""
    out = []
    for l, x in BRANCHES:
        omega, _, _ = optimal_rotation(branch_matrix(d, setting, l, x))
        out.append(CorrectionRotation.from_matrix(omega))
    return tuple(out)


@dataclass(frozen=True)
class BranchBound:
    l: int
    x: int
    so3_value: float
    trace_norm_value: float


@dataclass(frozen=True)
class ClosedFormBounds:
    """The two closed-form routes, reported separately.

    ``f_so3`` is attainable (sums the SO(3)-restricted branch optima);
    ``f_trace_norm`` sums the trace norms and reproduces the analytic
    ``f_max``.  ``so3_gap = f_trace_norm - f_so3 >= 0``, nonzero exactly
    when some branch matrix has negative determinant.
    """

    f_so3: float
    f_trace_norm: float
    so3_gap: float
    per_branch: tuple[BranchBound, ...]


def closed_form_bounds(d: BlochDecomposition, setting: Setting = CANONICAL_SETTING) -> ClosedFormBounds:
    bounds = []
    for l, x in BRANCHES:
        _, so3_val, tn_val = optimal_rotation(branch_matrix(d, setting, l, x))
        bounds.append(BranchBound(l=l, x=x, so3_value=so3_val, trace_norm_value=tn_val))
    f_so3 = 0.5 + sum(b.so3_value for b in bounds) / 48.0
    f_tn = 0.5 + sum(b.trace_norm_value for b in bounds) / 48.0
    return ClosedFormBounds(f_so3=f_so3, f_trace_norm=f_tn, so3_gap=f_tn - f_so3, per_branch=tuple(bounds))


def fixed_rotation_fidelity(d: BlochDecomposition, setting: Setting,
                            rotations: Sequence[CorrectionRotation]) -> float:
    """Closed-form sphere-averaged fidelity for a fixed rotation set:
    1/2 + (1/48) sum_branches Tr[T_l^T (P + x T) Omega]."""
    total = 0.0
    for (l, x), rot in zip(BRANCHES, rotations, strict=True):
        total += float(np.trace(branch_matrix(d, setting, l, x) @ rot.omega))
    return 0.5 + total / 48.0


_QUBIT_INDEX = {"A": 0, "B": 1, "C": 2}


def permute_to_canonical(rho: np.ndarray, setting: Setting) -> np.ndarray:
    """Reorder qubit wires so (dealer, assistant, reconstructor) sit on
    the canonical (A, B, C) slots."""
    order = [_QUBIT_INDEX[q] for q in (setting.dealer, setting.assistant, setting.reconstructor)]
    axes = order + [k + 3 for k in order]
    return np.asarray(rho).reshape((2,) * 6).transpose(axes).reshape(8, 8)


@dataclass(frozen=True)
class ProtocolOutcome:
    """One measurement branch: outcome pair, its probability, the
    corrected reconstructor state (None when the branch has zero
    probability) and the fidelity against the input."""

    l: int
    x: int
    p_alpha: float
    charlie_state: Optional[np.ndarray]
    branch_fidelity: float


def _source_state(phi: np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (3,) or abs(np.linalg.norm(phi) - 1.0) > 1e-9:
        raise ValueError("phi must be a unit 3-vector")
    return (identity2 + pauli_vector(phi)) / 2.0


def simulate_branches(rho: np.ndarray, phi: np.ndarray,
                      rotations: Sequence[CorrectionRotation]) -> list[ProtocolOutcome]:
    """Run every measurement branch for one input direction.

    ``rho`` must already be in canonical wire order (dealer, assistant,
    reconstructor) = (A, B, C); see :func:`permute_to_canonical`.
    Probabilities sum to 1; zero-probability branches carry fidelity 0
    and no conditional state.
    """
    if len(rotations) != 8:
        raise ValueError(f"need 8 rotations, got {len(rotations)}")
    rho_s = _source_state(phi)
    rho_tot = np.kron(rho_s, np.asarray(rho, dtype=complex))
    outcomes = []
    for (l, x), rot in zip(BRANCHES, rotations):
        proj = np.kron(np.kron(bell_projectors[l], hadamard_projectors[x]), identity2)
        conditioned = proj @ rho_tot @ proj
        p = float(conditioned.trace().real)
        # trace out (S, dealer, assistant), keeping the reconstructor
        n = np.trace(conditioned.reshape(8, 2, 8, 2), axis1=0, axis2=2)
        if p < ZERO_PROBABILITY:
            outcomes.append(ProtocolOutcome(l=l, x=x, p_alpha=p, charlie_state=None, branch_fidelity=0.0))
            continue
        charlie = rot.u @ (n / p) @ rot.u.conj().T
        fid = float(np.trace(charlie @ rho_s).real)
        outcomes.append(ProtocolOutcome(l=l, x=x, p_alpha=p, charlie_state=charlie, branch_fidelity=fid))
    return outcomes


def _sample_directions(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform points on the unit sphere via normalized Gaussians."""
    v = rng.normal(size=(n, 3))
    norms = np.linalg.norm(v, axis=1)
    while np.any(norms < 1e-12):  # pragma: no cover - probability zero
        bad = norms < 1e-12
        v[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(v, axis=1)
    return v / norms[:, None]


def _source_states(phis: np.ndarray) -> np.ndarray:
    return (np.eye(2, dtype=complex) + np.einsum("ni,iab->nab", phis, np.stack(paulis))) / 2.0


def _batched_branch_weights(rho: np.ndarray, rho_s: np.ndarray,
                            unitaries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Probabilities p[branch, n] and weighted fidelities w[branch, n].

    Same arithmetic as :func:`simulate_branches` vectorized over input
    directions; w = p * fidelity, so zero-probability branches weigh
    nothing without any conditioning step.
    """
    m = rho_s.shape[0]
    rho_tot = np.einsum("nij,kl->nikjl", rho_s, rho).reshape(m, 8, 2, 8, 2)
    p = np.empty((8, m))
    w = np.empty((8, m))
    for bi in range(8):
        n = np.einsum("ba,nacbd->ncd", _KERNELS[bi], rho_tot)
        p[bi] = np.einsum("ncc->n", n).real
        u = unitaries[bi]
        corrected = np.matmul(np.matmul(u, n), u.conj().T)
        w[bi] = np.einsum("nab,nba->n", corrected, rho_s).real
    return p, w


@dataclass(frozen=True)
class BranchStats:
    l: int
    x: int
    probability: float
    fidelity: float


@dataclass(frozen=True)
class MCResult:
    """Monte Carlo estimate of the sphere-averaged fidelity."""

    mean: float
    std_error: float
    n_samples: int
    seed: int
    per_branch: tuple[BranchStats, ...]

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "per_branch": [
                {"l": b.l, "x": b.x, "probability": b.probability, "fidelity": b.fidelity}
                for b in self.per_branch
            ],
        }


def expected_fidelity_mc(rho: np.ndarray, setting: Setting = CANONICAL_SETTING,
                         n_samples: int = 10_000, seed: int = 42,
                         rotations: Optional[Sequence[CorrectionRotation]] = None,
                         chunk: int = 8192) -> MCResult:
    """Average protocol fidelity over uniformly random input directions.

    The state is validated, permuted so the setting's roles land on the
    canonical layout, and simulated in chunks.  ``rotations`` defaults
    to the per-branch optimum for this state and setting; pass any
    other set to probe sub-optimal corrections.  Per-branch statistics
    report the mean branch probability and the conditional fidelity
    E[p f] / E[p].
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rho = validate_state(rho)
    rho = permute_to_canonical(rho, setting)
    if rotations is None:
        rotations = optimal_rotations(decompose_state(rho), CANONICAL_SETTING)
    if len(rotations) != 8:
        raise ValueError(f"need 8 rotations, got {len(rotations)}")
    unitaries = np.stack([r.u for r in rotations])

    rng = np.random.default_rng(seed)
    phis = _sample_directions(rng, n_samples)
    totals = np.empty(n_samples)
    p_sums = np.zeros(8)
    w_sums = np.zeros(8)
    for start in range(0, n_samples, chunk):
        block = phis[start:start + chunk]
        p, w = _batched_branch_weights(rho, _source_states(block), unitaries)
        totals[start:start + len(block)] = w.sum(axis=0)
        p_sums += p.sum(axis=1)
        w_sums += w.sum(axis=1)

    mean = float(totals.mean())
    std_error = float(totals.std(ddof=1) / np.sqrt(n_samples)) if n_samples > 1 else 0.0
    per_branch = tuple(
        BranchStats(l=l, x=x, probability=float(p_sums[i] / n_samples),
                    fidelity=float(w_sums[i] / p_sums[i]) if p_sums[i] > ZERO_PROBABILITY else 0.0)
        for i, (l, x) in enumerate(BRANCHES)
    )
    return MCResult(mean=mean, std_error=std_error, n_samples=n_samples, seed=seed, per_branch=per_branch)


def expected_fidelity_exact(rho: np.ndarray, setting: Setting = CANONICAL_SETTING,
                            rotations: Optional[Sequence[CorrectionRotation]] = None) -> float:
    """Exact sphere average of the simulated fidelity.

    Every branch map is affine in rho_S, so the averaged fidelity is a
    quadratic polynomial in phi and the uniform sphere average equals
    the mean over the six axis directions.  Deterministic; used to
    cross-check both the Monte Carlo and the closed forms.
    """
    rho = validate_state(rho)
    rho = permute_to_canonical(rho, setting)
    if rotations is None:
        rotations = optimal_rotations(decompose_state(rho), CANONICAL_SETTING)
    unitaries = np.stack([r.u for r in rotations])
    axes = np.vstack([np.eye(3), -np.eye(3)])
    _, w = _batched_branch_weights(rho, _source_states(axes), unitaries)
    return float(w.sum(axis=0).mean())


@dataclass(frozen=True)
class SphereAverageCheck:
    """Monte Carlo lhs vs analytic rhs of the quadratic-average identity
    integral of <phi, Y phi> = Tr(Y) / 3."""

    lhs: float
    rhs: float
    std_error: float
    n_samples: int
    seed: int


def sphere_average_identity_check(y: np.ndarray, n_samples: int = 100_000, seed: int = 42) -> SphereAverageCheck:
    """Estimate the sphere average of the quadratic form ``y`` and
    return it next to the analytic value Tr(y)/3."""
    y = np.asarray(y, dtype=float)
    if y.shape != (3, 3) or np.abs(y - y.T).max() > 1e-12:
        raise ValueError("y must be a symmetric 3x3 matrix")
    rng = np.random.default_rng(seed)
    phis = _sample_directions(rng, n_samples)
    samples = np.einsum("ni,ij,nj->n", phis, y, phis)
    lhs = float(samples.mean())
    se = float(samples.std(ddof=1) / np.sqrt(n_samples)) if n_samples > 1 else 0.0
    return SphereAverageCheck(lhs=lhs, rhs=float(np.trace(y) / 3.0), std_error=se,
                              n_samples=n_samples, seed=seed)


def _axis_overlap_fidelity(z: np.ndarray) -> np.ndarray:
    """Fidelity of the classical measure-along-z strategy for inputs
    with z-component ``z``: (1 + z^2) / 2."""
    return (1.0 + np.asarray(z) ** 2) / 2.0


def classical_baseline(n_samples: int = 1_000_000, seed: int = 42) -> float:
    """Monte Carlo mean fidelity of the best classical strategy
    (measure along a fixed axis, resend the outcome state); averages to
    2/3 over uniform inputs."""
    rng = np.random.default_rng(seed)
    phis = _sample_directions(rng, n_samples)
    return float(_axis_overlap_fidelity(phis[:, 2]).mean())


def _guess_fidelity_samples(p: float, strategy: str, n_samples: int, seed: int) -> np.ndarray:
    """Per-sample fidelity of a reconstructor guessing the dealer's bit.

    The dealer's share s1 = s XOR s2 hides the measured bit s behind a
    helper bit with P(s2 = 0) = p.  Strategy "same" guesses s1 itself,
    "negate" guesses its complement; means are (1 + p)/3 and (2 - p)/3.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if strategy not in ("same", "negate"):
        raise ValueError(f"strategy must be 'same' or 'negate', got {strategy!r}")
    rng = np.random.default_rng(seed)
    phis = _sample_directions(rng, n_samples)
    p_up = (1.0 + phis[:, 2]) / 2.0
    s = rng.random(n_samples) >= p_up        # True: measured the -z outcome
    s2 = rng.random(n_samples) >= p          # True with probability 1 - p
    s1 = s ^ s2
    guess = s1 if strategy == "same" else ~s1
    # resending |guess> scores cos^2 or sin^2 of the half-angle
    return np.where(guess, 1.0 - p_up, p_up)


def dishonest_guess_fidelity(p: float, strategy: str, n_samples: int = 1_000_000, seed: int = 42) -> float:
    """Mean fidelity when the reconstructor guesses from its share alone."""
    return float(_guess_fidelity_samples(p, strategy, n_samples, seed).mean())

"""Ensembles, POVMs, mutual information, Holevo bound, and the
accessible-information sandwich.

Exact accessible information is NP-hard in general, so the optimizer reports
a certified sandwich: the best mutual information found over a family of
candidate measurements (lower) against the Holevo quantity (upper). The
candidates are the pretty-good measurement, a Bloch-sphere grid of projective
measurements for qubits, and a random-restart hill climb over rank-one POVMs
with at most D^2 outcomes, which is enough to contain an optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvariantViolation, ValidationError
from .groups import MAX_WORKING_SET
from .states import (
    DensityMatrix,
    _entropy_bits,
    probability_vector,
    validate_density,
    von_neumann_entropy,
)

POVM_PSD_TOL = 1e-10
POVM_COMPLETE_TOL = 1e-8
OUTCOME_NEG_TOL = 1e-12
OUTCOME_COLUMN_TOL = 1e-9
ZERO_OUTCOME_TOL = 1e-15
SANDWICH_TOL = 1e-9
PGM_SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Prior probabilities paired with same-dimension quantum states."""

    priors: np.ndarray
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        priors = probability_vector(self.priors, what="ensemble priors")
        states = tuple(self.states)
        if not states:
            raise ValidationError("ensemble must contain at least one state")
        if priors.size != len(states):
            raise ValidationError(
                f"ensemble has {priors.size} priors but {len(states)} states"
            )
        for i, s in enumerate(states):
            if not isinstance(s, DensityMatrix):
                raise ValidationError(f"ensemble state {i} is not a validated DensityMatrix")
        dim = states[0].dim
        for i, s in enumerate(states):
            if s.dim != dim:
                raise ValidationError(f"ensemble state {i} has dim {s.dim}, expected {dim}")
        if len(states) * dim * dim > MAX_WORKING_SET:
            raise ValidationError(
                f"ensemble working set {len(states)}*{dim}^2 exceeds {MAX_WORKING_SET}"
            )
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)

    @cached_property
    def stacked(self) -> np.ndarray:
        """All states as one read-only (n, D, D) array."""
        arr = np.stack([s.data for s in self.states])
        arr.setflags(write=False)
        return arr

    @cached_property
    def average(self) -> DensityMatrix:
        """The prior-weighted average state."""
        avg = np.einsum("g,gij->ij", self.priors, self.stacked)
        return validate_density(avg, what="ensemble average")


@dataclass(frozen=True, eq=False)
class Povm:
    """A generalized measurement: PSD elements summing to the identity."""

    elements: np.ndarray

    def __post_init__(self):
        el = np.asarray(self.elements, dtype=complex)
        if el.ndim != 3 or el.shape[1] != el.shape[2]:
            raise ValidationError(f"POVM elements must be a stack of square matrices, got {el.shape}")
        if el.shape[0] == 0:
            raise ValidationError("POVM must have at least one element")
        herm_dev = float(np.linalg.norm(el - el.conj().transpose(0, 2, 1), axis=(1, 2)).max())
        if herm_dev > POVM_PSD_TOL:
            raise ValidationError(f"POVM element not Hermitian, deviation {herm_dev:.3e}")
        el = (el + el.conj().transpose(0, 2, 1)) / 2.0
        mins = np.linalg.eigvalsh(el)[:, 0]
        k = int(np.argmin(mins))
        if mins[k] < -POVM_PSD_TOL:
            raise ValidationError(
                f"POVM element {k} is not PSD, min eigenvalue {mins[k]:.3e} < -{POVM_PSD_TOL:.0e}"
            )
        total_dev = float(np.linalg.norm(el.sum(axis=0) - np.eye(el.shape[1])))
        if total_dev > POVM_COMPLETE_TOL:
            raise ValidationError(
                f"POVM is not complete, ||sum - I||_F = {total_dev:.3e} > {POVM_COMPLETE_TOL:.0e}"
            )
        el.setflags(write=False)
        object.__setattr__(self, "elements", el)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    def __len__(self) -> int:
        return self.elements.shape[0]


@dataclass(frozen=True)
class TracePoint:
    """One optimizer log entry: where a candidate value came from."""

    stage: str
    restart: int
    iteration: int
    value: float


@dataclass(frozen=True)
class OptimizerBudget:
    """Iteration/restart budget for the accessible-information search."""

    restarts: int = 4
    iterations: int = 150
    grid_polar: int = 61
    grid_azimuth: int = 120

    def __post_init__(self):
        for name in ("restarts", "iterations", "grid_polar", "grid_azimuth"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"budget.{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True, eq=False)
class InfoSandwich:
    """Certified bracket on accessible information, in bits."""

    lower: float
    upper: float
    best_povm: Povm
    optimizer_trace: tuple[TracePoint, ...] = field(default_factory=tuple)


def outcome_probability(ensemble: Ensemble, povm: Povm) -> np.ndarray:
    """Born-rule outcome matrix P[k, g] = tr(pi_k rho_g).

    Entries within -1e-12 of zero are clamped to 0; each column must sum to 1
    within 1e-9 (violations indicate a numerically broken POVM and raise).
    """
    if ensemble.dim != povm.dim:
        raise ValueError(f"dim mismatch: ensemble {ensemble.dim}, POVM {povm.dim}")
    p = np.einsum("kij,gji->kg", povm.elements, ensemble.stacked).real
    low = float(p.min())
    if low < -OUTCOME_NEG_TOL:
        raise ValidationError(f"outcome probability {low:.3e} below -{OUTCOME_NEG_TOL:.0e}")
    p = np.clip(p, 0.0, None)
    col_dev = float(np.abs(p.sum(axis=0) - 1.0).max())
    if col_dev > OUTCOME_COLUMN_TOL:
        raise InvariantViolation(
            f"outcome columns sum to 1 off by {col_dev:.3e} > {OUTCOME_COLUMN_TOL:.0e}"
        )
    return p


def _mutual_information_from_outcomes(priors: np.ndarray, outcomes: np.ndarray) -> float:
    """I = H(priors) - sum_k q(k) H(posterior | k), dropping q(k) <= 1e-15."""
    joint = outcomes * priors[None, :]
    q = joint.sum(axis=1)
    keep = q > ZERO_OUTCOME_TOL
    value = _entropy_bits(priors)
    if np.any(keep):
        j = joint[keep]
        qk = q[keep]
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = j * np.log2(j / qk[:, None])
        value += float(np.where(j > 0.0, terms, 0.0).sum())
    return max(0.0, value)


def mutual_information(ensemble: Ensemble, povm: Povm) -> float:
    """Mutual information (bits) between the preparation label and the outcome."""
    return _mutual_information_from_outcomes(
        ensemble.priors, outcome_probability(ensemble, povm)
    )


def holevo_chi(ensemble: Ensemble) -> float:
    """Holevo quantity S(avg) - sum_j p_j S(rho_j), in bits.

    Upper-bounds the mutual information of any single measurement on the
    ensemble.
    """
    avg_entropy = von_neumann_entropy(ensemble.average)
    member = sum(
        p * von_neumann_entropy(s)
        for p, s in zip(ensemble.priors, ensemble.states)
        if p > 0.0
    )
    return max(0.0, avg_entropy - float(member))


def pretty_good_measurement(ensemble: Ensemble) -> Povm:
    """The pretty-good measurement pi_k = avg^{-1/2} p_k rho_k avg^{-1/2}.

    The inverse square root is taken on the support of the average state; if
    the support is deficient a completion element I - P_support is appended so
    the result is a valid POVM on the full space.
    """
    avg = ensemble.average.data
    w, u = np.linalg.eigh(avg)
    support = w > PGM_SUPPORT_TOL
    us = u[:, support]
    inv_sqrt = (us * (1.0 / np.sqrt(w[support]))) @ us.conj().T

    weighted = ensemble.priors[:, None, None] * ensemble.stacked
    elements = inv_sqrt @ weighted @ inv_sqrt

    rank = int(support.sum())
    if rank < ensemble.dim:
        completion = np.eye(ensemble.dim) - us @ us.conj().T
        elements = np.concatenate([elements, completion[None, :, :]])
    return Povm(elements)


def _project_to_completeness(v: np.ndarray) -> np.ndarray:
    """Rescale columns so that sum_k v_k v_k^dag = I."""
    m = v @ v.conj().T
    w, u = np.linalg.eigh(m)
    w = np.clip(w, 1e-14, None)
    return (u * (1.0 / np.sqrt(w))) @ u.conj().T @ v


def _rank_one_outcomes(v: np.ndarray, stacked: np.ndarray) -> np.ndarray:
    """P[k, g] = <v_k| rho_g |v_k> for the rank-one POVM given by columns of v."""
    return np.clip(np.einsum("dk,gde,ek->kg", v.conj(), stacked, v).real, 0.0, None)


def _qubit_grid_directions(budget: OptimizerBudget) -> np.ndarray:
    theta = np.linspace(0.0, np.pi, budget.grid_polar)
    phi = np.linspace(0.0, 2.0 * np.pi, budget.grid_azimuth, endpoint=False)
    t, f = np.meshgrid(theta, phi, indexing="ij")
    return np.stack(
        [np.sin(t) * np.cos(f), np.sin(t) * np.sin(f), np.cos(t)], axis=-1
    ).reshape(-1, 3)


_PAULIS = np.array(
    [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex
)


def _qubit_grid_search(ensemble: Ensemble, budget: OptimizerBudget):
    """Best projective qubit measurement on a polar/azimuth grid.

    Returns (value, flat grid index, plus-projector)."""
    dirs = _qubit_grid_directions(budget)
    projectors = 0.5 * (np.eye(2)[None, :, :] + np.einsum("ka,aij->kij", dirs, _PAULIS))
    p_plus = np.clip(
        np.einsum("kij,gji->kg", projectors, ensemble.stacked).real, 0.0, 1.0
    )
    p_minus = 1.0 - p_plus

    priors = ensemble.priors
    base = _entropy_bits(priors)
    values = np.full(len(dirs), base)
    for branch in (p_plus, p_minus):
        joint = branch * priors[None, :]
        q = joint.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = joint * np.log2(joint / q[:, None])
        terms = np.where((joint > 0.0) & (q[:, None] > ZERO_OUTCOME_TOL), terms, 0.0)
        values += terms.sum(axis=1)
    k = int(np.argmax(values))
    return max(0.0, float(values[k])), k, projectors[k]


def _hill_climb(
    ensemble: Ensemble,
    budget: OptimizerBudget,
    seed_seq: np.random.SeedSequence,
):
    """One random-restart climb over rank-one POVMs with D^2 outcomes.

    Yields (iteration, value) improvements; returns the final column matrix.
    """
    rng = np.random.default_rng(seed_seq)
    dim = ensemble.dim
    n_out = dim * dim
    stacked = ensemble.stacked
    priors = ensemble.priors

    v = rng.standard_normal((dim, n_out)) + 1j * rng.standard_normal((dim, n_out))
    v = _project_to_completeness(v)
    best = _mutual_information_from_outcomes(priors, _rank_one_outcomes(v, stacked))
    improvements = [(0, best)]
    step = 0.25
    for it in range(1, budget.iterations + 1):
        noise = rng.standard_normal(v.shape) + 1j * rng.standard_normal(v.shape)
        cand = _project_to_completeness(v + step * noise)
        val = _mutual_information_from_outcomes(priors, _rank_one_outcomes(cand, stacked))
        if val > best:
            v, best = cand, val
            improvements.append((it, val))
            step = min(step * 1.25, 1.0)
        else:
            step = max(step * 0.9, 1e-4)
    return best, v, improvements


def accessible_info_lower(
    ensemble: Ensemble,
    budget: OptimizerBudget | None = None,
    seed: int = 0,
) -> InfoSandwich:
    """Certified sandwich [best mutual information found, Holevo bound].

    Candidate measurements, evaluated in a deterministic order with
    first-found tie-breaking: the pretty-good measurement, a Bloch-sphere
    grid of projective measurements when D = 2, and ``budget.restarts``
    seeded hill climbs over rank-one POVMs. Deterministic for fixed
    (seed, budget); more budget never lowers the result.
    """
    if budget is None:
        budget = OptimizerBudget()
    upper = holevo_chi(ensemble)
    trace: list[TracePoint] = []

    pgm = pretty_good_measurement(ensemble)
    best_value = mutual_information(ensemble, pgm)
    best_povm = pgm
    trace.append(TracePoint("pgm", -1, 0, best_value))

    if ensemble.dim == 2:
        grid_value, grid_idx, plus = _qubit_grid_search(ensemble, budget)
        trace.append(TracePoint("grid", -1, grid_idx, grid_value))
        if grid_value > best_value:
            best_value = grid_value
            best_povm = Povm(np.stack([plus, np.eye(2) - plus]))

    children = np.random.SeedSequence(seed).spawn(budget.restarts)
    for restart, child in enumerate(children):
        climb_value, v, improvements = _hill_climb(ensemble, budget, child)
        for it, val in improvements:
            trace.append(TracePoint("climb", restart, it, val))
        if climb_value > best_value:
            best_value = climb_value
            cols = v.T
            best_povm = Povm(np.einsum("ki,kj->kij", cols, cols.conj()))

    if best_value > upper + SANDWICH_TOL:
        raise InvariantViolation(
            f"optimizer lower bound {best_value!r} exceeds Holevo bound {upper!r}"
        )
    return InfoSandwich(
        lower=best_value, upper=upper, best_povm=best_povm, optimizer_trace=tuple(trace)
    )

"""The two information-encoding scenarios built on a group action.

Particle side: the sender shifts rho along its group orbit, producing the
uniform ensemble {T_g rho T_g^dag}. Wave side: the sender first twirls rho,
erasing everything the orbit could carry, and then applies arbitrary
unitaries to the invariant remainder. The Weyl shift-and-phase set is the
canonical complete choice for the wave side: averaging over it depolarizes
any input, which saturates the wave-capacity bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, ValidationError
from .groups import UNITARY_TOL, UnitaryRep
from .info import Ensemble, holevo_chi
from .measures import IDENTITY_TOL, symmetry, twirl
from .states import DensityMatrix, validate_density

DEPOLARIZE_TOL = 1e-9
# Above this dimension the completeness check falls back to probing random
# states instead of assembling the D^2 x D^2 superoperator.
SUPEROP_CHECK_MAX_DIM = 16
N_PROBE_STATES = 16


@dataclass(frozen=True, eq=False)
class WaveEncoder:
    """A set of unitaries used to imprint labels on the twirled state.

    ``complete`` marks encoders whose uniform conjugation average sends every
    state to the maximally mixed one; the flag is verified at construction.
    """

    unitaries: np.ndarray
    complete: bool

    @property
    def dim(self) -> int:
        return self.unitaries.shape[1]

    def __len__(self) -> int:
        return self.unitaries.shape[0]


def _check_unitaries(mats: np.ndarray, *, what: str) -> None:
    eye = np.eye(mats.shape[1])
    devs = np.linalg.norm(
        np.einsum("gji,gjk->gik", mats.conj(), mats) - eye[None, :, :], axis=(1, 2)
    )
    j = int(np.argmax(devs))
    if devs[j] > UNITARY_TOL:
        raise ValidationError(
            f"{what}: matrix {j} is not unitary, ||U^dag U - I||_F = {devs[j]:.3e}"
        )


def _check_depolarizing(mats: np.ndarray, *, what: str) -> None:
    """Verify that averaging conjugations by ``mats`` fully depolarizes.

    Exact superoperator comparison up to dimension 16; above that, checks a
    fixed set of seeded random full-rank probe states.
    """
    n, dim = mats.shape[0], mats.shape[1]
    if dim <= SUPEROP_CHECK_MAX_DIM:
        superop = sum(np.kron(u, u.conj()) for u in mats) / n
        vec_eye = np.eye(dim).reshape(-1)
        target = np.outer(vec_eye, vec_eye) / dim
        dev = float(np.linalg.norm(superop - target))
        if dev > DEPOLARIZE_TOL:
            raise ValidationError(
                f"{what}: flagged complete but the conjugation average deviates "
                f"from the depolarizing channel by {dev:.3e}"
            )
        return
    rng = np.random.default_rng(0)
    maxdev = 0.0
    for _ in range(N_PROBE_STATES):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        probe = g @ g.conj().T
        probe /= probe.trace().real
        out = np.einsum("gij,jk,glk->il", mats, probe, mats.conj()) / n
        maxdev = max(maxdev, float(np.linalg.norm(out - np.eye(dim) / dim)))
    if maxdev > DEPOLARIZE_TOL:
        raise ValidationError(
            f"{what}: flagged complete but a probe state deviates from I/D by {maxdev:.3e}"
        )


def wave_encoder_from_matrices(matrices, *, complete: bool = False) -> WaveEncoder:
    """Build an encoder from explicit unitaries, verifying the complete flag."""
    mats = np.asarray(matrices, dtype=complex)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[1] == 0:
        raise ValidationError(
            f"wave encoder needs a non-empty stack of square matrices, got shape {mats.shape}"
        )
    mats = mats.copy()
    _check_unitaries(mats, what="wave encoder")
    if complete:
        _check_depolarizing(mats, what="wave encoder")
    mats.setflags(write=False)
    return WaveEncoder(unitaries=mats, complete=complete)


def trivial_encoder(dim: int) -> WaveEncoder:
    """The single-identity encoder: no labels, zero wave information."""
    if dim < 1:
        raise ValueError(f"trivial_encoder: dim must be >= 1, got {dim}")
    return wave_encoder_from_matrices(np.eye(dim)[None, :, :], complete=(dim == 1))


def weyl_unitaries(dim: int) -> WaveEncoder:
    """The D^2 shift-and-phase unitaries W_ab = X^a Z^b.

    X cycles the computational basis, Z applies phases exp(2 pi i k / D);
    uniform conjugation over the set sends every state to I/D, so the encoder
    is flagged complete.
    """
    if dim < 1:
        raise ValueError(f"weyl_unitaries: dim must be >= 1, got {dim}")
    eye = np.eye(dim)
    omega = np.exp(2j * np.pi / dim)
    phases = omega ** np.arange(dim)
    mats = np.empty((dim * dim, dim, dim), dtype=complex)
    for a in range(dim):
        shift = np.roll(eye, a, axis=0)
        for b in range(dim):
            mats[a * dim + b] = shift * (phases**b)[None, :]
    _check_unitaries(mats, what="Weyl set")
    mats.setflags(write=False)
    return WaveEncoder(unitaries=mats, complete=True)


def particle_ensemble(rep: UnitaryRep, rho: DensityMatrix) -> Ensemble:
    """The uniform ensemble of orbit states T_g rho T_g^dag.

    Its average is exactly the twirl of rho.
    """
    if rep.dim != rho.dim:
        raise ValueError(f"particle_ensemble: rep dim {rep.dim} != state dim {rho.dim}")
    mats = rep.matrices
    rotated = mats @ rho.data
    conjugated = np.einsum("gij,gkj->gik", rotated, mats.conj())
    states = tuple(
        validate_density(conjugated[g], what=f"orbit state {g}") for g in range(len(mats))
    )
    priors = np.full(len(states), 1.0 / len(states))
    return Ensemble(priors=priors, states=states)


def wave_encode(encoder: WaveEncoder, rep: UnitaryRep, rho: DensityMatrix) -> Ensemble:
    """Uniform ensemble of U_j G[rho] U_j^dag over the encoder's unitaries.

    Every member has the entropy of the twirled state, so the ensemble's
    Holevo quantity reduces to S(average) - S(G[rho]).
    """
    if encoder.dim != rep.dim:
        raise ValueError(f"wave_encode: encoder dim {encoder.dim} != rep dim {rep.dim}")
    base = twirl(rep, rho)
    mats = encoder.unitaries
    rotated = mats @ base.data
    conjugated = np.einsum("gij,gkj->gik", rotated, mats.conj())
    states = tuple(
        validate_density(conjugated[j], what=f"wave-encoded state {j}")
        for j in range(len(mats))
    )
    priors = np.full(len(states), 1.0 / len(states))
    return Ensemble(priors=priors, states=states)


def wave_info_bound(rep: UnitaryRep, rho: DensityMatrix) -> float:
    """The wave-information capacity log2(D) - S(G[rho]).

    Cross-checks that the Weyl encoder attains it: the Holevo quantity of the
    Weyl-encoded ensemble must match within 1e-9.
    """
    bound = symmetry(rep, rho)
    chi = holevo_chi(wave_encode(weyl_unitaries(rep.dim), rep, rho))
    if abs(chi - bound) > IDENTITY_TOL:
        raise InvariantViolation(
            f"Weyl encoder chi {chi!r} does not attain the symmetry bound {bound!r}"
        )
    return bound

"""Density-operator algebra: validation, entropies, distances, random states.

All entropies are in bits (log base 2) throughout the package; mixing log
bases would break the additive identities the measures module relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
PROB_NEG_TOL = 1e-12
PROB_SUM_TOL = 1e-10
MAX_DIM = 512


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state: Hermitian, positive semidefinite, unit trace.

    Instances are produced by :func:`validate_density` (or helpers that route
    through it) and hold a read-only array; treat them as immutable values.
    """

    data: np.ndarray

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in ascending order (real, may carry ~1e-16 noise)."""
        return np.linalg.eigvalsh(self.data)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def validate_density(matrix, *, what: str = "density matrix") -> DensityMatrix:
    """Check the density-matrix axioms and return a validated state.

    Hermiticity deviations up to ``HERMITIAN_TOL`` (Frobenius) are repaired by
    symmetrizing with the adjoint; anything larger is rejected. The trace must
    be 1 within ``TRACE_TOL`` and the smallest eigenvalue at least ``-PSD_TOL``.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{what}: expected a square matrix, got shape {m.shape}")
    dim = m.shape[0]
    if dim == 0:
        raise ValidationError(f"{what}: dimension must be positive")
    if dim > MAX_DIM:
        raise ValidationError(f"{what}: dimension {dim} exceeds the supported maximum {MAX_DIM}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValidationError(f"{what}: contains non-finite entries")

    herm_dev = np.linalg.norm(m - m.conj().T)
    if herm_dev > HERMITIAN_TOL:
        raise ValidationError(
            f"{what}: not Hermitian, ||m - m^dag||_F = {herm_dev:.3e} > {HERMITIAN_TOL:.0e}"
        )
    m = (m + m.conj().T) / 2.0

    trace_dev = abs(m.trace().real - 1.0)
    if trace_dev > TRACE_TOL:
        raise ValidationError(
            f"{what}: trace is {m.trace().real!r}, |tr - 1| = {trace_dev:.3e} > {TRACE_TOL:.0e}"
        )

    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -PSD_TOL:
        raise ValidationError(
            f"{what}: not positive semidefinite, min eigenvalue = {min_eig:.3e} < -{PSD_TOL:.0e}"
        )
    return DensityMatrix(_freeze(m))


def probability_vector(entries, *, what: str = "probability vector") -> np.ndarray:
    """Validate a probability distribution and return it as a read-only array.

    Entries in ``[-PROB_NEG_TOL, 0)`` are clamped to zero; the total must be
    1 within ``PROB_SUM_TOL``.
    """
    p = np.asarray(entries, dtype=float)
    if p.ndim != 1:
        raise ValidationError(f"{what}: expected a 1-d array, got shape {p.shape}")
    if p.size == 0:
        raise ValidationError(f"{what}: must be non-empty")
    if not np.all(np.isfinite(p)):
        raise ValidationError(f"{what}: contains non-finite entries")
    low = float(p.min())
    if low < -PROB_NEG_TOL:
        raise ValidationError(f"{what}: entry {low:.3e} below -{PROB_NEG_TOL:.0e}")
    p = np.clip(p, 0.0, None)
    total = float(p.sum())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"{what}: sums to {total!r}, off by {abs(total - 1.0):.3e}")
    return _freeze(p)


def _entropy_bits(p: np.ndarray) -> float:
    """-sum p log2 p over the strictly positive entries, clamped at 0."""
    pos = p[p > 0.0]
    if pos.size == 0:
        return 0.0
    return max(0.0, float(-(pos * np.log2(pos)).sum()))


def shannon_entropy(p) -> float:
    """Shannon entropy of a distribution, in bits, with 0*log(0) = 0."""
    return _entropy_bits(probability_vector(p))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy -tr(rho log2 rho) in bits.

    Computed from the spectrum; eigenvalues in ``[-PSD_TOL, 0)`` are clamped
    to zero and the spectrum is not renormalized.
    """
    w = rho.eigenvalues()
    low = float(w[0])
    if low < -PSD_TOL:
        raise ValidationError(
            f"von Neumann entropy: eigenvalue {low:.3e} below -{PSD_TOL:.0e}"
        )
    return _entropy_bits(np.clip(w, 0.0, None))


def random_density(dim: int, rank: int, seed: int) -> DensityMatrix:
    """Draw a random state of the given rank from the Ginibre construction.

    Samples a ``dim x rank`` matrix G of independent standard complex
    Gaussians and returns G G^dag normalized to unit trace. At full rank this
    is the Hilbert-Schmidt measure. Deterministic for a fixed seed.
    """
    if dim < 1:
        raise ValueError(f"random_density: dim must be >= 1, got {dim}")
    if not 1 <= rank <= dim:
        raise ValueError(f"random_density: rank must be in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m /= m.trace().real
    return validate_density(m, what=f"random_density(dim={dim}, rank={rank}, seed={seed})")


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Trace distance (1/2)||a - b||_1, in [0, 1]."""
    if a.dim != b.dim:
        raise ValueError(f"trace_distance: dimension mismatch {a.dim} != {b.dim}")
    w = np.linalg.eigvalsh(a.data - b.data)
    return 0.5 * float(np.abs(w).sum())

"""Shared test fixtures: groups, representations, and random-object helpers."""

from __future__ import annotations

import numpy as np
import pytest

from twirlkit import (
    cyclic_group,
    dihedral_group,
    regular_representation,
    rep_from_matrices,
    validate_density,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def rand_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary via QR of a complex Gaussian matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def basis_state(dim: int, k: int = 0):
    m = np.zeros((dim, dim), dtype=complex)
    m[k, k] = 1.0
    return validate_density(m)


def _perm_matrix(perm) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=complex)
    for src, dst in enumerate(perm):
        m[dst, src] = 1.0
    return m


def _dihedral_vertex_rep(n: int):
    """D_n acting on the n polygon vertices by permutation matrices."""
    group = dihedral_group(n)
    rot = _perm_matrix([(k + 1) % n for k in range(n)])
    flip = _perm_matrix([(-k) % n for k in range(n)])
    mats = []
    for j in (0, 1):
        for i in range(n):
            m = np.linalg.matrix_power(rot, i)
            if j:
                m = m @ flip
            mats.append(m)
    return rep_from_matrices(group, np.stack(mats))


def _cyclic_phase_rep(n: int):
    """Z_n as diagonal phase matrices diag(1, w, ..., w^{n-1})^k."""
    group = cyclic_group(n)
    omega = np.exp(2j * np.pi / n)
    z = np.diag(omega ** np.arange(n))
    mats = [np.linalg.matrix_power(z, k) for k in range(n)]
    return rep_from_matrices(group, np.stack(mats))


def rep_case_matrix():
    """The standard (label, rep) test matrix: regular and hand-built reps
    of Z_2, Z_3, Z_4, D_3, D_4 with dims 2..6."""
    z2 = cyclic_group(2)
    return [
        ("Z2-regular", regular_representation(z2)),
        ("Z3-regular", regular_representation(cyclic_group(3))),
        ("Z4-regular", regular_representation(cyclic_group(4))),
        ("D3-regular", regular_representation(dihedral_group(3))),
        ("Z2-flip", rep_from_matrices(z2, np.stack([np.eye(2, dtype=complex), PAULI_X]))),
        ("Z3-phase", _cyclic_phase_rep(3)),
        ("Z4-phase", _cyclic_phase_rep(4)),
        ("D3-vertex", _dihedral_vertex_rep(3)),
        ("D4-vertex", _dihedral_vertex_rep(4)),
    ]


@pytest.fixture(scope="session")
def rep_cases():
    return rep_case_matrix()


@pytest.fixture
def z2_flip_rep():
    return rep_from_matrices(
        cyclic_group(2), np.stack([np.eye(2, dtype=complex), PAULI_X])
    )


@pytest.fixture
def z2_phase_rep():
    return rep_from_matrices(
        cyclic_group(2), np.stack([np.eye(2, dtype=complex), PAULI_Z])
    )

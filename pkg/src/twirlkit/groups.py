"""Finite groups as Cayley tables, and unitary matrix representations.

Group elements are dense indices ``0..order-1`` and the Cayley table is the
single source of truth: built-in constructors and user-supplied tables go
through the same validator. Axiom checks are exhaustive up to order 64 and
randomized (but deterministic) above, trading completeness for construction
speed on large groups.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

UNITARY_TOL = 1e-10
HOMOMORPHISM_TOL = 1e-10
EXHAUSTIVE_LIMIT = 64
# Cap on order * dim**2: a representation is stored (and twirls stream) as
# |G| dense dim x dim complex matrices, so this bounds memory to ~1 GiB.
MAX_WORKING_SET = 1 << 26


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group over indices 0..order-1 with its full Cayley table.

    ``cayley[a, b]`` is the index of the product a*b, ``inverse[a]`` the index
    of a^-1. Arrays are read-only; instances are immutable and safe to share
    across threads.
    """

    order: int
    cayley: np.ndarray
    identity: int
    inverse: np.ndarray

    def compose(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    @property
    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """A unitary matrix representation of a finite group.

    ``matrices[g]`` is the dim x dim unitary assigned to element g; the map
    g -> matrices[g] is a verified homomorphism. Read-only and immutable.
    """

    group: FiniteGroup
    dim: int
    matrices: np.ndarray

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _validate_cayley(table: np.ndarray) -> FiniteGroup:
    """Check the group axioms on a Cayley table, naming the first violation."""
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValidationError(f"cayley table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise ValidationError("cayley table must be non-empty")
    if table.min() < 0 or table.max() >= n:
        raise ValidationError(
            f"cayley entries must lie in 0..{n - 1}, found {table.min()}..{table.max()}"
        )

    # Latin square: every row and column is a permutation of 0..n-1.
    ident = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), ident):
            raise ValidationError(f"cayley row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(table[:, i]), ident):
            raise ValidationError(f"cayley column {i} is not a permutation of 0..{n - 1}")

    # Two-sided identity.
    identity = -1
    for e in range(n):
        if np.array_equal(table[e], ident) and np.array_equal(table[:, e], ident):
            identity = e
            break
    if identity < 0:
        raise ValidationError("cayley table has no two-sided identity element")

    # Associativity: exhaustive for small orders, sampled triples above.
    if n <= EXHAUSTIVE_LIMIT:
        if not np.array_equal(table[table], table[:, table]):
            bad = np.argwhere(table[table] != table[:, table])[0]
            raise ValidationError(
                f"cayley table is not associative at (a, b, c) = {tuple(int(x) for x in bad)}"
            )
    else:
        rng = np.random.default_rng(n)
        trip = rng.integers(0, n, size=(10 * n * n, 3))
        a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
        bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0]
        if bad.size:
            i = int(bad[0])
            raise ValidationError(
                f"cayley table is not associative at (a, b, c) = "
                f"({int(a[i])}, {int(b[i])}, {int(c[i])})"
            )

    # Two-sided inverses. Implied by the axioms above when associativity was
    # checked exhaustively; kept as a real check for the sampled regime.
    inverse = np.empty(n, dtype=np.int64)
    for a in range(n):
        b = int(np.nonzero(table[a] == identity)[0][0])
        if table[b, a] != identity:
            raise ValidationError(f"element {a} has no two-sided inverse")
        inverse[a] = b

    return FiniteGroup(order=n, cayley=_freeze(table), identity=identity, inverse=_freeze(inverse))


def group_from_cayley(table) -> FiniteGroup:
    """Build a group from an explicit multiplication table of element indices."""
    arr = np.asarray(table)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise ValidationError(f"cayley table must hold integers, got dtype {arr.dtype}")
    return _validate_cayley(arr.astype(np.int64, copy=True))


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group Z_n under addition mod n."""
    if n < 1:
        raise ValueError(f"cyclic_group: n must be >= 1, got {n}")
    a = np.arange(n)
    return _validate_cayley((a[:, None] + a[None, :]) % n)


def dihedral_group(n: int) -> FiniteGroup:
    """The dihedral group D_n of order 2n.

    Element ``i + n*j`` stands for r^i f^j with r^n = f^2 = e and
    f r f = r^-1; indices 0..n-1 are the rotations, n..2n-1 the flips.
    """
    if n < 3:
        raise ValueError(f"dihedral_group: n must be >= 3, got {n}")
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    for j1 in (0, 1):
        for j2 in (0, 1):
            i1 = np.arange(n)[:, None]
            i2 = np.arange(n)[None, :]
            rot = (i1 + (i2 if j1 == 0 else -i2)) % n
            block = rot + n * (j1 ^ j2)
            table[j1 * n:(j1 + 1) * n, j2 * n:(j2 + 1) * n] = block
    return _validate_cayley(table)


def _validate_rep(group: FiniteGroup, mats: np.ndarray) -> UnitaryRep:
    n, dim = group.order, mats.shape[1]
    if group.order * dim * dim > MAX_WORKING_SET:
        raise ValidationError(
            f"representation working set |G|*D^2 = {n * dim * dim} exceeds {MAX_WORKING_SET}; "
            "refusing to allocate"
        )
    if not np.all(np.isfinite(mats.view(float))):
        raise ValidationError("representation matrices contain non-finite entries")

    eye = np.eye(dim)
    gram = np.einsum("gji,gjk->gik", mats.conj(), mats)
    unit_dev = np.linalg.norm(gram - eye[None, :, :], axis=(1, 2))
    worst = int(np.argmax(unit_dev))
    if unit_dev[worst] > UNITARY_TOL:
        raise ValidationError(
            f"matrix for element {worst} is not unitary, "
            f"||T^dag T - I||_F = {unit_dev[worst]:.3e} > {UNITARY_TOL:.0e}"
        )

    id_dev = np.linalg.norm(mats[group.identity] - eye)
    if id_dev > UNITARY_TOL:
        raise ValidationError(
            f"identity element maps to a non-identity matrix, deviation {id_dev:.3e}"
        )

    # Homomorphism: T_g T_h = T_{gh}, exhaustive for small groups.
    if n <= EXHAUSTIVE_LIMIT:
        for g in range(n):
            prod = mats[g] @ mats
            dev = np.linalg.norm(prod - mats[group.cayley[g]], axis=(1, 2))
            h = int(np.argmax(dev))
            if dev[h] > HOMOMORPHISM_TOL:
                raise ValidationError(
                    f"not a homomorphism at pair ({g}, {h}), "
                    f"||T_g T_h - T_gh||_F = {dev[h]:.3e} > {HOMOMORPHISM_TOL:.0e}"
                )
    else:
        rng = np.random.default_rng(n + dim)
        sample = rng.integers(0, n, size=(10 * n, 2))
        for g, h in sample:
            dev = np.linalg.norm(mats[g] @ mats[h] - mats[group.cayley[g, h]])
            if dev > HOMOMORPHISM_TOL:
                raise ValidationError(
                    f"not a homomorphism at pair ({int(g)}, {int(h)}), "
                    f"||T_g T_h - T_gh||_F = {dev:.3e} > {HOMOMORPHISM_TOL:.0e}"
                )

    return UnitaryRep(group=group, dim=dim, matrices=_freeze(mats))


def rep_from_matrices(group: FiniteGroup, matrices) -> UnitaryRep:
    """Validate user-supplied matrices (one per element) as a unitary rep."""
    mats = np.asarray(matrices, dtype=complex)
    if mats.ndim != 3:
        raise ValidationError(
            f"expected one square matrix per group element, got array of shape {mats.shape}"
        )
    if mats.shape[0] != group.order:
        raise ValidationError(
            f"need {group.order} matrices (one per element), got {mats.shape[0]}"
        )
    if mats.shape[1] != mats.shape[2] or mats.shape[1] == 0:
        raise ValidationError(f"matrices must be square and non-empty, got shape {mats.shape[1:]}")
    return _validate_rep(group, mats.copy())


def regular_representation(group: FiniteGroup) -> UnitaryRep:
    """The left-regular representation: T_g permutes basis vector h to g*h.

    Dimension equals the group order; always faithful.
    """
    n = group.order
    if n * n * n > MAX_WORKING_SET:
        raise ValidationError(
            f"regular representation working set |G|^3 = {n**3} exceeds {MAX_WORKING_SET}; "
            "refusing to allocate"
        )
    mats = np.zeros((n, n, n), dtype=complex)
    cols = np.arange(n)
    for g in range(n):
        mats[g, group.cayley[g], cols] = 1.0
    return _validate_rep(group, mats)

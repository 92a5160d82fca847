"""JSON codecs for complex matrices and content digests.

Complex entries travel as two-element ``[re, im]`` lists, row-major. This is
the one wire format used everywhere: config files, reports, POVM dumps.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np


def complex_matrix_to_pairs(matrix: np.ndarray) -> list:
    """Encode a complex matrix as nested lists of [re, im] pairs."""
    m = np.asarray(matrix, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def complex_matrix_from_pairs(obj, *, what: str = "matrix") -> np.ndarray:
    """Decode nested [re, im] lists into a complex 2-d array."""
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{what}: expected a non-empty list of rows")
    width = None
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise ValueError(f"{what}: row {i} is not a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError(f"{what}: row {i} has {len(row)} entries, expected {width}")
        decoded = []
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ValueError(f"{what}: entry ({i}, {j}) is not an [re, im] pair")
            decoded.append(complex(entry[0], entry[1]))
        rows.append(decoded)
    return np.array(rows, dtype=complex)


def canonical_json(obj) -> str:
    """Deterministic JSON encoding: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest_json(obj) -> str:
    """SHA-256 hex digest of the canonical JSON encoding."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def digest_array(*arrays: np.ndarray) -> str:
    """SHA-256 hex digest of array shapes and raw bytes, order-sensitive."""
    h = hashlib.sha256()
    for a in arrays:
        c = np.ascontiguousarray(a)
        h.update(str(c.shape).encode())
        h.update(str(c.dtype).encode())
        h.update(c.tobytes())
    return h.hexdigest()

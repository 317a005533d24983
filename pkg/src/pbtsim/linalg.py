"""Small dense linear-algebra helpers shared across the package."""

from __future__ import annotations

import string
from functools import reduce
from typing import Iterable, Sequence

import numpy as np


def dag(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def kron_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats)


def kron_power(m: np.ndarray, k: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for _ in range(k):
        out = np.kron(out, m)
    return out


def partial_trace_qubits(op: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit of an n-qubit operator except those in ``keep``.

    Qubit 0 is the most significant (leftmost) tensor slot; the ``keep`` order
    is preserved in the output.
    """
    letters = string.ascii_letters
    if 2 * n > len(letters):
        raise ValueError(f"too many qubits for einsum labels: {n}")
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for q in range(n):
        if q not in keep:
            col[q] = row[q]
    sub = (
        "".join(row) + "".join(col) + "->"
        + "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    )
    d = 2 ** len(keep)
    return np.einsum(sub, np.asarray(op).reshape((2,) * (2 * n))).reshape(d, d)


def permute_qubits(op: np.ndarray, src_order: Sequence[int]) -> np.ndarray:
    """Reorder the tensor slots of an operator: new slot k holds old slot src_order[k]."""
    n = len(src_order)
    axes = list(src_order) + [s + n for s in src_order]
    d = 2 ** n
    return np.asarray(op).reshape((2,) * (2 * n)).transpose(axes).reshape(d, d)


def mat_abs(h: np.ndarray) -> np.ndarray:
    """|H| for Hermitian H, via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.abs(w)) @ dag(v)


def herm_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dag(m))))


def max_abs(a: np.ndarray, b: np.ndarray | None = None) -> float:
    d = a if b is None else a - b
    return float(np.max(np.abs(d)))

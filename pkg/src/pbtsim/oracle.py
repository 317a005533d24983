"""Dense brute-force construction of the square-root measurement and channel.

Everything here is built by explicit linear algebra on the full
2^(n+1)-dimensional space so it can validate the closed-form results at small
port counts.  Slot order matches the rest of the package: sender qubits
(A_n .. A_1) then the measured input qubit C last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import permute_qubits
from .resources import ReducedResource

MAX_ORACLE_PORTS = 8

# projector onto (|01> - |10>)/sqrt(2); this normalisation makes the spectrum
# of rho = sum_i sigma_i land exactly on the quarter-integer stencil below,
# which build_povm asserts on every call
SINGLET = 0.5 * np.array(
    [[0, 0, 0, 0], [0, 1, -1, 0], [0, -1, 1, 0], [0, 0, 0, 0]], dtype=complex
)

_SUPPORT_CUTOFF = 1e-10  # spectral gap of rho is >= 1/4, so orders of margin


@dataclass(frozen=True, eq=False)
class DensePovm:
    n: int
    pi_1: np.ndarray
    support_projector: np.ndarray
    rho: np.ndarray


def sigma_op(i: int, n: int) -> np.ndarray:
    """Singlet projector between C and sender qubit i, identity elsewhere."""
    if not 1 <= i <= n:
        raise ValueError(f"port index {i} out of 1..{n}")
    sigma1 = np.kron(np.eye(2 ** (n - 1), dtype=complex), SINGLET)
    if i == 1:
        return sigma1
    src = list(range(n + 1))
    src[n - 1], src[n - i] = src[n - i], src[n - 1]
    return permute_qubits(sigma1, src)


def _spectrum_stencil(n: int) -> list[float]:
    vals = {(n - jj) / 4.0 for jj in range(n % 2, n + 1, 2)}
    vals |= {(n + jj + 2) / 4.0 for jj in range(2 - n % 2, n + 1, 2)}
    return sorted(vals)


@lru_cache(maxsize=None)
def build_povm(n: int) -> DensePovm:
    """Square-root measurement element for outcome 1, built densely."""
    if not 2 <= n <= MAX_ORACLE_PORTS:
        raise ValueError(f"port count must be in 2..{MAX_ORACLE_PORTS}, got {n}")
    dim = 2 ** (n + 1)
    sigma1 = sigma_op(1, n)
    rho = sigma1.copy()
    for i in range(2, n + 1):
        rho += sigma_op(i, n)
    w, v = np.linalg.eigh(rho)
    stencil = _spectrum_stencil(n)
    if max(min(abs(x - s) for s in stencil) for x in w) > 1e-8:
        raise AssertionError("rho spectrum off the expected quarter-integer stencil")
    kept = v[:, w > _SUPPORT_CUTOFF]
    inv_sqrt = (kept / np.sqrt(w[w > _SUPPORT_CUTOFF])) @ kept.conj().T
    support = kept @ kept.conj().T
    pi_1 = inv_sqrt @ sigma1 @ inv_sqrt + (np.eye(dim) - support) / n
    pi_1 = 0.5 * (pi_1 + pi_1.conj().T)
    return DensePovm(n=n, pi_1=pi_1, support_projector=support, rho=rho)


def povm_element(i: int, n: int) -> np.ndarray:
    """Outcome-i measurement element, by port permutation of outcome 1."""
    pi_1 = build_povm(n).pi_1
    if i == 1:
        return pi_1
    src = list(range(n + 1))
    src[n - 1], src[n - i] = src[n - i], src[n - 1]
    return permute_qubits(pi_1, src)


def oracle_choi(reduced: ReducedResource) -> np.ndarray:
    """Choi matrix of the simulated channel, by direct dense traces."""
    n = reduced.n
    pi_1 = build_povm(n).pi_1
    c = np.zeros((4, 4), dtype=complex)
    for m in (0, 1):
        for nn in (0, 1):
            e = np.zeros((2, 2), dtype=complex)
            e[m, nn] = 1.0
            for i in (0, 1):
                for j in (0, 1):
                    tag = f"{i + 1}{j + 1}"
                    val = np.trace(pi_1 @ np.kron(reduced.block(tag), e))
                    c[2 * m + i, 2 * nn + j] = (n / 2) * val
    return c

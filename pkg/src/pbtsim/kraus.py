"""Kraus representations: qubit channels from Choi matrices, and the
protocol map from a reduced resource state to the simulated channel's Choi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .choi import qr_coeffs
from .spin import Kind, build_rho_eigenvectors, build_spin_basis, degeneracy, rho_eigenvalue

EIG_FLOOR = 1e-12  # rank decision for Kraus extraction


@dataclass(frozen=True, eq=False)
class KrausSet:
    ops: tuple[np.ndarray, ...]
    in_dim: int
    out_dim: int


def choi_to_kraus(choi: np.ndarray, psd_atol: float = 1e-9) -> KrausSet:
    """Kraus operators of the qubit channel with the given Choi matrix.

    Eigenvalues below EIG_FLOOR are dropped; each kept eigenvector v (indexed
    idler-outermost) becomes the operator K[out, in] = sqrt(2*lam) <in out|v>,
    so that sum_k (1 (x) K_k) |Phi><Phi| (1 (x) K_k)^dag recovers the Choi
    matrix for the normalised reference state |Phi>.
    """
    w, v = np.linalg.eigh(np.asarray(choi))
    if w.min() < -psd_atol:
        raise ValueError(f"Choi matrix is not positive semidefinite (min eig {w.min():.3e})")
    ops = []
    for k in range(w.size):
        if w[k] > EIG_FLOOR:
            ops.append(math.sqrt(2 * w[k]) * v[:, k].reshape(2, 2).T)
    return KrausSet(ops=tuple(ops), in_dim=2, out_dim=2)


def apply_kraus(kraus: KrausSet, state: np.ndarray) -> np.ndarray:
    """sum_k K_k state K_k^dag."""
    state = np.asarray(state)
    if state.shape != (kraus.in_dim, kraus.in_dim):
        raise ValueError(f"state shape {state.shape} does not match in_dim {kraus.in_dim}")
    out = np.zeros((kraus.out_dim, kraus.out_dim), dtype=complex)
    for k in kraus.ops:
        out += k @ state @ k.conj().T
    return out


def choi_from_kraus(kraus: KrausSet) -> np.ndarray:
    """Choi matrix of a qubit channel from its Kraus operators."""
    if kraus.in_dim != 2 or kraus.out_dim != 2:
        raise ValueError("choi_from_kraus handles qubit-to-qubit channels only")
    c = np.zeros((4, 4), dtype=complex)
    for k in kraus.ops:
        # (1 (x) K)|Phi> with |Phi> = (|00> + |11>)/sqrt(2); component (idler, out)
        vec = (k / math.sqrt(2)).T.reshape(-1)
        c += np.outer(vec, vec.conj())
    return c


@dataclass(frozen=True, eq=False)
class ProtocolKraus:
    """Kraus operators of the map from Tr_{B2..Bn}[resource] to the Choi matrix.

    Operators act on (A, B_1) (dimension 2^(n+1)) and output (C_0, B_1)
    (dimension 4).  ``k2`` covers the kernel sector of the measurement
    (ascending mm), ``k1`` the bulk (ss outer, mm middle, alpha inner).
    The family with the traced receiver qubits kept explicit is identical up
    to the choice of a basis bra on those n-1 qubits; its size is
    unreduced_multiplicity(n) copies of each operator here.
    """

    n: int
    k2: tuple[np.ndarray, ...]
    k1: tuple[np.ndarray, ...]

    @property
    def ops(self) -> tuple[np.ndarray, ...]:
        return self.k2 + self.k1


def unreduced_multiplicity(n: int) -> int:
    """Basis-vector count of the traced receiver qubits."""
    return 2 ** (n - 1)


def protocol_kraus(n: int) -> ProtocolKraus:
    """Explicit protocol Kraus operators for n ports."""
    if n < 2:
        raise ValueError("at least two ports are required")
    basis = build_spin_basis(n)
    dim = 2 ** n
    eye2 = np.eye(2, dtype=complex)

    def bra(jj, mm, kind, alpha):
        col = basis.column(jj, mm, kind, alpha)
        return None if col is None else col.conj()

    k2 = []
    for mm in range(-(n + 1), n + 2, 2):
        g = np.zeros((2, dim), dtype=complex)
        w = mm / (2.0 * (n + 1))
        hi = bra(n, mm + 1, Kind.II, 1)
        if hi is not None:
            g[0] += math.sqrt(max(0.5 - w, 0.0)) * hi
        lo = bra(n, mm - 1, Kind.II, 1)
        if lo is not None:
            g[1] += math.sqrt(max(0.5 + w, 0.0)) * lo
        k2.append(np.kron(g / math.sqrt(2), eye2))

    k1 = []
    ss_min = 1 if n % 2 == 0 else 0
    scale = math.sqrt(n / 2)
    for ss in range(ss_min, n, 2):
        for mm in range(-ss, ss + 1, 2):
            qr = qr_coeffs(ss, mm, n)
            for alpha in range(1, degeneracy(n - 1, ss) + 1):
                g = np.zeros((2, dim), dtype=complex)
                b = bra(ss - 1, mm + 1, Kind.I, alpha)
                if b is not None:
                    g[0] += qr.q_minus * b
                b = bra(ss + 1, mm + 1, Kind.II, alpha)
                if b is not None:
                    g[0] -= qr.r_plus * b
                b = bra(ss - 1, mm - 1, Kind.I, alpha)
                if b is not None:
                    g[1] += qr.q_plus * b
                b = bra(ss + 1, mm - 1, Kind.II, alpha)
                if b is not None:
                    g[1] += qr.r_minus * b
                k1.append(np.kron(scale * g, eye2))
    return ProtocolKraus(n=n, k2=tuple(k2), k1=tuple(k1))


def apply_protocol(pk: ProtocolKraus, reduced_state: np.ndarray) -> np.ndarray:
    """Choi matrix from the resource reduced to (A, B_1)."""
    d = 2 ** (pk.n + 1)
    if reduced_state.shape != (d, d):
        raise ValueError(f"expected {(d, d)} operator on (A, B_1)")
    out = np.zeros((4, 4), dtype=complex)
    for k in pk.ops:
        out += k @ reduced_state @ k.conj().T
    return out


def protocol_gram(pk: ProtocolKraus) -> np.ndarray:
    """sum_k K_k^dag K_k, kept available for inspection; the protocol is only
    guaranteed trace preserving on port-symmetric inputs."""
    d = 2 ** (pk.n + 1)
    out = np.zeros((d, d), dtype=complex)
    for k in pk.ops:
        out += k.conj().T @ k
    return out


def sqrt_measurement_op(n: int) -> np.ndarray:
    """Dense square root of the outcome-1 measurement element.

    Assembled from the rho eigenvectors: the kernel sector contributes
    1/sqrt(n) per projector, the bulk contributes one rank-1 pair per
    (ss, mm, alpha) with the inverse square root of its single eigenvalue.
    """
    if n < 2:
        raise ValueError("at least two ports are required")
    vecs = {}
    for ev in build_rho_eigenvectors(n):
        vecs[(ev.sign, ev.jj, ev.mm, ev.kind, ev.alpha)] = ev.vector
    dim = 2 ** (n + 1)
    out = np.zeros((dim, dim), dtype=complex)
    for mm in range(-(n + 1), n + 2, 2):
        v = vecs[("-", n, mm, Kind.II, 1)]
        out += np.outer(v, v.conj()) / math.sqrt(n)
    ss_min = 1 if n % 2 == 0 else 0
    for ss in range(ss_min, n, 2):
        a_i = math.sqrt((ss / (2.0 * (ss + 1))) / rho_eigenvalue("-", ss - 1, n)) if ss else 0.0
        a_ii = math.sqrt(((ss + 2.0) / (2 * (ss + 1.0))) / rho_eigenvalue("+", ss + 1, n))
        inv_sqrt_eig = math.sqrt((n + 1 - ss) * (n + 3 + ss) / (4.0 * (n + 1)))
        for mm in range(-ss, ss + 1, 2):
            for alpha in range(1, degeneracy(n - 1, ss) + 1):
                v = np.zeros(dim, dtype=complex)
                key_i = ("-", ss - 1, mm, Kind.I, alpha)
                if key_i in vecs:
                    v += a_i * vecs[key_i]
                key_ii = ("+", ss + 1, mm, Kind.II, alpha)
                if key_ii in vecs:
                    v -= a_ii * vecs[key_ii]
                out += inv_sqrt_eig * np.outer(v, v.conj())
    return out

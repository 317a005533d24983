"""Shared helpers: random resources, random channels, and independent oracles."""

import numpy as np
import pytest

from pbtsim.resources import FullResource, symmetrize


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_symmetric_resource(n: int, rng: np.random.Generator) -> FullResource:
    rho = random_density(2 ** (2 * n), rng)
    return symmetrize(FullResource(n=n, rho_ab=rho))


def random_choi(rng: np.random.Generator) -> np.ndarray:
    """Choi matrix of a random qubit channel (Stinespring isometry blocks)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(g)
    iso = q[:, :2]
    c = np.zeros((4, 4), dtype=complex)
    for k in (iso[0:2, :], iso[2:4, :]):
        v = (k / np.sqrt(2)).T.reshape(-1)
        c += np.outer(v, v.conj())
    return c


def total_spin_multiplets(m: int) -> dict:
    """Multiplet counts of m qubits by dense diagonalisation of the total spin.

    Independent of the package's combinatorial formula: builds J^2 from the
    one-qubit spin operators and bins its eigenvalues j(j+1).
    """
    sx = np.array([[0, 1], [1, 0]], dtype=complex) / 2
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
    sz = np.array([[1, 0], [0, -1]], dtype=complex) / 2
    dim = 2 ** m
    j2 = np.zeros((dim, dim), dtype=complex)
    for comp in (sx, sy, sz):
        total = np.zeros((dim, dim), dtype=complex)
        for q in range(m):
            op = np.eye(1, dtype=complex)
            for slot in range(m):
                op = np.kron(op, comp if slot == q else np.eye(2))
            total += op
        j2 += total @ total
    eigs = np.linalg.eigvalsh(j2)
    counts: dict[int, int] = {}
    for e in eigs:
        jj = round(np.sqrt(4 * e + 1) - 1)  # j(j+1) = e  ->  2j = sqrt(4e+1) - 1
        counts[jj] = counts.get(jj, 0) + 1
    return {jj: c // (jj + 1) for jj, c in counts.items()}


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)

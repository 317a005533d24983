"""Program (resource) states for the teleportation protocol.

A resource on n ports lives on 2n qubits (sender block A, receiver block B).
All channel formulas only need the state reduced to A plus the first receiver
qubit, split into the four conditional blocks

    R^{i+1, j+1} = <i|_B1 Tr_{B2..Bn}[pi] |j>_B1 ,

so the reduced form is the primary representation here; full 2n-qubit states
exist for the brute-force oracle and for port symmetrisation.  Tensor slot
order for full states is (A_n .. A_1, B_n .. B_1); reduced blocks live on
(A_n .. A_1), i.e. the qubit paired with the kept receiver qubit sits in the
last slot, matching the spin-basis recursion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import dag, herm_defect, kron_power, max_abs, partial_trace_qubits, permute_qubits
from .spin import Kind, SpinBasis, SpinLabel, degeneracy

TAGS = ("11", "12", "21", "22")

HERM_ATOL = 1e-12
PSD_ATOL = 1e-10
FILE_ATOL = 1e-8


# ----------------------------------------------------------------------------
# families
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Bell:
    """Maximally entangled port (|01> - |10>)/sqrt(2)."""


@dataclass(frozen=True)
class AdChoi:
    """Port equal to the Choi state of an amplitude-damping channel."""

    p: float


@dataclass(frozen=True)
class Alternate:
    """Rank-1 tensor-product port sqrt(a)|10> - sqrt(1-a)|01>."""

    a: float


@dataclass(frozen=True)
class FromFile:
    """Resource read from the PBTRES text format."""

    path: str


ResourceFamily = Bell | AdChoi | Alternate | FromFile


def bell_port() -> np.ndarray:
    v = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    return np.outer(v, v.conj())


def ad_choi_port(p: float) -> np.ndarray:
    """Choi state of amplitude damping (probability p), sender qubit first."""
    if not 0 <= p <= 1:
        raise ValueError(f"damping probability out of [0,1]: {p}")
    r = math.sqrt(1 - p)
    return np.array(
        [
            [p / 2, 0, 0, 0],
            [0, (1 - p) / 2, -r / 2, 0],
            [0, -r / 2, 0.5, 0],
            [0, 0, 0, 0],
        ],
        dtype=complex,
    )


def alternate_port(a: float) -> np.ndarray:
    """Rank-1 port state sqrt(a)|10> - sqrt(1-a)|01>, sender qubit first.

    Which of the two qubits carries the sqrt(a) weight is fixed by the
    channel the protocol produces (cross-checked against the dense
    measurement oracle); at a = 1/2 this is the Bell port.
    """
    if not 0 <= a <= 1:
        raise ValueError(f"parameter out of [0,1]: {a}")
    v = np.array([0, -math.sqrt(1 - a), math.sqrt(a), 0], dtype=complex)
    return np.outer(v, v.conj())


def port_state(family: ResourceFamily) -> np.ndarray:
    if isinstance(family, Bell):
        return bell_port()
    if isinstance(family, AdChoi):
        return ad_choi_port(family.p)
    if isinstance(family, Alternate):
        return alternate_port(family.a)
    raise TypeError(f"no single-port state for {family!r}")


# ----------------------------------------------------------------------------
# full and reduced resources
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FullResource:
    """Density matrix of all 2n qubits, slots (A_n..A_1, B_n..B_1)."""

    n: int
    rho_ab: np.ndarray

    def validate(self, atol: float = HERM_ATOL) -> None:
        d = 2 ** (2 * self.n)
        if self.rho_ab.shape != (d, d):
            raise ValueError(f"expected shape {(d, d)}, got {self.rho_ab.shape}")
        if herm_defect(self.rho_ab) > atol:
            raise ValueError("resource state is not Hermitian")
        if abs(np.trace(self.rho_ab) - 1) > atol:
            raise ValueError("resource state trace differs from 1")
        if np.linalg.eigvalsh(self.rho_ab).min() < -max(atol, PSD_ATOL):
            raise ValueError("resource state is not positive semidefinite")


@dataclass(frozen=True, eq=False)
class ReducedResource:
    """The four conditional blocks of a resource after keeping one B qubit."""

    n: int
    r11: np.ndarray
    r12: np.ndarray
    r21: np.ndarray
    r22: np.ndarray

    def block(self, tag: str) -> np.ndarray:
        return {"11": self.r11, "12": self.r12, "21": self.r21, "22": self.r22}[tag]

    def validate(self, atol: float = HERM_ATOL) -> None:
        d = 2 ** self.n
        for tag in TAGS:
            if self.block(tag).shape != (d, d):
                raise ValueError(f"block {tag}: expected shape {(d, d)}")
        if herm_defect(self.r11) > atol or herm_defect(self.r22) > atol:
            raise ValueError("conditional blocks r11/r22 are not Hermitian")
        if max_abs(self.r21, dag(self.r12)) > atol:
            raise ValueError("r21 is not the adjoint of r12")
        if abs(np.trace(self.r11) + np.trace(self.r22) - 1) > atol:
            raise ValueError("trace(r11) + trace(r22) differs from 1")
        for blk in (self.r11, self.r22):
            if np.linalg.eigvalsh(blk).min() < -max(atol, PSD_ATOL):
                raise ValueError("conditional block is not positive semidefinite")


def reduced_from_port(port: np.ndarray, n: int) -> ReducedResource:
    """Reduced blocks of the n-fold product of one two-qubit port state."""
    t = {(i, j): np.array(port[i::2, j::2], dtype=complex) for i in (0, 1) for j in (0, 1)}
    marg = t[(0, 0)] + t[(1, 1)]
    rest = kron_power(marg, n - 1)
    return ReducedResource(
        n=n,
        r11=np.kron(rest, t[(0, 0)]),
        r12=np.kron(rest, t[(0, 1)]),
        r21=np.kron(rest, t[(1, 0)]),
        r22=np.kron(rest, t[(1, 1)]),
    )


def make_family(family: ResourceFamily, n: int) -> ReducedResource:
    """Reduced blocks for a named family on n ports.

    Product families are built directly from per-port conditional blocks,
    without materialising the 4^n-dimensional state.
    """
    if n < 1:
        raise ValueError(f"port count must be positive, got {n}")
    if isinstance(family, FromFile):
        loaded = load_resource(family.path)
        if loaded.n != n:
            raise ValueError(f"resource file has N={loaded.n}, expected {n}")
        return loaded
    return reduced_from_port(port_state(family), n)


def full_from_port(port: np.ndarray, n: int) -> FullResource:
    """n-fold product of a two-qubit port state as a full 2n-qubit resource."""
    rho = kron_power(port, n)
    # slots currently (A_n, B_n, ..., A_1, B_1); regroup into (A.., B..)
    src = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    return FullResource(n=n, rho_ab=permute_qubits(rho, src))


def reduce_full(full: FullResource) -> ReducedResource:
    """Trace out all receiver qubits but the first and split into blocks."""
    n = full.n
    full.validate(atol=FILE_ATOL)
    keep = list(range(n)) + [2 * n - 1]
    red = partial_trace_qubits(full.rho_ab, 2 * n, keep)
    arr = red.reshape(2 ** n, 2, 2 ** n, 2)
    return ReducedResource(
        n=n,
        r11=np.ascontiguousarray(arr[:, 0, :, 0]),
        r12=np.ascontiguousarray(arr[:, 0, :, 1]),
        r21=np.ascontiguousarray(arr[:, 1, :, 0]),
        r22=np.ascontiguousarray(arr[:, 1, :, 1]),
    )


def trace_to_first_port(full: FullResource) -> np.ndarray:
    """Resource reduced to (A, B_1) as one operator, B_1 in the last slot."""
    n = full.n
    keep = list(range(n)) + [2 * n - 1]
    return partial_trace_qubits(full.rho_ab, 2 * n, keep)


def reduced_port_state(family: ResourceFamily, n: int) -> np.ndarray:
    """Tr_{B2..Bn} of a product family, on (A, B_1) with B_1 last."""
    port = port_state(family)
    marg = port[0::2, 0::2] + port[1::2, 1::2]
    return np.kron(kron_power(np.array(marg, dtype=complex), n - 1), port)


def symmetrize(full: FullResource) -> FullResource:
    """Average over all simultaneous (A_i, B_i) port permutations."""
    n = full.n
    if n >= 8:
        raise ValueError(f"refusing to symmetrise n={n} ports (n! permutations)")
    acc = np.zeros_like(full.rho_ab)
    for perm in itertools.permutations(range(n)):
        src = list(perm) + [n + q for q in perm]
        acc += permute_qubits(full.rho_ab, src)
    return FullResource(n=n, rho_ab=acc / math.factorial(n))


# ----------------------------------------------------------------------------
# spin-basis coefficient tables
# ----------------------------------------------------------------------------

class SpinCoefficients:
    """Resource blocks congruence-transformed into the coupled spin basis.

    Lookups are by spin label; labels that do not occur in the basis yield
    exactly 0, which implements the out-of-range-as-zero convention of the
    channel component sums.
    """

    def __init__(self, n: int, basis: SpinBasis, tables: dict):
        self.n = n
        self.basis = basis
        self.tables = tables

    def f(self, tag: str, kind1: Kind, jj1: int, mm1: int, alpha1: int,
          kind2: Kind, jj2: int, mm2: int, alpha2: int) -> complex:
        i = self.basis.index.get(SpinLabel(self.n, jj1, mm1, kind1, alpha1))
        if i is None:
            return 0j
        j = self.basis.index.get(SpinLabel(self.n, jj2, mm2, kind2, alpha2))
        if j is None:
            return 0j
        return self.tables[tag][i, j]

    def boundary(self, tag: str, mm: int, dl: int, dr: int) -> complex:
        """Kernel-sector entry f_{II,II} at jj = n, alpha = 1."""
        return self.f(tag, Kind.II, self.n, mm + dl, 1, Kind.II, self.n, mm + dr, 1)

    def block(self, tag: str) -> np.ndarray:
        """Computational-basis block recovered from the table."""
        u = self.basis.u
        return u @ self.tables[tag] @ dag(u)


def to_spin_coefficients(reduced: ReducedResource, basis: SpinBasis) -> SpinCoefficients:
    if basis.n != reduced.n:
        raise ValueError(f"basis is for n={basis.n}, resource for n={reduced.n}")
    u = basis.u
    tables = {tag: dag(u) @ reduced.block(tag) @ u for tag in TAGS}
    return SpinCoefficients(reduced.n, basis, tables)


def g_sum(coeffs: SpinCoefficients, tag: str, kinds: tuple[Kind, Kind],
          signs: tuple[int, int, int, int], ss: int, mm: int) -> complex:
    """Sum of f over the shared parent-multiplet index alpha.

    ``signs`` are doubled shifts applied as (jj1, mm1, jj2, mm2) =
    (ss+s1, mm+s2, ss+s3, mm+s4); alpha runs over the parent multiplets at
    spin ss, of which there are degeneracy(n-1, ss).
    """
    s1, s2, s3, s4 = signs
    total = 0j
    for alpha in range(1, degeneracy(coeffs.n - 1, ss) + 1):
        total += coeffs.f(tag, kinds[0], ss + s1, mm + s2, alpha,
                          kinds[1], ss + s3, mm + s4, alpha)
    return total


# ----------------------------------------------------------------------------
# resource file format
# ----------------------------------------------------------------------------

_MAGIC = "PBTRES 1"


def save_resource(path: str | Path, obj: FullResource | ReducedResource) -> None:
    """Write a resource in the PBTRES text format (FULL or REDUCED)."""
    lines = [_MAGIC, f"N={obj.n}"]
    if isinstance(obj, FullResource):
        lines.append("FORM=FULL")
        mats = [obj.rho_ab]
    else:
        lines.append("FORM=REDUCED")
        mats = [obj.r11, obj.r12, obj.r21, obj.r22]
    for m in mats:
        for row in np.asarray(m, dtype=complex):
            lines.append(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_resource(path: str | Path) -> ReducedResource:
    """Read a PBTRES file; FULL resources are reduced on the fly.

    Inputs violating Hermiticity/positivity by more than 1e-8 are rejected.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4 or lines[0].strip() != _MAGIC:
        raise ValueError("not a PBTRES resource file")
    if not lines[1].strip().startswith("N="):
        raise ValueError("missing N= header line")
    n = int(lines[1].strip()[2:])
    form = lines[2].strip()
    if form not in ("FORM=FULL", "FORM=REDUCED"):
        raise ValueError(f"unknown FORM header: {form!r}")
    values = np.array(" ".join(lines[3:]).split(), dtype=float)
    if values.size % 2:
        raise ValueError("odd number of real values; entries must be re/im pairs")
    entries = values[0::2] + 1j * values[1::2]
    if form == "FORM=FULL":
        d = 2 ** (2 * n)
        if entries.size != d * d:
            raise ValueError(f"expected {d * d} complex entries, got {entries.size}")
        full = FullResource(n=n, rho_ab=entries.reshape(d, d))
        full.validate(atol=FILE_ATOL)
        return reduce_full(full)
    d = 2 ** n
    if entries.size != 4 * d * d:
        raise ValueError(f"expected {4 * d * d} complex entries, got {entries.size}")
    blocks = entries.reshape(4, d, d)
    reduced = ReducedResource(n=n, r11=blocks[0], r12=blocks[1], r21=blocks[2], r22=blocks[3])
    reduced.validate(atol=FILE_ATOL)
    return reduced

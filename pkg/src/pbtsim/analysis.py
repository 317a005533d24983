"""Channel models, distance measures, and the amplitude-damping simulation study.

Closed forms for the depolarising probability of the protocol with maximally
entangled ports, the output Choi matrices for the damping-Choi and alternate
port families, the two parameter points where the diamond norm collapses onto
the trace norm, and numerical diamond norms by multi-start pure-state search
certified against analytic bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from .kraus import choi_to_kraus
from .linalg import mat_abs, partial_trace_qubits


# ----------------------------------------------------------------------------
# depolarising probability and channel models
# ----------------------------------------------------------------------------

XI_MAX = (6 - math.sqrt(3)) / 6  # two-port value; decreasing in n


def xi(n: int) -> float:
    """Depolarising probability of the n-port protocol with Bell ports."""
    if n < 2:
        raise ValueError("at least two ports are required")
    total = 0.0
    for t in range((1 if n % 2 else 2), n + 1, 2):  # t = 2s + 1
        den = (n + 2) ** 2 - t * t
        total += (t * t - 1) / 4 * math.comb(n, (n - t) // 2) * ((n + 2) - math.sqrt(den)) / den
    return total / (3 * 2.0 ** (n - 4)) + (n + 2) / (3 * 2.0 ** (n - 1))


def depolarizing_choi(xi_val: float) -> np.ndarray:
    """Choi matrix of the depolarising channel with probability xi_val."""
    if not 0 <= xi_val <= 4 / 3:
        raise ValueError(f"depolarising probability out of range: {xi_val}")
    return np.array(
        [
            [0.5 - xi_val / 4, 0, 0, 0.5 - xi_val / 2],
            [0, xi_val / 4, 0, 0],
            [0, 0, xi_val / 4, 0],
            [0.5 - xi_val / 2, 0, 0, 0.5 - xi_val / 4],
        ],
        dtype=complex,
    )


def ad_choi(p: float, convention: str = "plus") -> np.ndarray:
    """Choi matrix of amplitude damping with probability p.

    ``convention`` selects the maximally entangled reference state:
    'plus' uses (|00> + |11>)/sqrt(2) (the protocol's output convention),
    'singlet' uses (|01> - |10>)/sqrt(2) (the per-port resource convention).
    The two differ by a Pauli unitary on one mode.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"damping probability out of [0,1]: {p}")
    r = math.sqrt(1 - p)
    if convention == "plus":
        return np.array(
            [[0.5, 0, 0, r / 2], [0, 0, 0, 0], [0, 0, p / 2, 0], [r / 2, 0, 0, (1 - p) / 2]],
            dtype=complex,
        )
    if convention == "singlet":
        return np.array(
            [[p / 2, 0, 0, 0], [0, (1 - p) / 2, -r / 2, 0], [0, -r / 2, 0.5, 0], [0, 0, 0, 0]],
            dtype=complex,
        )
    raise ValueError(f"unknown convention {convention!r}")


def pbt_ad_choi(n: int, p1: float) -> np.ndarray:
    """Closed-form output Choi for n damping-Choi ports with probability p1."""
    if not 0 <= p1 <= 1:
        raise ValueError(f"damping probability out of [0,1]: {p1}")
    x = xi(n)
    r = math.sqrt(1 - p1)
    return np.array(
        [
            [0.5 - x / 4 * (1 - p1), 0, 0, (0.5 - x / 2) * r],
            [0, x / 4 * (1 - p1), 0, 0],
            [0, 0, p1 * (0.5 - x / 4) + x / 4, 0],
            [(0.5 - x / 2) * r, 0, 0, (1 - p1) * (0.5 - x / 4)],
        ],
        dtype=complex,
    )


# ----------------------------------------------------------------------------
# distance measures
# ----------------------------------------------------------------------------

def trace_norm(x: np.ndarray, y: np.ndarray) -> float:
    """Sum of absolute eigenvalues of x - y."""
    return float(np.abs(np.linalg.eigvalsh(np.asarray(x) - np.asarray(y))).sum())


def diamond_bounds(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """(lower, upper) bounds on the diamond norm between two qubit channels.

    Lower bound is the trace norm of the Choi difference; upper bound is
    twice the largest eigenvalue of the output-traced modulus of the
    difference.  They coincide when that partial trace is scalar.
    """
    lower = trace_norm(x, y)
    traced = partial_trace_qubits(mat_abs(np.asarray(x) - np.asarray(y)), 2, [0])
    upper = 2.0 * float(np.linalg.eigvalsh(traced).max())
    return lower, upper


_BELL_ANGLES = np.array([math.pi / 4, math.pi / 2, math.pi / 2, 0.0, 0.0, 0.0])


def _pure_state(angles: np.ndarray) -> np.ndarray:
    """Two-qubit pure state from 6 real parameters (global phase removed)."""
    a, b, g, p1, p2, p3 = angles
    sa, sb = math.sin(a), math.sin(b)
    return np.array(
        [
            math.cos(a),
            sa * math.cos(b) * np.exp(1j * p1),
            sa * sb * math.cos(g) * np.exp(1j * p2),
            sa * sb * math.sin(g) * np.exp(1j * p3),
        ],
        dtype=complex,
    )


def _output_diff(psi_mat: np.ndarray, k_plus: list, k_minus: list) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    for k in k_plus:
        v = (psi_mat @ k.T).reshape(-1)
        out += np.outer(v, v.conj())
    for k in k_minus:
        v = (psi_mat @ k.T).reshape(-1)
        out -= np.outer(v, v.conj())
    return out


def diamond_numeric(x: np.ndarray, y: np.ndarray, seed: int = 0, restarts: int = 64) -> float:
    """Diamond norm by maximising over pure two-qubit inputs.

    Multi-start Nelder-Mead over six angles; the first start is the maximally
    entangled input (so the result never falls below the trace-norm lower
    bound), later starts anneal around the incumbent.  Deterministic for a
    given seed.
    """
    kx = [np.asarray(k) for k in choi_to_kraus(x).ops]
    ky = [np.asarray(k) for k in choi_to_kraus(y).ops]

    def value(angles: np.ndarray) -> float:
        psi = _pure_state(angles).reshape(2, 2)
        return float(np.abs(np.linalg.eigvalsh(_output_diff(psi, kx, ky))).sum())

    def neg(angles: np.ndarray) -> float:
        return -value(angles)

    rng = np.random.default_rng(seed)
    best_val = value(_BELL_ANGLES)
    best_angles = _BELL_ANGLES
    lo = np.zeros(6)
    hi = np.array([math.pi / 2, math.pi / 2, math.pi / 2, 2 * math.pi, 2 * math.pi, 2 * math.pi])
    for r in range(max(restarts, 1)):
        if r == 0:
            start = _BELL_ANGLES
        elif r % 2 == 1:
            start = rng.uniform(lo, hi)
        else:
            radius = 0.5 * 0.5 ** (2.0 * r / max(restarts, 1))
            start = best_angles + rng.normal(scale=radius, size=6)
        res = minimize(neg, start, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        if -res.fun > best_val:
            best_val = -res.fun
            best_angles = res.x
    return best_val


# ----------------------------------------------------------------------------
# damping-Choi resource study
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class AdKnownPoints:
    """The two resource parameters with analytically known diamond norm."""

    p1_a: float        # p1 = p0
    d0: float
    p1_b: float | None  # p1 = (p0 - xi)/(1 - xi); absent when p0 < xi
    d1: float | None


def ad_known_points(n: int, p0: float) -> AdKnownPoints:
    if not 0 <= p0 <= 1:
        raise ValueError(f"damping probability out of [0,1]: {p0}")
    x = xi(n)
    d0 = x * ((1 - p0) / 2 + math.sqrt(1 - p0))
    if p0 < x:
        return AdKnownPoints(p1_a=p0, d0=d0, p1_b=None, d1=None)
    p1_b = (p0 - x) / (1 - x)
    d1 = 0.5 * (
        (1 - p0) * x / (1 - x)
        + math.sqrt(4 * (1 - p0) * (1 - math.sqrt(1 - x)) ** 2 + (1 - p0) ** 2 * x * x / (1 - x) ** 2)
    )
    return AdKnownPoints(p1_a=p0, d0=d0, p1_b=p1_b, d1=d1)


@dataclass(frozen=True)
class DifferenceSpectrum:
    """Eigenvalues of the Choi difference for the damping-Choi resource."""

    e1: float
    e2: float
    e3: float
    e4: float
    c: float


def difference_spectrum(n: int, p0: float, p1: float) -> DifferenceSpectrum:
    x = xi(n)
    e1 = x / 4 * (1 - p1)
    e2 = e1 - (p0 - p1) / 2
    c = 0.5 * (math.sqrt(1 - p0) - (1 - x) * math.sqrt(1 - p1))
    root = math.sqrt((e1 - e2) ** 2 + 4 * c * c)
    e3 = -0.5 * ((e1 + e2) + root)
    e4 = -0.5 * ((e1 + e2) - root)
    return DifferenceSpectrum(e1=e1, e2=e2, e3=e3, e4=e4, c=c)


def _choi_trace_norm(n: int, p0: float, p1: float) -> float:
    s = difference_spectrum(n, p0, p1)
    return abs(s.e1) + abs(s.e2) + abs(s.e3) + abs(s.e4)


def _edge_gradient(n: int, p0: float, p1: float) -> float:
    """d(|e3|+|e4|)/dp1 for the damping-Choi difference."""
    x = xi(n)
    num = p1 - p0 + 2 * (1 - x) * (math.sqrt((1 - p0) / (1 - p1)) - (1 - x))
    den = 4 * math.sqrt(
        ((p0 - p1) / 2) ** 2 + (math.sqrt(1 - p0) - (1 - x) * math.sqrt(1 - p1)) ** 2
    )
    return num / den


def trace_min_location(n: int, p0: float) -> float | None:
    """Location in p1 of the trace-norm minimum for the damping-Choi resource.

    Returns the discontinuity point (2 p0 - xi)/(2 - xi) while the trace-norm
    gradient stays negative up to it; otherwise the pre-discontinuity
    stationary point found by bracketed root finding.  None when p0 < xi/2
    (the candidate would need a negative p1).
    """
    x = xi(n)
    if p0 < x / 2:
        return None
    p_disc = min((2 * p0 - x) / (2 - x), 1.0)
    eps = 1e-9

    def grad_pre(p1: float) -> float:
        return _edge_gradient(n, p0, p1) - 0.5

    if p_disc <= eps or grad_pre(p_disc - eps) <= 0:
        return p_disc
    if grad_pre(0.0) >= 0:
        return 0.0
    p_star = brentq(grad_pre, 0.0, p_disc - eps, xtol=1e-14)
    if _choi_trace_norm(n, p0, p_star) <= _choi_trace_norm(n, p0, p_disc):
        return float(p_star)
    return p_disc


def p0_cross(xi_val: float) -> float:
    """Target damping where the trace-norm minimum crosses p1 = (p0-xi)/(1-xi)."""
    if not 0 <= xi_val <= XI_MAX + 1e-12:
        raise ValueError(f"xi out of [0, {XI_MAX:.6f}]: {xi_val}")
    num = (
        1 + 4 * xi_val - 8 * xi_val ** 2 + 5 * xi_val ** 3
        + (1 - xi_val) ** 3.5 - xi_val ** 4
    )
    return num / (3 - 3 * xi_val + xi_val ** 2)


# ----------------------------------------------------------------------------
# alternate (rank-1 tensor) resource study
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class AlternateXYZ:
    x: float
    y: float
    z: float


def _alternate_terms(n: int):
    """Coefficient tables of the x/y/z sums; no dependence on the parameter a."""
    ss_min = 1 if n % 2 == 0 else 0
    bulk = []
    for ss in range(ss_min, n, 2):
        for mm in range(-ss, ss + 1, 2):
            s, m = ss / 2.0, mm / 2.0
            common = math.factorial(n) / (
                2 * math.factorial((n - 1 - ss) // 2) * math.factorial((n + 1 + ss) // 2) * (ss + 1)
            )
            wa = (n + 1) / 2.0 - s
            wb = (n + 3) / 2.0 + s
            cx = common * (wa ** -0.5 * (s - m) + wb ** -0.5 * (s + m + 1)) ** 2
            cy = common * (s + m) * (s - m + 1) * (wa ** -0.5 - wb ** -0.5) ** 2
            cz = common * (
                (s * s - m * m) / wa
                + 2 * (wa * wb) ** -0.5 * (s * s + m * m + s)
                + ((s + 1) ** 2 - m * m) / wb
            )
            bulk.append((m, cx, cy, cz))
    edge = []
    for mm in range(-(n + 1), n + 2, 2):
        m = mm / 2.0
        ce = ((n + 1) / 2.0 + m) * ((n + 1) / 2.0 - m) / (2.0 * n * (n + 1))
        cy = ((n - 1) / 2.0 + m) * ((n + 1) / 2.0 + m) / (2.0 * n * (n + 1))
        edge.append((m, ce, cy))
    return bulk, edge


def _apow(base: float, expo: float) -> float:
    # exponents are only negative where the coefficient already vanished
    if base == 0.0:
        return 1.0 if expo == 0 else 0.0
    return base ** expo


def alternate_xyz(n: int, a: float) -> AlternateXYZ:
    """The three independent Choi entries for n alternate ports."""
    if not 0 <= a <= 1:
        raise ValueError(f"parameter out of [0,1]: {a}")
    bulk, edge = _alternate_terms(n)
    x = y = z = 0.0
    for m, cx, cy, cz in bulk:
        x += cx * _apow(a, (n + 1) / 2 + m) * _apow(1 - a, (n - 1) / 2 - m)
        y += cy * _apow(a, (n - 1) / 2 + m) * _apow(1 - a, (n + 1) / 2 - m)
        z += cz * _apow(a, n / 2 + m) * _apow(1 - a, n / 2 - m)
    for m, ce, cy in edge:
        if ce:
            x += ce * _apow(a, (n + 1) / 2 + m) * _apow(1 - a, (n - 1) / 2 - m)
            z -= ce * _apow(a, n / 2 + m) * _apow(1 - a, n / 2 - m)
        if cy:
            y += cy * _apow(a, (n - 1) / 2 + m) * _apow(1 - a, (n + 1) / 2 - m)
    return AlternateXYZ(x=x, y=y, z=z)


def alternate_choi(n: int, a: float) -> np.ndarray:
    """Output Choi matrix for n alternate ports, assembled from x, y, z."""
    v = alternate_xyz(n, a)
    return np.array(
        [
            [v.x, 0, 0, v.z],
            [0, 0.5 - v.x, 0, 0],
            [0, 0, v.y, 0],
            [v.z, 0, 0, 0.5 - v.y],
        ],
        dtype=complex,
    )


def _bracketed_root(fn, lo: float, hi: float, samples: int = 256,
                    zero_tol: float = 1e-13) -> float | None:
    """First sign change of fn on [lo, hi], refined by brentq."""
    grid = np.linspace(lo, hi, samples)
    vals = [fn(g) for g in grid]
    for k in range(len(grid) - 1):
        if abs(vals[k]) <= zero_tol:
            return float(grid[k])
        if vals[k] * vals[k + 1] < 0:
            return float(brentq(fn, grid[k], grid[k + 1], xtol=1e-12))
    if abs(vals[-1]) <= zero_tol:
        return float(grid[-1])
    return None


def alternate_known_point(n: int, p0: float) -> tuple[float, float] | None:
    """(a, diamond norm) at the alternate-resource point with scalar bounds.

    Solves x(a) - 1/2 = y(a) - p0/2 on a in [1/2, 1]; there the output-traced
    modulus of the Choi difference is scalar, so the diamond norm equals the
    trace norm and has the closed form used here.  None when p0 is not
    reachable (the reachable set starts at p0 = xi(n), at a = 1/2).
    """

    def gap(a: float) -> float:
        v = alternate_xyz(n, a)
        return (v.x - 0.5) - (v.y - p0 / 2)

    a_known = _bracketed_root(gap, 0.5, 1.0 - 1e-9)
    if a_known is None:
        return None
    v = alternate_xyz(n, a_known)
    d2 = (p0 - 2 * v.y) + math.sqrt(
        (p0 - 2 * v.y) ** 2 + (math.sqrt(1 - p0) - 2 * v.z) ** 2
    )
    return a_known, d2


def alternate_trace_min_a(n: int, p0: float) -> float | None:
    """a with y(a) = p0/2 on [1/2, 1], near-optimal for the diamond norm."""

    def gap(a: float) -> float:
        return alternate_xyz(n, a).y - p0 / 2

    return _bracketed_root(gap, 0.5, 1.0 - 1e-9)


@dataclass(frozen=True)
class AlternateDerivatives:
    dy_da: float
    dz_da: float
    dp0_da: float
    d2_sum_da2_at_half: float


def _dy_da(n: int, a: float) -> float:
    bulk, edge = _alternate_terms(n)
    y = alternate_xyz(n, a).y
    total = n * (1 - 2 * a) / (2 * a * (1 - a)) * y
    for m, _, cy, _ in bulk:
        total += (
            _apow(a, (n - 1) / 2 + m) * _apow(1 - a, (n + 1) / 2 - m)
            * (2 * m - 1) / (2 * a * (1 - a)) * cy
        )
    for m, _, cy in edge:
        if cy:
            total += (
                _apow(a, (n - 1) / 2 + m) * _apow(1 - a, (n + 1) / 2 - m)
                * (2 * m - 1) / (2 * a * (1 - a)) * cy
            )
    return total


def _dz_da(n: int, a: float) -> float:
    bulk, edge = _alternate_terms(n)
    z = alternate_xyz(n, a).z
    total = n * (1 - 2 * a) / (2 * a * (1 - a)) * z
    for m, _, _, cz in bulk:
        total += (
            _apow(a, n / 2 + m) * _apow(1 - a, n / 2 - m) * m / (a * (1 - a)) * cz
        )
    for m, ce, _ in edge:
        if ce:
            total -= _apow(a, n / 2 + m) * _apow(1 - a, n / 2 - m) * m / (a * (1 - a)) * ce
    return total


def symmetric_sum_curvature(n: int, h: float = 1e-3) -> float:
    """Second derivative of y[a] + y[1-a] at a = 1/2, five-point stencil."""

    def w(a: float) -> float:
        return alternate_xyz(n, a).y + alternate_xyz(n, 1 - a).y

    return (
        -w(0.5 + 2 * h) + 16 * w(0.5 + h) - 30 * w(0.5) + 16 * w(0.5 - h) - w(0.5 - 2 * h)
    ) / (12 * h * h)


def alternate_derivatives(n: int, a: float) -> AlternateDerivatives:
    """Analytic derivatives of the alternate-resource sums at (n, a)."""
    if not 0 < a < 1:
        raise ValueError(f"derivatives are singular at a in {{0, 1}}: a={a}")
    dy = _dy_da(n, a)
    dz = _dz_da(n, a)
    dp0 = 2 * (dy - _dy_da(n, 1 - a))
    return AlternateDerivatives(
        dy_da=dy, dz_da=dz, dp0_da=dp0, d2_sum_da2_at_half=symmetric_sum_curvature(n)
    )

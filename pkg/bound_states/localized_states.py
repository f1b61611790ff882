"""Localized states on the ring arms

A localized state has no amplitude on the leads, so only the arm
amplitudes (phi2, psi2, phi3, psi3) enter the six junction equations
M a = 0. A state exists when M drops to rank 3 or less.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import scipy.linalg
from scipy.integrate import simpson
from scipy.optimize import minimize_scalar

from ..core.errors import (ArgumentError, DegenerateStateError, DomainError,
                           PreconditionError)
from ..core.node_params import NodeParams
from ..core.ring_system import FluxPhase, RingSystem
from ..core.su3 import build_V

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-10
HIT_THRESHOLD = 1e-6
REFINE_WIDTH = 1e-12
NORMALIZATION_FLOOR = 1e-12
_SQRT_EPS = math.sqrt(np.finfo(float).eps)


@dataclass(frozen=True)
class MatchingMatrix:
    """The 6x4 matrix of junction equations for lead-free arm amplitudes

    Rows 0-2 come from node I, rows 3-5 from node II; columns act on
    (phi2, psi2, phi3, psi3). Each row is rescaled to unit-modulus
    coefficients, which leaves the rank unchanged.
    """

    entries: np.ndarray
    k: float

    def singular_values(self) -> np.ndarray:
        return scipy.linalg.svdvals(self.entries)

    def deficiency(self) -> float:
        """sigma_min / sigma_max"""
        s = self.singular_values()
        return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def _node_rows(V: np.ndarray, p: NodeParams, k: float, xi: float) -> np.ndarray:
    half = np.asarray(p.theta) / 2.0
    kappa = np.sin(half) + 1j * k * p.L0 * np.cos(half)
    kappa = kappa / np.abs(kappa)
    phase = np.exp(2j * k * xi)
    rows = np.empty((3, 4), dtype=complex)
    for i in range(3):
        v2, v3 = V[0, i].conjugate(), V[1, i].conjugate()
        rows[i] = [v2 * kappa[i] * phase, v2 * kappa[i].conjugate(),
                   v3 * kappa[i] * phase, v3 * kappa[i].conjugate()]
    return rows


def build_M(ring: RingSystem, k: float, flux: Optional[FluxPhase] = None) -> MatchingMatrix:
    """Matching matrix at wavenumber k

    Row i of node I reads V*_{2i} kappa_i e^{2ik xi_I}, V*_{2i} kappa_i^*,
    V*_{3i} kappa_i e^{2ik xi_I}, V*_{3i} kappa_i^* with
    kappa_i proportional to 1 + ikL_(i); node II uses V~ and xi_II.
    A flux replaces V~ by P V~.

    Args:
        ring: Ring geometry and junctions
        k: Wavenumber (> 0)
        flux: Optional AB phase threading the ring
    """
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"Wavenumber k must be positive and finite, got {k}")
    V_II = build_V(ring.node_II)
    if flux is not None and flux.theta_B != 0.0:
        half = flux.theta_B / 2.0
        V_II = np.diag([np.exp(1j * half), np.exp(-1j * half), 1.0]) @ V_II
    entries = np.vstack([
        _node_rows(build_V(ring.node_I), ring.node_I, k, ring.xi_I),
        _node_rows(V_II, ring.node_II, k, ring.xi_II),
    ])
    return MatchingMatrix(entries=entries, k=k)


def numerical_rank(M: Union[MatchingMatrix, np.ndarray], rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Count singular values above rel_tol * sigma_max (0 for the zero matrix)"""
    if not 0 < rel_tol < 1:
        raise ArgumentError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    entries = M.entries if isinstance(M, MatchingMatrix) else np.asarray(M)
    s = scipy.linalg.svdvals(entries)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def find_localized_k(ring: RingSystem, k_min: float, k_max: float, grid_points: int,
                     flux: Optional[FluxPhase] = None) -> List[Tuple[float, int]]:
    """Wavenumbers in the closed interval [k_min, k_max] where M loses rank

    sigma_min/sigma_max is sampled on a uniform grid. Every strict interior
    local minimum is refined by golden-section search down to a bracket of
    1e-12 (k_max - k_min). The two end cells are searched with a bounded
    minimizer whose bounds are admissible answers, so states sitting on
    or just inside k_min and k_max are found too. A candidate is kept when
    its refined ratio is below 1e-6.

    Returns:
        Sorted list of (k, numerical rank of M(k))
    """
    if not (k_min > 0 and k_max > k_min and math.isfinite(k_max)):
        raise ArgumentError(f"Need 0 < k_min < k_max, got [{k_min}, {k_max}]")
    if grid_points < 2:
        raise ArgumentError(f"grid_points must be >= 2, got {grid_points}")

    def ratio(k: float) -> float:
        return build_M(ring, k, flux).deficiency()

    grid = np.linspace(k_min, k_max, grid_points)
    values = np.array([ratio(k) for k in grid])
    width = REFINE_WIDTH * (k_max - k_min)

    candidates: List[Tuple[float, float]] = []
    if grid_points == 2 or values[0] <= values[1]:
        candidates.append(_refine_end_cell(ratio, grid[0], grid[1], values[0], values[1], width))
    for i in range(1, grid_points - 1):
        if values[i] < values[i - 1] and values[i] < values[i + 1]:
            candidates.append(_refine_bracket(ratio, grid[i - 1], grid[i], grid[i + 1], width))
    if grid_points > 2 and values[-1] <= values[-2]:
        candidates.append(_refine_end_cell(ratio, grid[-2], grid[-1], values[-2], values[-1], width))

    hits: List[Tuple[float, int]] = []
    for k_star, fun in sorted(candidates):
        if fun >= HIT_THRESHOLD:
            continue
        if hits and abs(k_star - hits[-1][0]) <= 10 * width:
            continue
        rank = numerical_rank(build_M(ring, k_star, flux))
        logger.debug("Localized state candidate k=%.17g ratio=%.3e rank=%d", k_star, fun, rank)
        hits.append((k_star, rank))
    return hits


def _refine_bracket(ratio: Callable[[float], float], a: float, b: float, c: float,
                    width: float) -> Tuple[float, float]:
    """Golden-section refinement of a bracketed minimum, f(b) < f(a), f(c)"""
    xtol = max(width / (2.0 * b), 4 * np.finfo(float).eps)
    result = minimize_scalar(ratio, bracket=(a, b, c), method='golden', options={'xtol': xtol})
    return float(result.x), float(result.fun)


def _refine_end_cell(ratio: Callable[[float], float], lo: float, hi: float,
                     f_lo: float, f_hi: float, width: float) -> Tuple[float, float]:
    """Minimum of the ratio on [lo, hi], the bounds included

    The bounded search stops at about sqrt(eps) |k|. When its answer is
    strictly bracketed it is polished by golden section; a bound that beats
    it wins outright.
    """
    result = minimize_scalar(ratio, bounds=(lo, hi), method='bounded', options={'xatol': width})
    best = (float(result.x), float(result.fun))
    x = best[0]
    h = 4.0 * (_SQRT_EPS * abs(x) + width)
    a, c = max(lo, x - h), min(hi, x + h)
    if a < x < c:
        f_a, f_c = ratio(a), ratio(c)
        if best[1] < f_a and best[1] < f_c:
            best = _refine_bracket(ratio, a, x, c, width)
    for edge, f_edge in ((lo, f_lo), (hi, f_hi)):
        if f_edge < best[1]:
            best = (float(edge), float(f_edge))
    return best


@dataclass(frozen=True)
class LocalizedState:
    """Normalized localized state of a symmetric ring at k = n pi / d

    phi_j(x) = (C_j sin k(x - xi_II) + D_j cos k(x - xi_II)) / N on each
    arm. C and D carry the common factor prod_i sin(theta_(i)/2), which
    keeps them finite for every node; it cancels in phi.
    """

    k: float
    n: int
    xi_I: float
    xi_II: float
    C2: complex
    D2: complex
    C3: complex
    D3: complex
    N: float

    @property
    def d(self) -> float:
        return self.xi_I - self.xi_II

    def evaluate(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Arm wavefunctions (phi2, phi3) at positions x in [xi_II, xi_I]"""
        u = self.k * (np.asarray(x, dtype=float) - self.xi_II)
        s, c = np.sin(u), np.cos(u)
        return (self.C2 * s + self.D2 * c) / self.N, (self.C3 * s + self.D3 * c) / self.N

    def plane_wave_amplitudes(self) -> np.ndarray:
        """(phi2, psi2, phi3, psi3) of the e^{ikx}, e^{-ikx} decomposition"""
        ahead = np.exp(-1j * self.k * self.xi_II) / (2.0 * self.N)
        behind = np.exp(1j * self.k * self.xi_II) / (2.0 * self.N)
        return np.array([ahead * (self.D2 - 1j * self.C2), behind * (self.D2 + 1j * self.C2),
                         ahead * (self.D3 - 1j * self.C3), behind * (self.D3 + 1j * self.C3)])

    def node_values(self) -> Dict[str, complex]:
        phi2_I, phi3_I = self.evaluate(np.array([self.xi_I]))
        return {
            'phi2_II': self.D2 / self.N,
            'phi3_II': self.D3 / self.N,
            'phi2_I': complex(phi2_I[0]),
            'phi3_I': complex(phi3_I[0]),
            'sign': 1 if math.cos(self.k * self.d) > 0 else -1,
        }

    def sample(self, points_per_arm: int = 513) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.linspace(self.xi_II, self.xi_I, points_per_arm)
        phi2, phi3 = self.evaluate(x)
        return x, phi2, phi3

    def norm_by_quadrature(self, panels: int = 2048) -> float:
        """Composite Simpson estimate of the integral of |phi2|^2 + |phi3|^2"""
        x, phi2, phi3 = self.sample(panels + 1)
        return float(simpson(np.abs(phi2) ** 2, x=x) + simpson(np.abs(phi3) ** 2, x=x))


def _stabilized_sums(weights: np.ndarray, s: np.ndarray, c: np.ndarray,
                     kL0: float) -> Tuple[complex, complex]:
    others_s = np.array([s[1] * s[2], s[2] * s[0], s[0] * s[1]])
    others_c = np.array([c[1] * c[2], c[2] * c[0], c[0] * c[1]])
    C = kL0 * np.sum(weights * c * others_s)
    D = kL0 ** 2 * np.sum(weights * s * others_c)
    return complex(C), complex(D)


def localized_wavefunction(ring: RingSystem, n: int) -> LocalizedState:
    """Normalized localized state of a symmetric ring at k = n pi / d

    Arm amplitudes satisfy b = -K a with K = V diag(kL_(i)) V^dagger,
    a = (A2, A3) the sine and b = (B2, B3) the cosine coefficients, and
    the lead slot of K a vanishing. Hence
    (A2, A3) = (K_12, -K_02) and (B2, B3) = (adj(K)_12, -adj(K)_02) in
    matrix positions (0: x2, 1: x3, 2: x1).

    Raises:
        PreconditionError: ring is not symmetric
        DegenerateStateError: normalization vanishes (rank M < 3)
    """
    if not ring.symmetric():
        raise PreconditionError("Localized wavefunctions are built for symmetric rings only")
    if int(n) != n or n < 1:
        raise ArgumentError(f"Resonance index n must be a positive integer, got {n}")
    n = int(n)
    d = ring.d
    k = n * math.pi / d
    node = ring.node_I
    V = build_V(node)
    half = np.asarray(node.theta) / 2.0
    s, c = np.sin(half), np.cos(half)
    kL0 = k * node.L0

    C2, D2 = _stabilized_sums(V[2, :] * V[1, :].conj(), s, c, kL0)
    C3, D3 = _stabilized_sums(V[2, :] * V[0, :].conj(), s, c, kL0)
    C3, D3 = -C3, -D3

    N = math.sqrt(0.5 * d * (abs(C2) ** 2 + abs(D2) ** 2 + abs(C3) ** 2 + abs(D3) ** 2))
    if N <= NORMALIZATION_FLOOR:
        raise DegenerateStateError(
            f"Normalization {N:.3e} vanishes at n={n}: the localized space is degenerate")
    return LocalizedState(k=k, n=n, xi_I=ring.xi_I, xi_II=ring.xi_II,
                          C2=C2, D2=D2, C3=C3, D3=D3, N=N)

"""Reference solvers that never touch the closed-form S-matrices

Every solver here writes the junction condition
(U - I) Psi + i L0 (U + I) Psi' = 0 directly in terms of plane-wave
amplitudes and solves the resulting linear system. Only the junction
unitary U = V D V^dagger is shared with the production code.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg

from ..core.errors import ArgumentError, DomainError, SingularAssemblyError
from ..core.node_params import NodeParams
from ..core.ring_system import NO_FLUX, FluxPhase, RingSystem
from ..core.su3 import build_U
from ..utils.linalg import SVDSolver

logger = logging.getLogger(__name__)

NEAR_SINGULAR_COND = 1e12
CONSISTENCY_TOL = 1e-8

# Amplitude order: phi1, psi1, phi2, psi2, phi3, psi3, phi4, psi4
AMPLITUDE_NAMES = ('phi1', 'psi1', 'phi2', 'psi2', 'phi3', 'psi3', 'phi4', 'psi4')
_INDEX = {name: i for i, name in enumerate(AMPLITUDE_NAMES)}
_NODE_AXES = {'I': ('2', '3', '1'), 'II': ('2', '3', '4')}

Incoming = Literal['from_x1', 'from_x4']


@dataclass(frozen=True)
class AmplitudeVector:
    """The eight plane-wave amplitudes of a stationary scattering state

    Attributes:
        values: complex array ordered phi1, psi1, ..., phi4, psi4
        k: Wavenumber
        near_singular: True when the linear system had condition number > 1e12
        condition: 2-norm condition number of the solved system
    """

    values: np.ndarray
    k: float
    near_singular: bool = False
    condition: float = 1.0

    def __getitem__(self, name: str) -> complex:
        return complex(self.values[_INDEX[name]])

    def current_residual(self) -> float:
        """(|phi1|^2 - |psi1|^2) - (|phi4|^2 - |psi4|^2), scaled by k"""
        v = np.abs(self.values) ** 2
        inflow = v[_INDEX['phi1']] - v[_INDEX['psi1']]
        outflow = v[_INDEX['phi4']] - v[_INDEX['psi4']]
        return float(self.k * (inflow - outflow))


def _check_wavenumber(k: float) -> None:
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"Wavenumber k must be positive and finite, got {k}")


def _junction_rows(U: np.ndarray, L0: float, k: float, xi: float, axes) -> np.ndarray:
    """Rows of (U - I) Psi + i L0 (U + I) Psi' as a 3x8 map on all amplitudes

    On every wire Phi_j(x) = phi_j e^{ikx} + psi_j e^{-ikx}.
    """
    psi = np.zeros((3, 8), dtype=complex)
    dpsi = np.zeros((3, 8), dtype=complex)
    ahead, behind = np.exp(1j * k * xi), np.exp(-1j * k * xi)
    for row, axis in enumerate(axes):
        psi[row, _INDEX['phi' + axis]] = ahead
        psi[row, _INDEX['psi' + axis]] = behind
        dpsi[row, _INDEX['phi' + axis]] = 1j * k * ahead
        dpsi[row, _INDEX['psi' + axis]] = -1j * k * behind
    eye = np.eye(3)
    return (U - eye) @ psi + 1j * L0 * (U + eye) @ dpsi


def solve_ring_direct(ring: RingSystem, k: float, f: FluxPhase = NO_FLUX,
                      incoming: Incoming = 'from_x1') -> AmplitudeVector:
    """Solve the six junction equations of the whole ring

    Args:
        ring: Ring geometry and junctions
        k: Wavenumber (> 0)
        f: AB phase; node II uses P U P^dagger
        incoming: 'from_x1' fixes phi1=1, psi4=0; 'from_x4' fixes phi1=0, psi4=1

    Returns:
        AmplitudeVector; ``near_singular`` is set when the system's condition
        number exceeds 1e12 (the minimum-norm solution is returned then)

    Raises:
        SingularAssemblyError: the system is singular and inconsistent
    """
    _check_wavenumber(k)
    if incoming not in ('from_x1', 'from_x4'):
        raise ArgumentError(f"incoming must be 'from_x1' or 'from_x4', got {incoming!r}")

    half = f.theta_B / 2.0
    P = np.diag([np.exp(1j * half), np.exp(-1j * half), 1.0])
    U_II = build_U(ring.node_II)
    rows = np.vstack([
        _junction_rows(build_U(ring.node_I), ring.node_I.L0, k, ring.xi_I, _NODE_AXES['I']),
        _junction_rows(P @ U_II @ P.conj().T, ring.node_II.L0, k, ring.xi_II, _NODE_AXES['II']),
    ])

    fixed = np.zeros(8, dtype=complex)
    fixed[_INDEX['phi1' if incoming == 'from_x1' else 'psi4']] = 1.0
    known = [_INDEX['phi1'], _INDEX['psi4']]
    unknown = [i for i in range(8) if i not in known]
    A = rows[:, unknown]
    b = -rows @ fixed

    solver = SVDSolver(A)
    condition = solver.cond
    near_singular = condition > NEAR_SINGULAR_COND
    if near_singular:
        x = solver.lstsq(b)
        residual = solver.residual(x, b)
        if residual > CONSISTENCY_TOL:
            raise SingularAssemblyError(
                f"Ring equations singular and inconsistent at k={k} (residual {residual:.3e})")
        logger.warning("Near-singular ring system at k=%s (cond %.3e); minimum-norm solution used",
                       k, condition)
    else:
        x = scipy.linalg.lu_solve(scipy.linalg.lu_factor(A), b)

    values = fixed.copy()
    values[unknown] = x
    return AmplitudeVector(values=values, k=k, near_singular=near_singular, condition=condition)


def solve_junction_direct(p: NodeParams, k: float, node_kind: Literal['I', 'II'],
                          incoming: int) -> np.ndarray:
    """Outgoing amplitudes of one node for a unit wave on one axis

    Args:
        p: Node parameters
        k: Wavenumber (> 0)
        node_kind: 'I' (incoming phi, outgoing psi) or 'II' (incoming psi, outgoing phi)
        incoming: Slot 0, 1 or 2 in the node's axis order

    Returns:
        Three outgoing amplitudes in the node's axis order, i.e. column
        ``incoming`` of the node S-matrix
    """
    _check_wavenumber(k)
    if node_kind not in _NODE_AXES:
        raise ArgumentError(f"node_kind must be 'I' or 'II', got {node_kind!r}")
    if incoming not in (0, 1, 2):
        raise ArgumentError(f"incoming slot must be 0, 1 or 2, got {incoming!r}")

    axes = _NODE_AXES[node_kind]
    rows = _junction_rows(build_U(p), p.L0, k, p.xi, axes)
    in_name, out_name = ('phi', 'psi') if node_kind == 'I' else ('psi', 'phi')
    in_cols = [_INDEX[in_name + axis] for axis in axes]
    out_cols = [_INDEX[out_name + axis] for axis in axes]
    try:
        return scipy.linalg.solve(rows[:, out_cols], -rows[:, in_cols[incoming]])
    except scipy.linalg.LinAlgError as exc:
        raise SingularAssemblyError(f"Junction system singular at k={k}: {exc}") from exc


def junction_smatrix_direct(p: NodeParams, k: float, node_kind: Literal['I', 'II']) -> np.ndarray:
    """Node S-matrix reconstructed column by column from solve_junction_direct"""
    return np.column_stack([solve_junction_direct(p, k, node_kind, j) for j in range(3)])


def expm_series(A: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """Matrix exponential by scaling and squaring of the Taylor series

    The matrix is halved until its max-row-sum norm is at most 1/2, the
    series is summed until a term drops below ``tol``, and the result is
    squared back.
    """
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol}")
    A = np.asarray(A, dtype=complex)
    norm = np.max(np.sum(np.abs(A), axis=1)) if A.size else 0.0
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    scaled = A / (2.0 ** squarings)

    result = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for order in range(1, 200):
        term = term @ scaled / order
        result = result + term
        if np.max(np.abs(term)) < tol:
            break
    for _ in range(squarings):
        result = result @ result
    return result

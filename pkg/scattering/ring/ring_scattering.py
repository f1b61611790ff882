"""Ring S-matrix assembly and the symmetric-ring closed forms"""

import cmath
import logging
import math
from dataclasses import replace
from typing import Tuple

import numpy as np

from ...core.errors import ArgumentError, DomainError, ExtremalCaseError, SingularAssemblyError
from ...core.node_params import NodeParams
from ...core.ring_system import RingResponse, RingSystem
from ...core.su3 import build_V
from ...utils.linalg import SVDSolver
from ..junction.junction_scattering import NodeScattering, s0_entry, scattering_matrix

logger = logging.getLogger(__name__)

SINGULAR_DET_TOL = 1e-12
# Below this |det(I - s s~)| the 2x2 inverse loses digits; switch to a stable path.
NEAR_SINGULAR_DET = 1e-4
EXTREMAL_TOL = 1e-12
LIMIT_RCOND = 1e-10
LIMIT_TOL = 1e-8
RESONANCE_SNAP = 8 * np.finfo(float).eps

_I2 = np.eye(2, dtype=complex)

# Dimensionless sample wavenumbers (in units of 1/L0) for the symmetry test.
_SYMMETRY_SAMPLES = (0.37, 1.0, 2.9)


def _inverse_2x2(A: np.ndarray) -> Tuple[np.ndarray, complex]:
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    adj = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])
    return adj / det, complex(det)


def round_trip_phase(k: float, d: float) -> Tuple[complex, complex]:
    """E = e^{2ikd} together with 1 - E

    1 - E is evaluated as -2i sin(kd) e^{ikd} so that it keeps full relative
    accuracy next to kd = n pi. A kd within a few ulp of n pi is the
    resonance itself and gives E = 1 exactly.
    """
    phase = k * d
    n = round(phase / math.pi)
    if n > 0 and abs(phase - n * math.pi) <= RESONANCE_SNAP * phase:
        return 1.0 + 0j, 0j
    one_minus_E = -2j * math.sin(phase) * cmath.exp(1j * phase)
    return cmath.exp(2j * phase), one_minus_E


def assembly_determinant(S_I: NodeScattering, S_II: NodeScattering) -> complex:
    """det(I - s s~), the denominator shared by every S_R entry"""
    s, _, _, _ = S_I.blocks()
    st, _, _, _ = S_II.blocks()
    A = _I2 - s @ st
    return complex(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])


def _check_pair(S_I: NodeScattering, S_II: NodeScattering) -> None:
    if S_I.node_kind != 'I' or S_II.node_kind != 'II':
        raise ArgumentError(
            f"Expected node I then node II, got {S_I.node_kind} and {S_II.node_kind}")
    if not math.isclose(S_I.k, S_II.k, rel_tol=1e-15, abs_tol=0.0):
        raise ArgumentError(f"Node matrices built at different k: {S_I.k} vs {S_II.k}")


def ring_smatrix(S_I: NodeScattering, S_II: NodeScattering) -> np.ndarray:
    """Assemble the 2x2 ring S-matrix

    S_R maps incoming (phi1, psi4) to outgoing (psi1, phi4):

        (S_R)11 = s11 + r1 s~ (I - s s~)^-1 c1
        (S_R)21 = r2 (I - s s~)^-1 c1
        (S_R)12 = r1 (I - s~ s)^-1 c2
        (S_R)22 = s~44 + r2 (I - s s~)^-1 s c2

    Args:
        S_I: Node I scattering at wavenumber k
        S_II: Node II scattering at the same k

    Returns:
        2x2 complex matrix

    Raises:
        SingularAssemblyError: |det(I - s s~)| < 1e-12 (a resonant or
            decoupled configuration where a ring mode does not couple out)
    """
    _check_pair(S_I, S_II)
    s, c1, r1, s11 = S_I.blocks()
    st, c2, r2, s44 = S_II.blocks()

    inv_a, det = _inverse_2x2(_I2 - s @ st)
    if abs(det) < SINGULAR_DET_TOL:
        raise SingularAssemblyError(
            f"det(I - s s~) = {det:.3e} at k={S_I.k}: a ring mode decouples from the leads "
            f"(resonant or extremal configuration)", determinant=det)
    inv_b, _ = _inverse_2x2(_I2 - st @ s)

    S_R = np.empty((2, 2), dtype=complex)
    S_R[0, 0] = s11 + r1 @ st @ inv_a @ c1
    S_R[1, 0] = r2 @ inv_a @ c1
    S_R[0, 1] = r1 @ inv_b @ c2
    S_R[1, 1] = s44 + r2 @ inv_a @ s @ c2
    return S_R


def _limit_solve(A: np.ndarray, rhs: np.ndarray, outputs: np.ndarray, k: float) -> np.ndarray:
    """Truncated solve of A x = rhs whose discarded directions must not reach ``outputs``"""
    solver = SVDSolver(A, rcond=LIMIT_RCOND)
    x = solver.lstsq(rhs)
    residual = solver.residual(x, rhs)
    if residual > LIMIT_TOL:
        raise SingularAssemblyError(
            f"Ring equations inconsistent at k={k} (residual {residual:.3e})")
    null = solver.null_space()
    leakage = float(np.max(np.abs(outputs @ null))) if null.size else 0.0
    if leakage > LIMIT_TOL:
        raise SingularAssemblyError(
            f"Ring mode at k={k} leaks into the leads ({leakage:.3e}); no finite limit")
    return x


def ring_smatrix_limit(S_I: NodeScattering, S_II: NodeScattering) -> np.ndarray:
    """Ring S-matrix through a truncated-SVD solve of the arm equations

    Valid when I - s s~ is singular only along arm modes that neither the
    incoming lead waves excite nor the outgoing leads see: the amplitudes
    then have a unique limit.

    Raises:
        SingularAssemblyError: the equations are inconsistent or the
            discarded mode couples to a lead
    """
    _check_pair(S_I, S_II)
    s, c1, r1, s11 = S_I.blocks()
    st, c2, r2, s44 = S_II.blocks()

    b = _limit_solve(_I2 - s @ st, c1, np.vstack([r1 @ st, r2]), S_I.k)
    a = _limit_solve(_I2 - st @ s, c2, np.vstack([r1, r2 @ s]), S_I.k)

    S_R = np.empty((2, 2), dtype=complex)
    S_R[0, 0] = s11 + r1 @ st @ b
    S_R[1, 0] = r2 @ b
    S_R[0, 1] = r1 @ a
    S_R[1, 1] = s44 + r2 @ s @ a
    return S_R


def symmetric_RT(s11: complex, k: float, d: float) -> RingResponse:
    """Closed-form R and T of a symmetric ring

    R = s11 (1 - E) / (1 - E |s11|^2),  T = E (1 - |s11|^2) / (1 - E |s11|^2),
    with E = e^{2ikd}. The denominator is evaluated as
    (1 - E) + E (1 - |s11|^2), which stays accurate next to kd = n pi.

    Raises:
        ExtremalCaseError: |s11| >= 1 - 1e-12
    """
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"Wavenumber k must be positive and finite, got {k}")
    if not d > 0:
        raise DomainError(f"Arm length d must be positive, got {d}")
    if abs(s11) >= 1.0 - EXTREMAL_TOL:
        raise ExtremalCaseError(
            f"|s11| = {abs(s11):.15f}: node reflects the lead completely, ring is decoupled")
    transmitted = 1.0 - abs(s11) ** 2
    E, one_minus_E = round_trip_phase(k, d)
    denominator = one_minus_E + E * transmitted
    R = s11 * one_minus_E / denominator
    T = E * transmitted / denominator
    return RingResponse(R=complex(R), T=complex(T), k=k, method='closed-form')


def _node_kernel(p: NodeParams, k: float) -> np.ndarray:
    V = build_V(p)
    S0 = np.array([s0_entry(k, theta, p.L0, 'I') for theta in p.theta])
    return (V * S0) @ V.conj().T


def is_symmetric(ring: RingSystem, tol: float = 1e-12) -> bool:
    """Whether node II realises the same junction as node I

    Two nodes are the same junction when V diag(L_(i)) V^dagger agree,
    i.e. when their kernels V S_(0)(k) V^dagger agree for every k. Three
    sample wavenumbers fix the kernel because each eigenchannel is a
    Moebius function of k.
    """
    scale = math.sqrt(ring.node_I.L0 * ring.node_II.L0)
    for sample in _SYMMETRY_SAMPLES:
        k = sample / scale
        diff = _node_kernel(ring.node_I, k) - _node_kernel(ring.node_II, k)
        if np.max(np.abs(diff)) > tol:
            return False
    return True


def node_pair(ring: RingSystem, k: float) -> Tuple[NodeScattering, NodeScattering]:
    return scattering_matrix(ring.node_I, k, 'I'), scattering_matrix(ring.node_II, k, 'II')


def ring_response(ring: RingSystem, k: float) -> RingResponse:
    """R and T for unit amplitude incident from lead x1

    The assembled S-matrix is the production path while |det(I - s s~)|
    stays above 1e-4. Closer to a resonance the symmetric closed form
    (symmetric rings) or the truncated-SVD solve (other rings) supplies
    the value.

    Args:
        ring: Ring geometry and junctions
        k: Wavenumber (> 0)

    Returns:
        RingResponse with R = (S_R)11 and T = (S_R)21
    """
    S_I, S_II = node_pair(ring, k)
    det = assembly_determinant(S_I, S_II)
    if abs(det) >= NEAR_SINGULAR_DET:
        S_R = ring_smatrix(S_I, S_II)
        return RingResponse(R=complex(S_R[0, 0]), T=complex(S_R[1, 0]), k=k, method='assembly')

    if ring.symmetric():
        try:
            response = symmetric_RT(complex(S_I.matrix[2, 2]), k, ring.d)
        except ExtremalCaseError:
            if abs(det) < SINGULAR_DET_TOL:
                raise
            S_R = ring_smatrix(S_I, S_II)
            return RingResponse(R=complex(S_R[0, 0]), T=complex(S_R[1, 0]), k=k,
                                method='assembly')
        logger.debug("Symmetric closed form at k=%s (det %.3e)", k, abs(det))
        return replace(response, method='symmetric-closed-form')

    logger.debug("Decoupled limit at k=%s (det %.3e)", k, abs(det))
    S_R = ring_smatrix_limit(S_I, S_II)
    return RingResponse(R=complex(S_R[0, 0]), T=complex(S_R[1, 0]), k=k,
                        method='decoupled-limit')


def ring_smatrix_at(ring: RingSystem, k: float) -> np.ndarray:
    """Full S_R for ``ring`` at k, taking the truncated-SVD solve near singular points"""
    S_I, S_II = node_pair(ring, k)
    if abs(assembly_determinant(S_I, S_II)) >= NEAR_SINGULAR_DET:
        return ring_smatrix(S_I, S_II)
    return ring_smatrix_limit(S_I, S_II)

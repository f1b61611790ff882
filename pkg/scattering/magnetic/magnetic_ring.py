"""Aharonov-Bohm flux threading a double-Y ring

The flux is carried by a pure-gauge vector potential split symmetrically
over the two arms, chi_2 = -chi_3 = -phi_0/2. At node II the junction
condition is conjugated by P = diag(e^{i theta_B/2}, e^{-i theta_B/2}, 1),
which amounts to the frame change V~ -> P V~ (alpha~ -> alpha~ + theta_B/2).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...core.errors import DomainError, PreconditionError, SingularAssemblyError
from ...core.node_params import NodeParams
from ...core.ring_system import FluxPhase, RingResponse, RingSystem
from ...core.su3 import build_V
from ..junction.junction_scattering import NodeScattering, scattering_from_frame, scattering_matrix
from ..ring.ring_scattering import (NEAR_SINGULAR_DET, assembly_determinant, ring_smatrix,
                                    ring_smatrix_limit, round_trip_phase)

logger = logging.getLogger(__name__)

CLOSED_FORM_TOL = 1e-12
_DELTA_FLOOR = np.finfo(float).tiny


def flux_phase_matrix(f: FluxPhase) -> np.ndarray:
    """P = diag(e^{i theta_B/2}, e^{-i theta_B/2}, 1)"""
    half = f.theta_B / 2.0
    return np.diag([np.exp(1j * half), np.exp(-1j * half), 1.0 + 0j])


def flux_modified_node_II(p: NodeParams, f: FluxPhase, k: float) -> NodeScattering:
    """Node II scattering with the frame P V~ in place of V~"""
    return scattering_from_frame(flux_phase_matrix(f) @ build_V(p), p, k, 'II')


def flux_ring_smatrix(ring: RingSystem, k: float, f: FluxPhase) -> np.ndarray:
    """S_R of a flux-threaded ring (any pair of nodes), solved by truncated SVD near singular points"""
    S_I = scattering_matrix(ring.node_I, k, 'I')
    S_II = flux_modified_node_II(ring.node_II, f, k)
    if abs(assembly_determinant(S_I, S_II)) >= NEAR_SINGULAR_DET:
        return ring_smatrix(S_I, S_II)
    return ring_smatrix_limit(S_I, S_II)


@dataclass(frozen=True)
class FluxAudit:
    """Printed closed forms for a flux-threaded symmetric ring against the assembly path

    ``T_half_angle`` replaces the factor 1 + 2i e^{i theta_B/4} sin(theta_B/4)
    by its theta_B/2 counterpart.
    """

    R_closed: complex
    T_closed: complex
    T_half_angle: complex
    delta: complex
    determinant: complex
    residual_R: float
    residual_T: float
    residual_T_half_angle: float
    residual_delta: float


def flux_closed_form(S_I: NodeScattering, d: float, theta_B: float) -> dict:
    """Evaluate the closed-form R, T and Delta of a flux-threaded symmetric ring

    Args:
        S_I: Node I scattering (node II is implied by symmetry)
        d: Arm length
        theta_B: AB phase

    Returns:
        dict with keys 'R', 'T', 'T_half_angle', 'delta'

    Raises:
        SingularAssemblyError: Delta vanishes
    """
    m = S_I.matrix
    s11, s12, s13 = m[2, 2], m[2, 0], m[2, 1]
    s21, s23 = m[0, 2], m[0, 1]
    s31, s32 = m[1, 2], m[1, 0]
    E, one_minus_E = round_trip_phase(S_I.k, d)
    u = np.exp(0.5j * theta_B)
    sin_half = math.sin(theta_B / 2.0)
    transmitted = 1 - abs(s11) ** 2

    delta = ((one_minus_E + E * transmitted) * one_minus_E
             + 2j * E * sin_half * (u.conjugate() * abs(s23) ** 2 - u * abs(s32) ** 2))
    if abs(delta) < _DELTA_FLOOR:
        raise SingularAssemblyError(f"Closed-form denominator vanishes ({delta:.3e})",
                                    determinant=complex(delta))

    R = (s11 * one_minus_E ** 2
         + 2j * E * sin_half * (u.conjugate() * s23.conjugate() * (s11 * s23 - s13 * s21)
                                - u * s32.conjugate() * (s11 * s32 - s12 * s31))) / delta

    def transmission(factor: complex) -> complex:
        bracket = (transmitted * one_minus_E * factor
                   - 2j * sin_half * (abs(s21) ** 2 - E * abs(s12) ** 2))
        return complex(E * bracket / delta)

    quarter = theta_B / 4.0
    printed_factor = 1 + 2j * np.exp(1j * quarter) * math.sin(quarter)
    half_factor = 1 + 2j * u * sin_half
    return {'R': complex(R), 'T': transmission(printed_factor),
            'T_half_angle': transmission(half_factor), 'delta': complex(delta)}


def _require_symmetric(ring: RingSystem) -> None:
    if not ring.symmetric():
        raise PreconditionError(
            "Flux response is defined for symmetric rings only (node II must mirror node I)")


def flux_ring_response(ring: RingSystem, k: float, f: FluxPhase,
                       audit: bool = False) -> RingResponse:
    """R and T of a symmetric ring threaded by flux theta_B

    The P-conjugated node II is assembled with node I. Where
    |det(I - s s~)| < 1e-4 the closed form takes over, and the decoupled
    limit covers points where that vanishes too. With ``audit`` the
    printed closed forms are evaluated as well and their deviations
    attached as ``response.audit``.

    Raises:
        PreconditionError: ring is not symmetric
        SingularAssemblyError: no finite limit exists
    """
    _require_symmetric(ring)
    S_I = scattering_matrix(ring.node_I, k, 'I')
    S_II = flux_modified_node_II(ring.node_II, f, k)
    det = assembly_determinant(S_I, S_II)
    if abs(det) >= NEAR_SINGULAR_DET:
        S_R = ring_smatrix(S_I, S_II)
        R, T, method = complex(S_R[0, 0]), complex(S_R[1, 0]), 'assembly'
    else:
        try:
            closed = flux_closed_form(S_I, ring.d, f.theta_B)
            R, T, method = closed['R'], closed['T'], 'closed-form'
        except SingularAssemblyError as exc:
            logger.debug("Decoupled limit at k=%s, theta_B=%s (%s)", k, f.theta_B, exc)
            S_R = ring_smatrix_limit(S_I, S_II)
            R, T, method = complex(S_R[0, 0]), complex(S_R[1, 0]), 'decoupled-limit'

    report: Optional[FluxAudit] = None
    if audit:
        report = _audit(S_I, S_II, ring.d, f.theta_B, R, T)
    return RingResponse(R=R, T=T, k=k, flux_phase=f.theta_B, method=method, audit=report)


def _audit(S_I: NodeScattering, S_II: NodeScattering, d: float, theta_B: float,
           R: complex, T: complex) -> Optional[FluxAudit]:
    try:
        closed = flux_closed_form(S_I, d, theta_B)
    except SingularAssemblyError as exc:
        logger.debug("Closed forms undefined at k=%s, theta_B=%s: %s", S_I.k, theta_B, exc)
        return None
    determinant = assembly_determinant(S_I, S_II)
    return FluxAudit(
        R_closed=closed['R'], T_closed=closed['T'], T_half_angle=closed['T_half_angle'],
        delta=closed['delta'], determinant=determinant,
        residual_R=abs(closed['R'] - R), residual_T=abs(closed['T'] - T),
        residual_T_half_angle=abs(closed['T_half_angle'] - T),
        residual_delta=abs(closed['delta'] - determinant))


def flux_RT_special(k: float, d: float, xi_I: float, f: FluxPhase) -> RingResponse:
    """Switching formulas for alpha=gamma=a=0, beta=delta=b=pi/4, L1=L2=0, L3 -> inf

    With E = e^{2ikd} and w = e^{-i theta_B}:

        R = -e^{2ik xi_I} E (w - 1)^2 / (E (w + 1)^2 - 4w)
        T = 2 E e^{-i theta_B/2} (E - 1)(w + 1) / (E (w + 1)^2 - 4w)

    The denominator vanishes only for E = 1 together with theta_B = 2n pi,
    where the common factor (E - 1) cancels and the flux-free resonance
    R = 0, T = (-1)^n E is returned.

    Raises:
        SingularAssemblyError: vanishing denominator away from theta_B = 2n pi
    """
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"Wavenumber k must be positive and finite, got {k}")
    if not d > 0:
        raise DomainError(f"Arm length d must be positive, got {d}")
    theta_B = f.theta_B
    E = np.exp(2j * k * d)
    w = np.exp(-1j * theta_B)
    denominator = E * (w + 1) ** 2 - 4 * w
    if abs(denominator) < CLOSED_FORM_TOL:
        if abs(math.sin(theta_B / 2.0)) < CLOSED_FORM_TOL:
            sign = 1.0 if math.cos(theta_B / 2.0) > 0 else -1.0
            return RingResponse(R=0j, T=complex(sign * E), k=k, flux_phase=theta_B,
                                method='resonance-limit')
        raise SingularAssemblyError(
            f"Switching formula denominator vanishes at k={k}, theta_B={theta_B}",
            determinant=complex(denominator))
    R = -np.exp(2j * k * xi_I) * E * (w - 1) ** 2 / denominator
    T = 2 * E * np.exp(-0.5j * theta_B) * (E - 1) * (w + 1) / denominator
    return RingResponse(R=complex(R), T=complex(T), k=k, flux_phase=theta_B, method='closed-form')

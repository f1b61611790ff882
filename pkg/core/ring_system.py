"""Value types describing a double-Y ring and its scattering response"""

import math
from dataclasses import dataclass, replace
from typing import Any, Optional

from .errors import DomainError
from .node_params import NodeParams


@dataclass(frozen=True)
class FluxPhase:
    """Aharonov-Bohm phase theta_B = e phi_0 / (hbar c), in radians"""

    theta_B: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.theta_B):
            raise DomainError(f"Flux phase must be finite, got {self.theta_B}")
        object.__setattr__(self, 'theta_B', float(self.theta_B))


NO_FLUX = FluxPhase(0.0)


@dataclass(frozen=True)
class RingSystem:
    """Two nodes joined by two arms of equal length d = xi_I - xi_II

    Attributes:
        node_I: Parameters of the node joined to lead x1
        node_II: Parameters of the node joined to lead x4
    """

    node_I: NodeParams
    node_II: NodeParams

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(
                f"Arm length d = xi_I - xi_II must be positive, got {self.d} "
                f"(xi_I={self.node_I.xi}, xi_II={self.node_II.xi})")

    @classmethod
    def mirrored(cls, node: NodeParams, d: float, xi_I: Optional[float] = None) -> 'RingSystem':
        """Symmetric ring carrying ``node`` at both ends

        Args:
            node: Junction parameters used for both nodes
            d: Arm length
            xi_I: Position of node I (defaults to d, putting node II at 0)
        """
        xi_I = d if xi_I is None else xi_I
        return cls(node.with_xi(xi_I), node.with_xi(xi_I - d))

    @property
    def d(self) -> float:
        return self.node_I.xi - self.node_II.xi

    @property
    def xi_I(self) -> float:
        return self.node_I.xi

    @property
    def xi_II(self) -> float:
        return self.node_II.xi

    def symmetric(self, tol: float = 1e-12) -> bool:
        """True when both nodes realise the same junction

        Compares the node kernels V S_0(k) V^dagger at a few sample
        wavenumbers, which is insensitive to the column phases of V and to
        the L0 gauge.
        """
        from ..scattering.ring.ring_scattering import is_symmetric
        return is_symmetric(self, tol=tol)

    def with_node_II(self, node: NodeParams) -> 'RingSystem':
        return replace(self, node_II=node)


@dataclass(frozen=True)
class RingResponse:
    """Reflection and transmission amplitudes for a wave incident on x1

    Attributes:
        R: Reflection amplitude psi_1
        T: Transmission amplitude phi_4
        k: Wavenumber
        flux_phase: AB phase theta_B (0 without flux)
        method: How the amplitudes were obtained ('assembly',
            'symmetric-closed-form', 'closed-form', 'decoupled-limit' or
            'resonance-limit')
        audit: Closed-form audit attached by flux_ring_response, if requested
    """

    R: complex
    T: complex
    k: float
    flux_phase: float = 0.0
    method: str = 'assembly'
    audit: Optional[Any] = None

    @property
    def prob_R(self) -> float:
        return abs(self.R) ** 2

    @property
    def prob_T(self) -> float:
        return abs(self.T) ** 2

    @property
    def unitarity_residual(self) -> float:
        return self.prob_R + self.prob_T - 1.0

    def __repr__(self) -> str:
        return (f"RingResponse(k={self.k:.6g}, R={self.R:.6g}, T={self.T:.6g}, "
                f"theta_B={self.flux_phase:.6g}, method='{self.method}')")

"""Scattering matrices of single Y-junction nodes"""

import math
from dataclasses import dataclass
from typing import Dict, Literal, Tuple

import numpy as np

from ...core.errors import ArgumentError, DomainError
from ...core.node_params import NodeParams
from ...core.su3 import build_V

NodeKind = Literal['I', 'II']

# Row/column order of each node's matrix; the third slot is the external lead.
AXIS_LABELS: Dict[str, Tuple[str, str, str]] = {
    'I': ('2', '3', '1'),
    'II': ('2', '3', '4'),
}


def _check_kind(node_kind: str) -> None:
    if node_kind not in AXIS_LABELS:
        raise ArgumentError(f"node_kind must be 'I' or 'II', got {node_kind!r}")


def _check_wavenumber(k: float) -> None:
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"Wavenumber k must be positive and finite, got {k}")


@dataclass(frozen=True)
class NodeScattering:
    """Unitary S-matrix of one node at wavenumber k

    Node I maps incoming (phi2, phi3, phi1) to outgoing (psi2, psi3, psi1);
    node II maps incoming (psi2, psi3, psi4) to outgoing (phi2, phi3, phi4).

    Attributes:
        matrix: 3x3 complex matrix in the node's axis order
        k: Wavenumber
        node_kind: 'I' or 'II'
    """

    matrix: np.ndarray
    k: float
    node_kind: NodeKind

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, complex]:
        """Split into arm block, lead column, lead row and lead corner

        Returns:
            (s, c, r, corner): 2x2 arm-to-arm block, arm outputs fed by the
            lead, lead output fed by the arms, lead-to-lead reflection
        """
        m = self.matrix
        return m[:2, :2], m[:2, 2], m[2, :2], complex(m[2, 2])

    @property
    def axes(self) -> Tuple[str, str, str]:
        return AXIS_LABELS[self.node_kind]

    def __repr__(self) -> str:
        return f"NodeScattering(node_kind='{self.node_kind}', k={self.k:.6g})"


def s0_entry(k: float, theta: float, L0: float, node_kind: NodeKind = 'I') -> complex:
    """Diagonal entry of S_(0) for one eigenchannel

    Uses (ikL0 cos(theta/2) + sin(theta/2)) / (ikL0 cos(theta/2) - sin(theta/2)),
    which equals (ikL + 1)/(ikL - 1) with L = L0 cot(theta/2) but stays
    finite when cot diverges. Node II takes the complex conjugate,
    (ikL - 1)/(ikL + 1).

    Args:
        k: Wavenumber (> 0)
        theta: Eigenphase theta_(i) in radians
        L0: Gauge length (> 0)
        node_kind: 'I' or 'II'

    Returns:
        Unit-modulus complex number
    """
    _check_wavenumber(k)
    _check_kind(node_kind)
    if not (math.isfinite(L0) and L0 > 0):
        raise DomainError(f"L0 must be positive and finite, got {L0}")
    s = math.sin(theta / 2.0)
    kc = k * L0 * math.cos(theta / 2.0)
    entry = complex(s, kc) / complex(-s, kc)
    return entry if node_kind == 'I' else entry.conjugate()


def scattering_from_frame(V: np.ndarray, p: NodeParams, k: float,
                          node_kind: NodeKind) -> NodeScattering:
    """Node S-matrix for an explicit eigenvector frame V

    The eigenphases, gauge length and position come from ``p``; only the
    frame is overridden. Flux-threaded node II uses this with P V.
    """
    _check_wavenumber(k)
    _check_kind(node_kind)
    S0 = np.array([s0_entry(k, theta, p.L0, node_kind) for theta in p.theta])
    sign = 1.0 if node_kind == 'I' else -1.0
    phase = np.exp(sign * 2j * k * p.xi)
    matrix = phase * (V * S0) @ V.conj().T
    return NodeScattering(matrix=matrix, k=k, node_kind=node_kind)


def scattering_matrix(p: NodeParams, k: float, node_kind: NodeKind) -> NodeScattering:
    """S_I = e^{2ik xi} V S_(0)I V^dagger or S_II = e^{-2ik xi} V S_(0)II V^dagger

    Args:
        p: Node parameters
        k: Wavenumber (> 0)
        node_kind: 'I' or 'II'

    Returns:
        NodeScattering in the node's axis order
    """
    return scattering_from_frame(build_V(p), p, k, node_kind)


def components(ns: NodeScattering) -> Dict[str, complex]:
    """Label entries with physical axes

    ``s{i}{j}`` is the amplitude from axis x_j to axis x_i. For node I the
    lead corner is ``s11``; for node II it is ``s44`` (the tilded entries).
    """
    labels = ns.axes
    return {f"s{labels[row]}{labels[col]}": complex(ns.matrix[row, col])
            for row in range(3) for col in range(3)}

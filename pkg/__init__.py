"""Quantum Ring - stationary scattering on a double Y-junction ring"""

__version__ = "1.0.0"
__author__ = "Quantum Ring Team"

from .core import NodeParams, RingSystem, RingResponse, FluxPhase, QuantumRingError
from .scattering import scattering_matrix, ring_smatrix, ring_response, flux_ring_response
from .bound_states import find_localized_k, localized_wavefunction
from .oracle import solve_ring_direct, VerificationSuite
from .ui.workbench import RingWorkbench

__all__ = ['NodeParams', 'RingSystem', 'RingResponse', 'FluxPhase', 'QuantumRingError',
           'scattering_matrix', 'ring_smatrix', 'ring_response', 'flux_ring_response',
           'find_localized_k', 'localized_wavefunction', 'solve_ring_direct',
           'VerificationSuite', 'RingWorkbench']

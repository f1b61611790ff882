"""Flux-threaded rings"""

from .magnetic_ring import (FluxAudit, flux_phase_matrix, flux_modified_node_II,
                            flux_ring_smatrix, flux_closed_form, flux_ring_response,
                            flux_RT_special)

__all__ = ['FluxAudit', 'flux_phase_matrix', 'flux_modified_node_II', 'flux_ring_smatrix',
           'flux_closed_form', 'flux_ring_response', 'flux_RT_special']

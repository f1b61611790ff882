"""Node, ring and flux-threaded ring scattering"""

from .junction import NodeScattering, s0_entry, scattering_matrix, components
from .ring import ring_smatrix, symmetric_RT, ring_response
from .magnetic import (flux_phase_matrix, flux_modified_node_II, flux_ring_response,
                       flux_RT_special)

__all__ = ['NodeScattering', 's0_entry', 'scattering_matrix', 'components',
           'ring_smatrix', 'symmetric_RT', 'ring_response',
           'flux_phase_matrix', 'flux_modified_node_II', 'flux_ring_response', 'flux_RT_special']

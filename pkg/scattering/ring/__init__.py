"""Two-node ring assembly"""

from .ring_scattering import (ring_smatrix, ring_smatrix_limit, ring_smatrix_at, symmetric_RT,
                              ring_response, is_symmetric, node_pair, round_trip_phase,
                              assembly_determinant, SINGULAR_DET_TOL, NEAR_SINGULAR_DET)

__all__ = ['ring_smatrix', 'ring_smatrix_limit', 'ring_smatrix_at', 'symmetric_RT',
           'ring_response', 'is_symmetric', 'node_pair', 'round_trip_phase',
           'assembly_determinant', 'SINGULAR_DET_TOL', 'NEAR_SINGULAR_DET']

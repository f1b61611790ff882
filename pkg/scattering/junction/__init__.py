"""Single-node scattering"""

from .junction_scattering import (NodeScattering, AXIS_LABELS, s0_entry, scattering_matrix,
                                  scattering_from_frame, components)

__all__ = ['NodeScattering', 'AXIS_LABELS', 's0_entry', 'scattering_matrix',
           'scattering_from_frame', 'components']

"""Utility functions and helpers"""

from .linalg import SVDSolver
from .sampling import (special_switch_node, three_port_node, random_node_params, random_ring,
                       perturbed_ring)

__all__ = ['SVDSolver', 'special_switch_node', 'three_port_node', 'random_node_params',
           'random_ring', 'perturbed_ring']

"""Core types, errors and the U(3) junction algebra"""

from .errors import (QuantumRingError, ArgumentError, DomainError, PreconditionError,
                     SingularAssemblyError, ExtremalCaseError, DegenerateStateError,
                     ConfigError)
from .node_params import NodeParams
from .ring_system import RingSystem, RingResponse, FluxPhase, NO_FLUX
from .su3 import gell_mann, exp_i_lambda, build_V, build_D, build_U, unitarity_residual

__all__ = ['QuantumRingError', 'ArgumentError', 'DomainError', 'PreconditionError',
           'SingularAssemblyError', 'ExtremalCaseError', 'DegenerateStateError', 'ConfigError',
           'NodeParams', 'RingSystem', 'RingResponse', 'FluxPhase', 'NO_FLUX',
           'gell_mann', 'exp_i_lambda', 'build_V', 'build_D', 'build_U', 'unitarity_residual']

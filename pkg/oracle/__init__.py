"""Reference solvers and the verification suite"""

from .direct_solvers import (AmplitudeVector, solve_ring_direct, solve_junction_direct,
                             junction_smatrix_direct, expm_series)
from .verification import CheckResult, VerificationReport, VerificationSuite

__all__ = ['AmplitudeVector', 'solve_ring_direct', 'solve_junction_direct',
           'junction_smatrix_direct', 'expm_series',
           'CheckResult', 'VerificationReport', 'VerificationSuite']

"""Localized states and rank-deficiency detection"""

from .localized_states import (MatchingMatrix, LocalizedState, build_M, numerical_rank,
                               find_localized_k, localized_wavefunction)

__all__ = ['MatchingMatrix', 'LocalizedState', 'build_M', 'numerical_rank',
           'find_localized_k', 'localized_wavefunction']

"""Singular-value helpers shared by the ring, bound-state and oracle solvers"""

import numpy as np
import scipy.linalg


class SVDSolver:
    """Thin SVD of a small complex matrix with rank and least-squares helpers

    Attributes:
        matrix: The decomposed matrix
        U, s, Vh: Thin SVD factors (s in descending order)
        rcond: Default relative cutoff for truncated solves
    """

    def __init__(self, matrix: np.ndarray, rcond: float = 1e-10):
        self.matrix = np.asarray(matrix, dtype=complex)
        self.rcond = rcond
        self.U, self.s, self.Vh = scipy.linalg.svd(self.matrix, full_matrices=False)

    @property
    def sigma_max(self) -> float:
        return float(self.s[0]) if self.s.size else 0.0

    @property
    def sigma_min(self) -> float:
        return float(self.s[-1]) if self.s.size else 0.0

    @property
    def cond(self) -> float:
        if self.sigma_min == 0.0:
            return np.inf
        return self.sigma_max / self.sigma_min

    def rank(self, rel_tol: float = None) -> int:
        """Number of singular values above rel_tol * sigma_max (0 for a zero matrix)"""
        rel_tol = self.rcond if rel_tol is None else rel_tol
        if self.sigma_max == 0.0:
            return 0
        return int(np.count_nonzero(self.s > rel_tol * self.sigma_max))

    def null_space(self, rcond: float = None) -> np.ndarray:
        """Orthonormal basis (as columns) of the numerically discarded right space"""
        rank = self.rank(rcond)
        n = self.matrix.shape[1]
        full_vh = scipy.linalg.svd(self.matrix, full_matrices=True)[2] if rank < n else self.Vh
        return full_vh[rank:].conj().T

    def lstsq(self, b: np.ndarray, rcond: float = None) -> np.ndarray:
        """Minimum-norm least-squares solution with singular values below rcond*sigma_max dropped"""
        rank = self.rank(rcond)
        U = self.U[:, :rank]
        s = self.s[:rank]
        Vh = self.Vh[:rank]
        return Vh.conj().T @ ((U.conj().T @ b) / s.reshape((-1,) + (1,) * (np.ndim(b) - 1)))

    def residual(self, x: np.ndarray, b: np.ndarray) -> float:
        return float(np.max(np.abs(self.matrix @ x - b)))

"""Gell-Mann generators and the U(3) junction parametrization

Only the generators lambda_2, lambda_3 and lambda_5 enter the node
parametrization, so only those are provided. Their exponentials are
evaluated in closed form; ``oracle.expm_series`` cross-checks them.
"""

import numpy as np

from .errors import ArgumentError
from .node_params import NodeParams

SUPPORTED_GENERATORS = (2, 3, 5)

_GELL_MANN = {
    2: np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
    3: np.diag([1.0, -1.0, 0.0]).astype(complex),
    5: np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex),
}


def _check_index(index: int) -> None:
    if index not in SUPPORTED_GENERATORS:
        raise ArgumentError(
            f"Unsupported Gell-Mann index {index!r}; expected one of {SUPPORTED_GENERATORS}")


def gell_mann(index: int) -> np.ndarray:
    """Return the Hermitian, traceless generator lambda_index

    Args:
        index: 2, 3 or 5

    Returns:
        3x3 complex matrix (a fresh copy)
    """
    _check_index(index)
    return _GELL_MANN[index].copy()


def exp_i_lambda(index: int, angle: float) -> np.ndarray:
    """Closed-form exp(i * angle * lambda_index)

    lambda_3 gives a diagonal phase matrix, lambda_2 a rotation in the
    (x2, x3) slots and lambda_5 a rotation in the (x2, x1) slots.

    Args:
        index: 2, 3 or 5
        angle: Rotation angle in radians

    Returns:
        3x3 unitary matrix
    """
    _check_index(index)
    if index == 3:
        return np.diag([np.exp(1j * angle), np.exp(-1j * angle), 1.0 + 0j])

    c, s = np.cos(angle), np.sin(angle)
    out = np.eye(3, dtype=complex)
    j = 1 if index == 2 else 2
    out[0, 0] = c
    out[j, j] = c
    out[0, j] = s
    out[j, 0] = -s
    return out


def build_V(p: NodeParams) -> np.ndarray:
    """Eigenvector frame V of the junction unitary

    V = e^{i alpha l3} e^{i beta l2} e^{i gamma l3} e^{i delta l5} e^{i a l3} e^{i b l2},
    multiplied left to right.
    """
    factors = zip((3, 2, 3, 5, 3, 2), p.euler)
    V = np.eye(3, dtype=complex)
    for index, angle in factors:
        V = V @ exp_i_lambda(index, angle)
    return V


def build_D(p: NodeParams) -> np.ndarray:
    """Diagonal eigenphase matrix diag(e^{i theta_(i)})"""
    return np.diag(np.exp(1j * np.asarray(p.theta)))


def build_U(p: NodeParams) -> np.ndarray:
    """Junction unitary U = V D V^dagger"""
    V = build_V(p)
    return V @ build_D(p) @ V.conj().T


def unitarity_residual(matrix: np.ndarray) -> float:
    """Max-norm of M M^dagger - I"""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(matrix.shape[0]))))


def is_unitary(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    return unitarity_residual(matrix) <= tol

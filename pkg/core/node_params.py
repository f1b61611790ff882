"""Junction parameters of a single Y-junction node"""

import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .errors import DomainError

EULER_NAMES = ('alpha', 'beta', 'gamma', 'delta', 'a', 'b')


@dataclass(frozen=True)
class NodeParams:
    """Nine angles, gauge length and position of one node

    The junction unitary is U = V diag(e^{i theta}) V^dagger with V built from
    the six Euler angles. Angles are used as given; trigonometry takes care of
    periodicity.

    Attributes:
        theta: Eigenphases theta_(1), theta_(2), theta_(3) in radians
        euler: Euler angles (alpha, beta, gamma, delta, a, b) in radians
        L0: Gauge length, strictly positive
        xi: Node position on the ring axis
    """

    theta: Tuple[float, float, float]
    euler: Tuple[float, float, float, float, float, float] = (0.0,) * 6
    L0: float = 1.0
    xi: float = 0.0

    def __post_init__(self):
        theta = tuple(float(t) for t in self.theta)
        euler = tuple(float(e) for e in self.euler)
        if len(theta) != 3:
            raise DomainError(f"theta needs 3 angles, got {len(theta)}")
        if len(euler) != 6:
            raise DomainError(f"euler needs 6 angles, got {len(euler)}")
        for name, value in zip(('theta1', 'theta2', 'theta3') + EULER_NAMES, theta + euler):
            if not math.isfinite(value):
                raise DomainError(f"Angle {name} must be finite, got {value}")
        if not (math.isfinite(self.L0) and self.L0 > 0):
            raise DomainError(f"L0 must be positive and finite, got {self.L0}")
        if not math.isfinite(self.xi):
            raise DomainError(f"xi must be finite, got {self.xi}")
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'euler', euler)
        object.__setattr__(self, 'L0', float(self.L0))
        object.__setattr__(self, 'xi', float(self.xi))

    @classmethod
    def from_angles(cls, theta1: float, theta2: float, theta3: float,
                    alpha: float = 0.0, beta: float = 0.0, gamma: float = 0.0,
                    delta: float = 0.0, a: float = 0.0, b: float = 0.0,
                    L0: float = 1.0, xi: float = 0.0) -> 'NodeParams':
        """Build from named angles"""
        return cls((theta1, theta2, theta3), (alpha, beta, gamma, delta, a, b), L0, xi)

    @property
    def alpha(self) -> float:
        return self.euler[0]

    @property
    def beta(self) -> float:
        return self.euler[1]

    @property
    def gamma(self) -> float:
        return self.euler[2]

    @property
    def delta(self) -> float:
        return self.euler[3]

    @property
    def a(self) -> float:
        return self.euler[4]

    @property
    def b(self) -> float:
        return self.euler[5]

    def characteristic_lengths(self) -> np.ndarray:
        """Physical lengths L_(i) = L0 cot(theta_(i)/2)

        Returns:
            Array of three lengths; +-inf where sin(theta_(i)/2) vanishes
        """
        half = np.asarray(self.theta) / 2.0
        s = np.sin(half)
        c = np.cos(half)
        with np.errstate(divide='ignore'):
            lengths = np.where(s == 0.0, np.copysign(np.inf, c), self.L0 * c / np.where(s == 0.0, 1.0, s))
        return lengths

    def with_xi(self, xi: float) -> 'NodeParams':
        return replace(self, xi=xi)

    def with_alpha_shift(self, shift: float) -> 'NodeParams':
        """Copy with alpha increased by ``shift``"""
        euler = (self.alpha + shift,) + self.euler[1:]
        return replace(self, euler=euler)

    def as_dict(self) -> dict:
        values = {'theta1': self.theta[0], 'theta2': self.theta[1], 'theta3': self.theta[2]}
        values.update(zip(EULER_NAMES, self.euler))
        values.update(L0=self.L0, xi=self.xi)
        return values

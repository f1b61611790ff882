"""Named junction fixtures and seeded random parameter draws"""

import math

import numpy as np

from ..core.node_params import NodeParams
from ..core.ring_system import RingSystem


def special_switch_node(L0: float = 1.0, xi: float = 0.0) -> NodeParams:
    """alpha=gamma=a=0, beta=delta=b=pi/4, L_(1)=L_(2)=0, L_(3) infinite

    On a symmetric ring this node lets the flux switch between perfect
    transmission (theta_B = 2n pi) and perfect reflection ((2n+1) pi).
    """
    quarter = math.pi / 4
    return NodeParams.from_angles(math.pi, math.pi, 0.0, alpha=0.0, beta=quarter, gamma=0.0,
                                  delta=quarter, a=0.0, b=quarter, L0=L0, xi=xi)


def three_port_node(L0: float = 1.0) -> NodeParams:
    """Parameters reducing the node to the classic three-port matrix

    At xi = 0 the S-matrix is [[-1, 0, 0], [0, 0, 1], [0, 1, 0]] for every k.
    """
    return NodeParams.from_angles(0.0, math.pi, math.pi, alpha=0.0, beta=1.5 * math.pi,
                                  gamma=math.pi, delta=math.pi / 4, a=0.0, b=0.0, L0=L0, xi=0.0)


def random_node_params(rng: np.random.Generator, xi: float = 0.0) -> NodeParams:
    """Uniform angles in [0, 2 pi), gauge length in [0.2, 3]"""
    theta = tuple(rng.uniform(0.0, 2 * math.pi, 3))
    euler = tuple(rng.uniform(0.0, 2 * math.pi, 6))
    return NodeParams(theta, euler, L0=float(rng.uniform(0.2, 3.0)), xi=xi)


def random_ring(rng: np.random.Generator, d: float = 1.0, symmetric: bool = True) -> RingSystem:
    """Random ring with node II at 0 and node I at d"""
    node = random_node_params(rng, xi=d)
    if symmetric:
        return RingSystem.mirrored(node, d)
    return RingSystem(node, random_node_params(rng, xi=0.0))


def perturbed_ring(ring: RingSystem, rng: np.random.Generator, scale: float = 0.1) -> RingSystem:
    """Copy with one eigenphase of node II shifted by a random amount of order ``scale``"""
    node = ring.node_II
    theta = list(node.theta)
    slot = int(rng.integers(0, 3))
    theta[slot] += scale * float(rng.choice([-1.0, 1.0])) * float(rng.uniform(0.5, 1.0))
    return ring.with_node_II(NodeParams(tuple(theta), node.euler, node.L0, node.xi))

"""Tests for the matching matrix and localized states"""

import math
import unittest

import numpy as np

from ..bound_states import (build_M, find_localized_k, localized_wavefunction,
                            numerical_rank)
from ..core.errors import ArgumentError, DomainError, PreconditionError
from ..core.ring_system import FluxPhase, RingSystem
from ..scattering.junction import scattering_matrix
from ..scattering.ring import ring_response
from ..utils.sampling import perturbed_ring, random_ring


def node_reflection(ring: RingSystem, k: float) -> float:
    """|s11|^2 of node I at k"""
    return abs(scattering_matrix(ring.node_I, k, 'I').matrix[2, 2]) ** 2


class TestMatchingMatrix(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(31)

    def test_shape(self):
        M = build_M(random_ring(self.rng), 1.0)
        self.assertEqual(M.entries.shape, (6, 4))
        self.assertEqual(M.singular_values().shape, (4,))

    def test_rank_claim(self):
        for _ in range(200):
            d = float(self.rng.uniform(0.5, 2.0))
            ring = random_ring(self.rng, d=d)
            for n in (1, 2, 3, 4, 5):
                self.assertEqual(numerical_rank(build_M(ring, n * math.pi / d)), 3)
                self.assertEqual(numerical_rank(build_M(ring, (n + 0.37) * math.pi / d)), 4)

    def test_off_resonance_full_rank(self):
        ring = random_ring(self.rng, d=1.0)
        self.assertEqual(numerical_rank(build_M(ring, 0.9 * math.pi)), 4)
        asymmetric = random_ring(self.rng, d=1.0, symmetric=False)
        self.assertEqual(numerical_rank(build_M(asymmetric, 2.3)), 4)

    def test_numerical_rank_edge_cases(self):
        self.assertEqual(numerical_rank(np.zeros((6, 4))), 0)
        with self.assertRaises(ArgumentError):
            numerical_rank(np.eye(4), rel_tol=0.0)
        with self.assertRaises(ArgumentError):
            numerical_rank(np.eye(4), rel_tol=1.5)
        self.assertEqual(numerical_rank(np.diag([1.0, 1e-3, 1e-12, 0.0])), 2)

    def test_rejects_bad_wavenumber(self):
        with self.assertRaises(DomainError):
            build_M(random_ring(self.rng), -1.0)

    def test_full_flux_quantum_keeps_rank(self):
        ring = random_ring(self.rng, d=1.0)
        self.assertEqual(numerical_rank(build_M(ring, math.pi, FluxPhase(0.0))), 3)
        self.assertEqual(numerical_rank(build_M(ring, math.pi, FluxPhase(2 * math.pi))), 3)


class TestFindLocalizedK(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(41)

    def test_symmetric_hits(self):
        d = 1.3
        ring = random_ring(self.rng, d=d)
        hits = find_localized_k(ring, 0.5 * math.pi / d, 3.5 * math.pi / d, 300)
        self.assertEqual(len(hits), 3)
        for n, (k, rank) in enumerate(hits, start=1):
            self.assertAlmostEqual(k, n * math.pi / d, delta=1e-9)
            self.assertEqual(rank, 3)

    def test_range_without_resonance(self):
        ring = random_ring(self.rng, d=1.0)
        self.assertEqual(find_localized_k(ring, 0.1 * math.pi, 0.9 * math.pi, 100), [])

    def test_perturbed_ring(self):
        ring = perturbed_ring(random_ring(self.rng, d=1.0), self.rng, scale=0.1)
        self.assertEqual(find_localized_k(ring, 0.5 * math.pi, 3.5 * math.pi, 300), [])

    def test_resonance_on_left_endpoint(self):
        ring = random_ring(self.rng, d=1.0)
        hits = find_localized_k(ring, math.pi, 2.5 * math.pi, 100)
        self.assertEqual(len(hits), 2)
        self.assertAlmostEqual(hits[0][0], math.pi, delta=1e-9)
        self.assertAlmostEqual(hits[1][0], 2 * math.pi, delta=1e-9)
        self.assertEqual(hits[0][1], 3)

    def test_resonance_just_inside_left_endpoint(self):
        ring = random_ring(self.rng, d=1.0)
        hits = find_localized_k(ring, math.pi - 1e-4, 2.5 * math.pi, 100)
        self.assertEqual(len(hits), 2)
        self.assertAlmostEqual(hits[0][0], math.pi, delta=1e-9)
        self.assertAlmostEqual(hits[1][0], 2 * math.pi, delta=1e-9)

    def test_resonance_on_right_endpoint(self):
        ring = random_ring(self.rng, d=1.0)
        hits = find_localized_k(ring, 0.5 * math.pi, 2 * math.pi, 100)
        self.assertEqual(len(hits), 2)
        self.assertAlmostEqual(hits[-1][0], 2 * math.pi, delta=1e-9)

    def test_two_point_grid(self):
        ring = random_ring(self.rng, d=1.0)
        hits = find_localized_k(ring, 0.9 * math.pi, 1.1 * math.pi, 2)
        self.assertEqual(len(hits), 1)
        self.assertAlmostEqual(hits[0][0], math.pi, delta=1e-9)
        self.assertEqual(hits[0][1], 3)

    def test_coincides_with_perfect_transmission(self):
        d = 1.0
        ring = random_ring(self.rng, d=d)
        while not all(0.1 <= node_reflection(ring, n * math.pi / d) <= 0.9 for n in (1, 2, 3)):
            ring = random_ring(self.rng, d=d)
        k_min, k_max = 0.5 * math.pi / d, 3.5 * math.pi / d
        hits = [k for k, _ in find_localized_k(ring, k_min, k_max, 2000)]
        self.assertEqual(len(hits), 3)
        for k in hits:
            self.assertLess(abs(ring_response(ring, k).R), 1e-8)
        for k in np.linspace(k_min, k_max, 2000):
            if min(abs(k - hit) for hit in hits) > 1e-3:
                self.assertGreater(abs(ring_response(ring, float(k)).R), 1e-8)

    def test_argument_checks(self):
        ring = random_ring(self.rng)
        with self.assertRaises(ArgumentError):
            find_localized_k(ring, 2.0, 1.0, 10)
        with self.assertRaises(ArgumentError):
            find_localized_k(ring, 0.0, 1.0, 10)
        with self.assertRaises(ArgumentError):
            find_localized_k(ring, 1.0, 2.0, 1)


class TestLocalizedWavefunction(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(53)

    def test_states_solve_junction_equations(self):
        for _ in range(200):
            d = float(self.rng.uniform(0.5, 2.0))
            ring = random_ring(self.rng, d=d)
            for n in (1, 2, 3, 4, 5):
                state = localized_wavefunction(ring, n)
                amplitudes = state.plane_wave_amplitudes()
                residual = build_M(ring, state.k).entries @ amplitudes
                self.assertLessEqual(np.max(np.abs(residual)), 1e-10)
                self.assertAlmostEqual(state.norm_by_quadrature(), 1.0, delta=1e-8)

    def test_node_values(self):
        ring = random_ring(self.rng, d=1.0)
        for n in (1, 2):
            state = localized_wavefunction(ring, n)
            values = state.node_values()
            self.assertEqual(values['sign'], (-1) ** n)
            self.assertAlmostEqual(values['phi2_I'], values['sign'] * values['phi2_II'], places=12)
            self.assertAlmostEqual(values['phi3_I'], values['sign'] * values['phi3_II'], places=12)
            self.assertAlmostEqual(values['phi2_II'], state.D2 / state.N)

    def test_sampling(self):
        state = localized_wavefunction(random_ring(self.rng, d=2.0), 1)
        x, phi2, phi3 = state.sample()
        self.assertEqual(len(x), 513)
        self.assertEqual(x[0], 0.0)
        self.assertEqual(x[-1], 2.0)
        self.assertEqual(phi2.shape, phi3.shape)

    def test_preconditions(self):
        ring = random_ring(self.rng, symmetric=False)
        with self.assertRaises(PreconditionError):
            localized_wavefunction(ring, 1)
        with self.assertRaises(ArgumentError):
            localized_wavefunction(random_ring(self.rng), 0)
        with self.assertRaises(ArgumentError):
            localized_wavefunction(random_ring(self.rng), 1.5)


if __name__ == '__main__':
    unittest.main()

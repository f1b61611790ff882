"""Tests for flux-threaded rings and the switching formulas"""

import math
import unittest

import numpy as np

from ..core.errors import PreconditionError, SingularAssemblyError
from ..core.ring_system import FluxPhase, RingSystem
from ..oracle.direct_solvers import solve_ring_direct
from ..scattering.junction import scattering_matrix
from ..scattering.magnetic import (flux_closed_form, flux_modified_node_II, flux_phase_matrix,
                                   flux_ring_response, flux_ring_smatrix, flux_RT_special)
from ..scattering.ring import ring_response
from ..utils.sampling import random_ring, special_switch_node


class TestFluxPhase(unittest.TestCase):

    def test_phase_matrix(self):
        np.testing.assert_allclose(flux_phase_matrix(FluxPhase(0.0)), np.eye(3))
        np.testing.assert_allclose(flux_phase_matrix(FluxPhase(2 * math.pi)),
                                   np.diag([-1, -1, 1]), atol=1e-15)
        np.testing.assert_allclose(flux_phase_matrix(FluxPhase(math.pi)),
                                   np.diag([1j, -1j, 1]), atol=1e-15)

    def test_rejects_non_finite(self):
        with self.assertRaises(ValueError):
            FluxPhase(float('inf'))


class TestFluxModifiedNode(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(17)

    def test_zero_flux(self):
        ring = random_ring(self.rng)
        np.testing.assert_allclose(flux_modified_node_II(ring.node_II, FluxPhase(0.0), 1.3).matrix,
                                   scattering_matrix(ring.node_II, 1.3, 'II').matrix)

    def test_symmetric_ring_conjugation(self):
        ring = random_ring(self.rng, d=1.7)
        k, f = 0.9, FluxPhase(1.1)
        P = flux_phase_matrix(f)
        S_I = scattering_matrix(ring.node_I, k, 'I').matrix
        expected = np.exp(2j * k * ring.d) * P @ S_I.conj().T @ P.conj().T
        np.testing.assert_allclose(flux_modified_node_II(ring.node_II, f, k).matrix, expected,
                                   atol=1e-12)

    def test_alpha_shift_equivalence(self):
        ring = random_ring(self.rng)
        theta_B = 0.8
        shifted = ring.node_II.with_alpha_shift(theta_B / 2)
        np.testing.assert_allclose(flux_modified_node_II(ring.node_II, FluxPhase(theta_B), 2.1).matrix,
                                   scattering_matrix(shifted, 2.1, 'II').matrix, atol=1e-13)


class TestFluxRingResponse(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(23)

    def test_flux_off_reduction(self):
        for _ in range(200):
            ring = random_ring(self.rng, d=float(self.rng.uniform(0.5, 2.0)))
            k = float(self.rng.uniform(0.1, 8.0))
            plain = ring_response(ring, k)
            flux = flux_ring_response(ring, k, FluxPhase(0.0))
            self.assertLessEqual(abs(plain.R - flux.R), 1e-10)
            self.assertLessEqual(abs(plain.T - flux.T), 1e-10)

    def test_flux_periodicity(self):
        for _ in range(200):
            ring = random_ring(self.rng, d=float(self.rng.uniform(0.5, 2.0)))
            k = float(self.rng.uniform(0.1, 8.0))
            theta_B = float(self.rng.uniform(-math.pi, math.pi))
            a = flux_ring_response(ring, k, FluxPhase(theta_B))
            b = flux_ring_response(ring, k, FluxPhase(theta_B + 2 * math.pi))
            self.assertLessEqual(abs(abs(a.R) - abs(b.R)), 1e-10)
            self.assertLessEqual(abs(abs(a.T) - abs(b.T)), 1e-10)
            self.assertLessEqual(abs(a.unitarity_residual), 1e-10)

    def test_matches_ring_solve(self):
        worst = 0.0
        for _ in range(20):
            ring = random_ring(self.rng, d=float(self.rng.uniform(0.5, 2.0)))
            for k in self.rng.uniform(0.1, 8.0, 50):
                for theta_B in np.linspace(-2 * math.pi, 2 * math.pi, 25):
                    response = flux_ring_response(ring, float(k), FluxPhase(float(theta_B)))
                    direct = solve_ring_direct(ring, float(k), FluxPhase(float(theta_B)))
                    worst = max(worst, abs(response.R - direct['psi1']),
                                abs(response.T - direct['phi4']))
        self.assertLessEqual(worst, 1e-10)

    def test_printed_closed_forms(self):
        for _ in range(50):
            ring = random_ring(self.rng, d=float(self.rng.uniform(0.5, 2.0)))
            k = float(self.rng.uniform(0.1, 8.0))
            theta_B = float(self.rng.uniform(0.2, 2 * math.pi - 0.2))
            response = flux_ring_response(ring, k, FluxPhase(theta_B), audit=True)
            audit = response.audit
            self.assertIsNotNone(audit)
            self.assertLessEqual(audit.residual_R, 1e-8)
            self.assertLessEqual(audit.residual_T, 1e-8)
            self.assertLessEqual(audit.residual_delta, 1e-8)

    def test_half_angle_factor_disagrees(self):
        ring = random_ring(np.random.default_rng(1), d=1.0)
        response = flux_ring_response(ring, 1.3, FluxPhase(1.0), audit=True)
        self.assertGreater(response.audit.residual_T_half_angle, 1e-6)

    def test_closed_form_at_zero_flux(self):
        ring = random_ring(self.rng, d=1.2)
        S_I = scattering_matrix(ring.node_I, 0.7, 'I')
        closed = flux_closed_form(S_I, ring.d, 0.0)
        plain = ring_response(ring, 0.7)
        self.assertAlmostEqual(abs(closed['R'] - plain.R), 0.0, places=12)
        self.assertAlmostEqual(abs(closed['T'] - plain.T), 0.0, places=12)

    def test_near_resonance_without_flux(self):
        ring = self._transmitting_ring()
        for offset in (1e-12, 1e-10, 1e-8):
            k = math.pi + offset
            plain = ring_response(ring, k)
            flux = flux_ring_response(ring, k, FluxPhase(0.0))
            self.assertEqual(flux.method, 'closed-form')
            self.assertLessEqual(abs(flux.R - plain.R), 1e-9 * abs(plain.R))
            self.assertLessEqual(abs(flux.T - plain.T), 1e-12)

    def test_near_resonance_with_small_flux(self):
        ring = self._transmitting_ring()
        for offset in (1e-12, 1e-10, 1e-8):
            k = math.pi + offset
            for theta_B in (1e-12, 1e-9, 1e-6):
                response = flux_ring_response(ring, k, FluxPhase(theta_B))
                self.assertEqual(response.method, 'closed-form')
                self.assertLessEqual(abs(response.unitarity_residual), 1e-10)

    def test_full_flux_quantum_near_resonance(self):
        # float(2 pi) is not a whole flux quantum; the residual flux moves R, T by ~1e-7 here
        ring = self._transmitting_ring()
        k = math.pi + 1e-8
        plain = ring_response(ring, k)
        flux = flux_ring_response(ring, k, FluxPhase(2 * math.pi))
        self.assertLessEqual(abs(flux.R - plain.R), 1e-5 * abs(plain.R))
        self.assertLessEqual(abs(flux.T + plain.T), 1e-5)

    def _transmitting_ring(self) -> RingSystem:
        while True:
            ring = random_ring(self.rng, d=1.0)
            r2 = abs(scattering_matrix(ring.node_I, math.pi, 'I').matrix[2, 2]) ** 2
            if 0.1 <= r2 <= 0.9:
                return ring

    def test_requires_symmetric_ring(self):
        ring = random_ring(self.rng, symmetric=False)
        with self.assertRaises(PreconditionError):
            flux_ring_response(ring, 1.0, FluxPhase(0.5))
        self.assertEqual(flux_ring_smatrix(ring, 1.0, FluxPhase(0.5)).shape, (2, 2))


class TestSwitching(unittest.TestCase):

    def setUp(self):
        self.d = 1.0
        self.ring = RingSystem.mirrored(special_switch_node(), self.d)

    def test_node_does_not_reflect(self):
        S_I = scattering_matrix(self.ring.node_I, 1.1, 'I')
        self.assertLess(abs(S_I.matrix[2, 2]), 1e-14)

    def test_switch_at_resonance(self):
        k = math.pi / self.d
        for n in range(3):
            even = flux_RT_special(k, self.d, self.ring.xi_I, FluxPhase(2 * n * math.pi))
            odd = flux_RT_special(k, self.d, self.ring.xi_I, FluxPhase((2 * n + 1) * math.pi))
            self.assertLessEqual(abs(even.R), 1e-10)
            self.assertAlmostEqual(abs(even.T), 1.0, places=10)
            self.assertLessEqual(abs(odd.T), 1e-10)
            self.assertAlmostEqual(abs(odd.R), 1.0, places=10)

    def test_switch_through_assembly(self):
        k = 1.5 * math.pi / self.d
        for n in range(3):
            even = flux_ring_response(self.ring, k, FluxPhase(2 * n * math.pi))
            odd = flux_ring_response(self.ring, k, FluxPhase((2 * n + 1) * math.pi))
            self.assertLessEqual(abs(even.R), 1e-10)
            self.assertLessEqual(abs(odd.T), 1e-10)

    def test_formulas_match_assembly(self):
        for k in (0.3, 1.1, 2.0, 4.4):
            for theta_B in np.linspace(0.1, 6.0, 9):
                f = FluxPhase(float(theta_B))
                closed = flux_RT_special(k, self.d, self.ring.xi_I, f)
                assembled = flux_ring_response(self.ring, k, f)
                self.assertAlmostEqual(abs(closed.R - assembled.R), 0.0, places=10)
                self.assertAlmostEqual(abs(closed.T - assembled.T), 0.0, places=10)

    def test_transmission_falls_monotonically_at_resonance(self):
        k = math.pi / self.d
        probs = [abs(flux_RT_special(k, self.d, self.ring.xi_I, FluxPhase(float(t))).T) ** 2
                 for t in np.linspace(0.0, math.pi, 100)]
        self.assertAlmostEqual(probs[0], 1.0, places=12)
        self.assertLessEqual(probs[-1], 1e-20)
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(probs, probs[1:])))

    def test_transmission_falls_monotonically_between_resonances(self):
        k = 1.5 * math.pi / self.d
        thetas = np.linspace(0.0, math.pi, 100)
        probs = [abs(flux_ring_response(self.ring, k, FluxPhase(float(t))).T) ** 2 for t in thetas]
        self.assertAlmostEqual(probs[0], 1.0, places=12)
        self.assertAlmostEqual(probs[-1], 0.0, places=12)
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(probs, probs[1:])))
        c2 = np.cos(thetas / 2) ** 2
        np.testing.assert_allclose(probs, 4 * c2 / (1 + c2) ** 2, atol=1e-10)

    def test_resonance_limit_label(self):
        response = flux_RT_special(math.pi, 1.0, 1.0, FluxPhase(0.0))
        self.assertEqual(response.method, 'resonance-limit')
        self.assertEqual(response.R, 0.0)

    def test_vanishing_denominator_off_switch(self):
        with self.assertRaises(SingularAssemblyError):
            flux_RT_special(math.pi, 1.0, 1.0, FluxPhase(1e-8))


if __name__ == '__main__':
    unittest.main()

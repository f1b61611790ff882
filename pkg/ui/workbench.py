"""Ring workbench: runs the CLI subcommands against a RunConfig"""

import logging
import math
import os
from typing import Callable, List, Optional

import numpy as np

from ..bound_states import LocalizedState, find_localized_k, localized_wavefunction
from ..core import (DegenerateStateError, ExtremalCaseError, FluxPhase, PreconditionError,
                    RingSystem, SingularAssemblyError)
from ..oracle import VerificationReport, VerificationSuite
from ..scattering.junction import scattering_matrix
from ..scattering.magnetic import flux_modified_node_II, flux_ring_response, flux_ring_smatrix
from ..scattering.ring import ring_response
from ..utils.config import RunConfig
from ..utils.output import Table, write_table

logger = logging.getLogger(__name__)

SWEEP_K_COLUMNS = ('k', 'kd_over_pi', 're_R', 'im_R', 're_T', 'im_T', 'prob_R', 'prob_T',
                   'unitarity_residual', 'status')
SWEEP_FLUX_COLUMNS = ('theta_B', 're_R', 'im_R', 're_T', 'im_T', 'prob_R', 'prob_T')
LOCALIZED_COLUMNS = ('k', 'n_estimate', 'rank',
                     're_C2', 'im_C2', 're_D2', 'im_D2', 're_C3', 'im_C3', 're_D3', 'im_D3', 'N')
WAVEFUNCTION_COLUMNS = ('x', 're_phi2', 'im_phi2', 're_phi3', 'im_phi3')
SMATRIX_COLUMNS = ('matrix', 'row', 'col', 're', 'im')

SAMPLES_PER_ARM = 513


def wavefunction_path(template: str, n: int) -> str:
    """``{n}`` in the template is replaced, otherwise ``_n<n>`` goes before the extension"""
    if '{n}' in template:
        return template.replace('{n}', str(n))
    root, ext = os.path.splitext(template)
    return f"{root}_n{n}{ext or '.csv'}"


class RingWorkbench:
    """Runs sweeps, localized-state searches and verification for one configuration

    Args:
        config: Parsed run configuration
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.wavefunction_files: List[str] = []

    def __repr__(self) -> str:
        return f"RingWorkbench(ring={self.config.ring!r}, source={self.config.source!r})"

    @property
    def ring(self) -> RingSystem:
        return self.config.require_ring()

    def smatrix_report(self) -> Table:
        """S_I, S_II (flux-modified when theta_B != 0) and S_R at the configured k"""
        ring, k, flux = self.ring, self.config.require_k(), self.config.flux
        S_I = scattering_matrix(ring.node_I, k, 'I').matrix
        S_II = flux_modified_node_II(ring.node_II, flux, k).matrix
        S_R = flux_ring_smatrix(ring, k, flux)
        table = Table(SMATRIX_COLUMNS)
        for name, matrix in (('S_I', S_I), ('S_II', S_II), ('S_R', S_R)):
            for (row, col), value in np.ndenumerate(matrix):
                table.add(matrix=name, row=row + 1, col=col + 1,
                          re=float(value.real), im=float(value.imag))
        return table

    def run_sweep_k(self) -> Table:
        """R and T on a uniform k grid; singular points keep only k and status"""
        ring, sweep = self.ring, self.config.require_k_sweep()
        table = Table(SWEEP_K_COLUMNS)
        singular = 0
        for k in np.linspace(sweep.k_min, sweep.k_max, sweep.points):
            k = float(k)
            try:
                response = ring_response(ring, k)
            except (SingularAssemblyError, ExtremalCaseError) as exc:
                logger.info("Singular point k=%.17g: %s", k, exc)
                table.add(k=k, kd_over_pi=k * ring.d / math.pi, status='singular')
                singular += 1
                continue
            table.add(k=k, kd_over_pi=k * ring.d / math.pi,
                      re_R=response.R.real, im_R=response.R.imag,
                      re_T=response.T.real, im_T=response.T.imag,
                      prob_R=response.prob_R, prob_T=response.prob_T,
                      unitarity_residual=response.unitarity_residual, status='ok')
        if singular:
            logger.warning("%d of %d sweep points were singular", singular, sweep.points)
        return table

    def run_sweep_flux(self) -> Table:
        """R and T over theta_B at fixed k (symmetric rings only)

        Raises:
            PreconditionError: the ring is not symmetric
        """
        ring, sweep = self.ring, self.config.require_flux_sweep()
        if not ring.symmetric():
            raise PreconditionError(
                "sweep-flux needs a symmetric ring: the flux response is derived for node II "
                "mirroring node I (set [ring] symmetric = true)")
        table = Table(SWEEP_FLUX_COLUMNS)
        for theta_B in np.linspace(sweep.flux_min, sweep.flux_max, sweep.points):
            theta_B = float(theta_B)
            try:
                response = flux_ring_response(ring, sweep.k, FluxPhase(theta_B))
            except SingularAssemblyError as exc:
                logger.warning("No finite response at theta_B=%.17g: %s", theta_B, exc)
                table.add(theta_B=theta_B)
                continue
            table.add(theta_B=theta_B, re_R=response.R.real, im_R=response.R.imag,
                      re_T=response.T.real, im_T=response.T.imag,
                      prob_R=response.prob_R, prob_T=response.prob_T)
        return table

    def run_localized(self) -> Table:
        """One row per detected localized state

        Coefficients are filled for symmetric, flux-free rings. When the
        configuration names a wavefunction path each state is sampled into
        its own CSV file.
        """
        ring, sweep = self.ring, self.config.require_k_sweep()
        flux = self.config.flux if self.config.flux.theta_B != 0.0 else None
        hits = find_localized_k(ring, sweep.k_min, sweep.k_max, sweep.points, flux=flux)
        with_coefficients = flux is None and ring.symmetric()
        table = Table(LOCALIZED_COLUMNS)
        self.wavefunction_files = []
        for k, rank in hits:
            n = int(round(k * ring.d / math.pi))
            row = dict(k=k, n_estimate=n, rank=rank)
            if with_coefficients and n >= 1:
                try:
                    state = localized_wavefunction(ring, n)
                except DegenerateStateError as exc:
                    logger.warning("No coefficients for n=%d: %s", n, exc)
                else:
                    for name in ('C2', 'D2', 'C3', 'D3'):
                        value = getattr(state, name)
                        row['re_' + name], row['im_' + name] = value.real, value.imag
                    row['N'] = state.N
                    if self.config.wavefunction_path:
                        self.wavefunction_files.append(self._write_wavefunction(state))
            table.add(**row)
        return table

    def _write_wavefunction(self, state: LocalizedState) -> str:
        x, phi2, phi3 = state.sample(SAMPLES_PER_ARM)
        table = Table(WAVEFUNCTION_COLUMNS)
        for xi, a, b in zip(x, phi2, phi3):
            table.add(x=float(xi), re_phi2=a.real, im_phi2=a.imag, re_phi3=b.real, im_phi3=b.imag)
        path = wavefunction_path(self.config.wavefunction_path, state.n)
        write_table(table, path, 'csv')
        logger.info("Wrote %d wavefunction samples to %s", len(table), path)
        return path

    def run_verify(self, tamper: Optional[Callable[[np.ndarray], np.ndarray]] = None
                   ) -> VerificationReport:
        """Oracle comparisons on seeded random rings plus the configured ring, if any"""
        suite = VerificationSuite(ring=self.config.ring, seed=self.config.seed,
                                  samples=self.config.samples, tamper=tamper)
        return suite.run()

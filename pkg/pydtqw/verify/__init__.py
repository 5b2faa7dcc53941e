from __future__ import annotations

from typing import Any

from ..digitize import Digitizer
from ..equivalence import Equivalence
from ..gauge import Gauge
from ..hamiltonians import Hamiltonians
from ..lattice import Lattice, WalkParams
from ..walkclient import WalkClient
from .convergence import ConvergenceMixin
from .light_cone import LightConeMixin
from .reports import ConvergenceReport, LightConeReport
from .spectral import SpectralMixin, fit_order
from .suites import SUITES, SuitesMixin
from .symmetry import SymmetryKind, SymmetryMixin


class Verifier(SpectralMixin, ConvergenceMixin, LightConeMixin, SymmetryMixin, SuitesMixin):
    """Measure the properties the digitizations are supposed to have.

    Continuum limits, light cones, symmetry witnesses and spectral
    comparisons, plus named suites that bundle them into pass/fail reports.

    Modules
    -------
    spectral :
        Spectra and their comparison — phase-sorted spectra
        (``sorted_spectrum``), matched spectral distance
        (``spectral_compare``), fermion doubling (``count_zero_modes``),
        log-log fits (``fit_order``).
    convergence :
        Time and space continuum limits (``continuum_time_limit``,
        ``continuum_space_limit``).
    light_cone :
        Outside-cone probability of a spreading peak (``light_cone_scan``)
        and the exact propagator it is contrasted with (``exponential_step``).
    symmetry :
        Commutator witnesses for staggered translations and ``gamma^5``
        (``symmetry_witness``).
    suites :
        Named suites (``run_suite``): unitarity, ultralocality, equivalence,
        gauge, convergence, symmetry.
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Verifier.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.lattice = Lattice(walk_client=self.walk_client)
        self.hamiltonians = Hamiltonians(walk_client=self.walk_client)
        self.digitizer = Digitizer(walk_client=self.walk_client)
        self.equivalence = Equivalence(walk_client=self.walk_client)
        self.gauge = Gauge(walk_client=self.walk_client)
        self.logger.debug("Verifier class initialized.")

    def run_all_suites(self, params: WalkParams | None = None, suites: list[str] | None = None) -> dict[str, Any]:
        """
        Run every verification suite and group the results.

        Parameters
        ----------
        params : WalkParams, optional
            Base lattice parameters; defaults to the client's.
        suites : list of str, optional
            Subset of suite names to run. Defaults to all of them.

        Returns
        -------
        dict
            ``{"passed": bool, "params": {...}, "suites": {name: report}}``
            where each report is the output of ``run_suite``.
        """
        params = self.walk_client.resolve_params(params)
        names = list(SUITES) if suites is None else suites
        self.logger.info(f"Starting full verification run ({len(names)} suites).")

        results: dict[str, Any] = {}
        for name in names:
            results[name] = self.run_suite(name, params)

        passed = all(report["passed"] for report in results.values())
        self.logger.info(f"Full verification run completed: {'pass' if passed else 'FAIL'}.")
        return {"passed": passed, "params": params.to_dict(), "suites": results}


__all__ = [
    "Verifier",
    "ConvergenceReport",
    "LightConeReport",
    "SUITES",
    "SymmetryKind",
    "fit_order",
]

from __future__ import annotations

from ..walkclient import WalkClient
from .config import GaugeConfig, GaugeTransform
from .observables import GaugeObservablesMixin
from .transforms import GaugeTransformsMixin
from .walks import GaugedScheme, GaugedWalksMixin


class Gauge(GaugedWalksMixin, GaugeTransformsMixin, GaugeObservablesMixin):
    """Couple the walks to a background U(1) gauge field.

    Modules
    -------
    walks :
        Gauged one-step operators (``build_gauged_leftright_step``,
        ``build_gauged_naive_step``), their continuous-time Hamiltonians
        (``build_gauged_leftright_hamiltonian``,
        ``build_gauged_naive_hamiltonian``) and evolution over the whole
        window (``evolve_gauged``).
    transforms :
        Local gauge transformations of states and potentials
        (``apply_gauge_transform``), covariance checks (``covariance_error``)
        and large shifts (``large_gauge_shift``, ``is_admissible_shift``).
    observables :
        Field strength (``field_strength_F01``) and plaquette
        (``plaquette_U01``), pointwise or over the window.
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Gauge helper.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.logger.debug("Gauge class initialized.")


__all__ = ["Gauge", "GaugeConfig", "GaugeTransform", "GaugedScheme"]

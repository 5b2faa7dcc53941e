from __future__ import annotations

from ..gauge import Gauge
from ..walkclient import WalkClient
from .core import HamiltoniansCoreMixin
from .kinds import HamiltonianKind, HamiltonianKindsMixin


class Hamiltonians(HamiltoniansCoreMixin, HamiltonianKindsMixin):
    """Build the continuous-time lattice Dirac Hamiltonians as dense operators.

    Covers the left-right, naive, Wilson and staggered Hamiltonians, the split
    of the left-right transport into on-site and inter-site parts, and a single
    kind-based dispatch that also reaches the gauged Hamiltonians.

    Modules
    -------
    core :
        Builders — left-right (``build_left_right``), right-left transport
        (``build_right_left``), naive (``build_naive``), Wilson
        (``build_wilson``, ``build_wilson_parts``), staggered
        (``build_staggered``), mass terms (``build_mass``), on-site/inter-site
        split (``split_on_inter``).
    kinds :
        Dispatch over ``HamiltonianKind`` (``build``) and analytic band
        structure (``dispersion``).
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Hamiltonians builder.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.gauge = Gauge(walk_client=self.walk_client)
        self.logger.debug("Hamiltonians class initialized.")


__all__ = ["Hamiltonians", "HamiltonianKind"]

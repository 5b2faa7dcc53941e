from __future__ import annotations

from ..walkclient import WalkClient
from .core import LatticeCoreMixin
from .pauli import Basis2x2, pauli_rotation
from .states import LatticeStatesMixin, dirac_spinor
from .types import Basis, LatticeOperator, OperatorKind, SpinorField, StaggeredField, WalkParams


class Lattice(LatticeCoreMixin, LatticeStatesMixin):
    """Value types, bases and basis conversions shared by every other module.

    Converts between the left-right (two components per site) and staggered
    (one component on 2N sites) pictures, builds lattice translations and
    prepares initial states.

    Modules
    -------
    core :
        Basis bookkeeping — staggering and unstaggering fields (``stagger``,
        ``unstagger``), conjugating operators by the interleaving permutation
        (``change_operator_basis``), staggered translations T1/T2
        (``translation``), the momentum grid (``momentum_grid``).
    states :
        Initial data — single-site peaks (``delta_peak``), Dirac plane waves
        (``plane_wave``), Gaussian packets (``gaussian``), seeded random fields
        (``random_field``).
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Lattice helper.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client with default parameters is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.logger.debug("Lattice class initialized.")


__all__ = [
    "Lattice",
    "Basis",
    "Basis2x2",
    "LatticeOperator",
    "OperatorKind",
    "SpinorField",
    "StaggeredField",
    "WalkParams",
    "dirac_spinor",
    "pauli_rotation",
]

from __future__ import annotations

from ..digitize import Digitizer
from ..hamiltonians import Hamiltonians
from ..walkclient import WalkClient
from .coin_basis import CoinBasisMixin, regroup, ungroup
from .fourier import FourierBlock4, FourierMixin, MappingCoefficients, block_momenta, corner_block, pi_block
from .strauch import StrauchMixin
from .wilson import WilsonEquivalenceMixin


class Equivalence(StrauchMixin, FourierMixin, CoinBasisMixin, WilsonEquivalenceMixin):
    """Unitary equivalences between the different digitizations.

    Composes a ``Digitizer`` and a ``Hamiltonians`` builder sharing the same
    client, so every check runs on the same lattice parameters.

    Modules
    -------
    strauch :
        Strauch's walk in both factorized forms (``strauch_operator``,
        ``strauch_operator_cbreve``) and its conjugation to the two-angle
        naive walk (``strauch_passage``, ``strauch_conjugation_error``).
    fourier :
        Two-site momentum blocks (``fourier_blocks``, ``bloch_block``,
        ``pi_block``), the closed-form and eigenvector maps between them
        (``mapping_B_of_K``, ``mapping_B_constructive``,
        ``conjugation_error``) and their real-space coefficients
        (``mapping_real_space_coefficients``, ``reconstruct_B``,
        ``reconstruction_error``, ``decay_ratio``, ``analytic_decay_ratio``).
    coin_basis :
        The even-odd step rewritten with the even/odd label as coin
        (``coin_basis_factors``, ``even_odd_coin_decomposition``).
    wilson :
        Rotation of the left-right Hamiltonian into the Wilson one and the
        Wilson-term walk against its even-odd version (``wilson_equivalence``).
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Equivalence checker.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.digitizer = Digitizer(walk_client=self.walk_client)
        self.hamiltonians = Hamiltonians(walk_client=self.walk_client)
        self.logger.debug("Equivalence class initialized.")


__all__ = [
    "Equivalence",
    "FourierBlock4",
    "MappingCoefficients",
    "block_momenta",
    "corner_block",
    "pi_block",
    "regroup",
    "ungroup",
]

from __future__ import annotations

from ..walkclient import WalkClient
from .even_odd import EvenOddWalksMixin
from .evolution import EvolutionMixin, Trajectory, WalkScheme
from .factors import CoinKind, CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator
from .leftright import LeftRightWalksMixin
from .naive import NaiveWalksMixin
from .wilson import WilsonWalksMixin


class Digitizer(LeftRightWalksMixin, NaiveWalksMixin, WilsonWalksMixin, EvenOddWalksMixin, EvolutionMixin):
    """Build the unitary, ultralocal one-step evolution operators.

    Every builder returns a ``WalkOperator`` that keeps its ordered list of
    coin, shift and local factors next to the assembled matrix.

    Modules
    -------
    leftright :
        Left-right walk — mass phase (``build_U_mass``), on-site and
        inter-site rotations (``build_U_on``, ``build_U_int``), their product
        (``build_U_transport``), the coined form (``build_dtqw_compact``) and
        the massive walk (``build_left_right_walk``).
    naive :
        Naive-fermion walk at doubled spacing (``build_naive_dtqw``,
        ``build_right_left_dtqw``, ``build_naive_mass``, ``build_naive_walk``)
        and the two-angle generalization (``build_two_angle_walk``,
        ``two_angle_angles``, ``two_angle_limit``).
    wilson :
        Wilson hopping term as a walk (``build_wilson_dtqw``), its even-odd
        counterpart (``build_wilson_even_odd``) and the complete Wilson-fermion
        walk (``build_wilson_fermion_walk``).
    even_odd :
        Even-odd splitting of the naive transport (``even_odd_transport``,
        ``build_even_odd``).
    evolution :
        Dispatch by scheme name (``build_walk``) and time stepping
        (``apply``, ``evolve``).
    """

    def __init__(self, walk_client: WalkClient | None = None, debug: bool = False) -> None:
        """Initialize the Digitizer.

        Parameters
        ----------
        walk_client : WalkClient, optional
            An existing client. When omitted, a new client is created.
        debug : bool, optional
            Enable debug logging on a newly created client. Default is False.
        """
        self.walk_client = walk_client if walk_client else WalkClient(debug=debug)
        self.logger = self.walk_client.logger
        self.logger.debug("Digitizer class initialized.")


__all__ = [
    "Digitizer",
    "CoinKind",
    "CoinOp",
    "LocalFactor",
    "ShiftKind",
    "ShiftOp",
    "Trajectory",
    "WalkOperator",
    "WalkScheme",
]

__version__ = "0.1.0"

# Core classes
from .digitize import Digitizer
from .equivalence import Equivalence
from .gauge import Gauge, GaugeConfig, GaugeTransform
from .hamiltonians import Hamiltonians
from .lattice import Lattice
from .params import WalkParams
from .verify import Verifier
from .walkclient import WalkClient

# Utilities
from .utils import convert_to_dataframe, export_to_csv, export_to_json

__all__ = [
    "__version__",
    "WalkClient",
    "WalkParams",
    "Lattice",
    "Hamiltonians",
    "Digitizer",
    "Equivalence",
    "Gauge",
    "GaugeConfig",
    "GaugeTransform",
    "Verifier",
    "convert_to_dataframe",
    "export_to_csv",
    "export_to_json",
]

import logging
import os

import yaml

from .params import WalkParams
from .utils import convert_to_dataframe
from .utils import export_to_csv as export_csv_util
from .utils import export_to_json as export_json_util

DEFAULT_TOLERANCES = {
    "algebraic": 1e-15,
    "operator": 1e-12,
    "factorization": 1e-13,
    "spectral": 1e-10,
    "zero_mode": 1e-8,
}
VALID_CONFIG_KEYS = frozenset({"a", "dt", "mass", "wilson_r", "n_sites", "seed", "out_dir", "tolerances"})
# Config keys that map onto WalkParams fields
_PARAM_KEYS = {"a": "a", "dt": "dt", "mass": "m", "wilson_r": "r", "n_sites": "n_sites"}


class WalkClient:
    def __init__(
        self,
        config_file: str | None = None,
        debug: bool = False,
        *,
        a: float | None = None,
        dt: float | None = None,
        mass: float | None = None,
        wilson_r: float | None = None,
        n_sites: int | None = None,
        seed: int | None = None,
        out_dir: str | None = None,
    ):
        """
        Initializes the WalkClient with lattice parameters, tolerances and logging.

        Two supported patterns:

        1) File-based usage (YAML or JSON):
            client = WalkClient(config_file="walk.yaml", debug=False)

           The file may contain:
             - a: 1.0          # lattice spacing
             - dt: 0.5         # time step
             - mass: 0.0
             - wilson_r: 1.0
             - n_sites: 16     # even, at least 4
             - seed: 0         # optional
             - out_dir: "out"  # optional
             - tolerances: {operator: 1e-12, ...}  # optional overrides

        2) Inline parameters:
            client = WalkClient(a=1.0, dt=0.25, n_sites=64, debug=True)

        Rules:
        - If any inline lattice parameter is given, config_file is ignored.
        - With neither, built-in defaults apply (a=1, dt=0.5, m=0, r=1, N=16).

        Parameters:
            config_file (str | None): Path to a YAML or JSON configuration file.
            debug (bool): Flag to enable debug-level logging.
            a, dt, mass, wilson_r, n_sites: Inline lattice parameters.
            seed (int | None): Seed used by randomized checks. Defaults to 0.
            out_dir (str | None): Directory for exported artifacts. Defaults to ".".
        """
        inline = {"a": a, "dt": dt, "mass": mass, "wilson_r": wilson_r, "n_sites": n_sites}
        if any(value is not None for value in inline.values()):
            self.config = {key: value for key, value in inline.items() if value is not None}
        elif config_file:
            self.config = self._load_config(config_file)
        else:
            self.config = {}

        if seed is not None:
            self.config["seed"] = seed
        if out_dir is not None:
            self.config["out_dir"] = out_dir

        unknown = sorted(set(self.config) - VALID_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"Unknown configuration key(s): {unknown}. Valid keys are: {sorted(VALID_CONFIG_KEYS)}")

        # Resolve the lattice parameters; WalkParams validates ranges
        param_kwargs = {field: self.config[key] for key, field in _PARAM_KEYS.items() if key in self.config}
        try:
            self.params = WalkParams(**param_kwargs)
        except TypeError as e:
            raise ValueError(f"Invalid lattice parameter in configuration: {e}") from e

        self.seed = int(self.config.get("seed", 0))
        self.out_dir = str(self.config.get("out_dir", "."))

        tolerances = self.config.get("tolerances") or {}
        if not isinstance(tolerances, dict):
            raise ValueError("'tolerances' must be a mapping of name to float.")
        bad = sorted(set(tolerances) - set(DEFAULT_TOLERANCES))
        if bad:
            raise ValueError(f"Unknown tolerance name(s): {bad}. Valid names are: {sorted(DEFAULT_TOLERANCES)}")
        self.tolerances = {**DEFAULT_TOLERANCES, **{k: float(v) for k, v in tolerances.items()}}

        # Logging setup
        log_dir = "logs"
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)

        # Set log level to DEBUG if debug is True, otherwise INFO
        log_level = logging.DEBUG if debug else logging.INFO
        log_file_path = os.path.join(log_dir, "pydtqw.log")

        self.logger = self._get_logger("pydtqw", log_file_path, log_level)
        self.logger.debug(f"WalkClient initialized with {self.params.describe()}")

    @classmethod
    def from_params(cls, params: WalkParams, debug: bool = False, seed: int | None = None, out_dir: str | None = None) -> "WalkClient":
        """
        Convenience alternative constructor from an existing WalkParams.

        Example:
            client = WalkClient.from_params(WalkParams(a=1.0, dt=0.1, n_sites=32), debug=True)
        """
        return cls(
            config_file=None,
            debug=debug,
            a=params.a,
            dt=params.dt,
            mass=params.m,
            wilson_r=params.r,
            n_sites=params.n_sites,
            seed=seed,
            out_dir=out_dir,
        )

    def resolve_params(self, params: WalkParams | None = None) -> WalkParams:
        """Return ``params`` when given, otherwise the client's own parameters."""
        return self.params if params is None else params

    def _load_config(self, config_file):
        """
        Loads the configuration file in YAML (or JSON) format.

        Parameters:
            config_file (str): Path to the configuration file.

        Returns:
            dict: Parsed configuration as a dictionary.
        """
        with open(config_file) as stream:
            config = yaml.load(stream, Loader=yaml.FullLoader)
        if config is None:
            return {}
        if not isinstance(config, dict):
            raise ValueError(f"Configuration file '{config_file}' must contain a mapping at the top level.")
        return config

    def _get_logger(self, name, log_filename, log_level):
        """
        Sets up and configures a logger for the WalkClient.

        Parameters:
            name (str): Name of the logger.
            log_filename (str): File path where logs will be saved.
            log_level (int): Logging level (DEBUG, INFO, etc.)

        Returns:
            logging.Logger: Configured logger instance.
        """
        logger = logging.getLogger(name)

        # Check if the logger already has handlers to avoid duplicates
        if not logger.handlers:
            handler = logging.FileHandler(log_filename, mode="a")
            formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        logger.setLevel(log_level)

        return logger

    def to_dataframe(self, data):
        """
        Converts a list of dictionaries, a single dictionary, or a simple list to a pandas DataFrame.
        Complex values are split into paired ``_re`` / ``_im`` columns.

        Parameters:
            data: dict, list of dicts, or a simple list

        Returns:
            DataFrame: A pandas DataFrame, or None if conversion fails.
        """
        return convert_to_dataframe(data, logger=self.logger)

    def export_to_csv(self, data, file_name="export.csv", header_comment=None):
        """
        Converts data to a DataFrame and exports it to a CSV file.

        Parameters:
            data: dict, list of dicts, or a simple list
            file_name: str, name of the file to export the CSV to
            header_comment: dict or str, optional lines written as ``# `` comments above the table
        """
        export_csv_util(data, file_name=file_name, logger=self.logger, header_comment=header_comment)

    def export_to_json(self, data, file_name="export.json"):
        """
        Exports nested report data to a deterministic JSON file.

        Parameters:
            data: dict or list, possibly holding NumPy scalars, arrays or complex numbers
            file_name: str, name of the JSON file
        """
        export_json_util(data, file_name=file_name, logger=self.logger)

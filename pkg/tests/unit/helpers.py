"""Shared fakes and independent oracles for pydtqw unit tests.

Intended usage in test files:
    from helpers import FakeLogger, FakeWalkClient, momentum_block
"""

from __future__ import annotations

from typing import Any

import numpy as np

from pydtqw.params import WalkParams
from pydtqw.utils import convert_to_dataframe, export_to_csv, export_to_json
from pydtqw.walkclient import DEFAULT_TOLERANCES


class FakeLogger:
    """Captures log calls without writing to disk."""

    def __init__(self) -> None:
        self.messages: list[dict[str, Any]] = []

    def _log(self, level: str, msg: str) -> None:
        self.messages.append({"level": level, "msg": msg})

    def debug(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self._log("debug", msg)

    def info(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self._log("info", msg)

    def warning(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self._log("warning", msg)

    def error(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self._log("error", msg)

    def exception(self, msg: str, *args: Any, **kwargs: Any) -> None:
        self._log("exception", msg)

    def levels(self) -> list[str]:
        return [m["level"] for m in self.messages]


class FakeWalkClient:
    """Stand-in for WalkClient: same attributes, no log file."""

    def __init__(self, params: WalkParams | None = None, seed: int = 0, out_dir: str = ".", logger: FakeLogger | None = None, **param_changes: Any) -> None:
        base = params or WalkParams()
        self.params = base.replace(**param_changes) if param_changes else base
        self.seed = seed
        self.out_dir = out_dir
        self.tolerances = dict(DEFAULT_TOLERANCES)
        self.logger = logger or FakeLogger()

    def resolve_params(self, params: WalkParams | None = None) -> WalkParams:
        return self.params if params is None else params

    def to_dataframe(self, data: Any) -> Any:
        return convert_to_dataframe(data, logger=self.logger)

    def export_to_csv(self, data: Any, file_name: str = "export.csv", header_comment: Any = None) -> None:
        export_to_csv(data, file_name=file_name, logger=self.logger, header_comment=header_comment)

    def export_to_json(self, data: Any, file_name: str = "export.json") -> None:
        export_to_json(data, file_name=file_name, logger=self.logger)


# ---------------------------------------------------------------------------
# Independent momentum-space oracles
# ---------------------------------------------------------------------------


def momentum_block(matrix: np.ndarray, n_sites: int, k: float, a: float = 1.0) -> np.ndarray:
    """2x2 block of a translation-invariant LR operator on the plane wave ``exp(i k p a)``.

    Reads the block off the action on plane waves at site 0, so it does not
    rely on any Fourier helper of the package.
    """
    wave = np.exp(1j * k * a * np.arange(n_sites))
    block = np.zeros((2, 2), dtype=complex)
    for d in range(2):
        vec = np.zeros(2 * n_sites, dtype=complex)
        vec[d * n_sites : (d + 1) * n_sites] = wave
        out = matrix @ vec
        block[0, d] = out[0]
        block[1, d] = out[n_sites]
    return block


def left_right_block(k: float, params: WalkParams) -> np.ndarray:
    a, m = params.a, params.m
    return np.array(
        [
            [m, (-1j / a) * (1 - np.exp(-1j * k * a))],
            [(-1j / a) * (np.exp(1j * k * a) - 1), -m],
        ],
        dtype=complex,
    )


def naive_block(k: float, params: WalkParams) -> np.ndarray:
    a, m = params.a, params.m
    sigma1 = np.array([[0, 1], [1, 0]], dtype=complex)
    sigma2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    return (np.sin(k * a) / a) * sigma1 - m * sigma2


def wilson_block(k: float, params: WalkParams) -> np.ndarray:
    a, r = params.a, params.r
    sigma3 = np.diag([1.0, -1.0]).astype(complex)
    return naive_block(k, params) + (r / a) * (1 - np.cos(k * a)) * sigma3


def momenta(params: WalkParams) -> np.ndarray:
    return 2.0 * np.pi * np.arange(params.n_sites) / (params.n_sites * params.a)

"""Run configuration: a strict TOML document mapped onto validated dataclasses.

Unknown keys are rejected with their field path so that a reproduction config
cannot silently drift from what the code actually consumes.  The device is
given either directly as (E_C, E_J) or spectroscopy-style as (omega_10, eta);
exactly one of the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .errors import ConfigError
from .resonance import TransitionFamily, parse_transition_tag
from .tls import TlsSpec
from .transmon import (
    DEFAULT_CHARGE_CUTOFF,
    DEFAULT_K_MAX,
    DeviceParams,
    params_from_spectroscopy,
)

DEFAULT_N_RANGE = (1, 800)
DEFAULT_N_TOTAL_RANGE = (0, 130)
DEFAULT_TRANSITION_TAGS = ("nnn-0-to-6", "nn-0-to-3")


@dataclass(frozen=True)
class SpectroscopyTarget:
    """Experiment-style device description, inverted on demand."""

    omega_10: float
    eta: float
    omega_r: float
    g: float
    n_g: float
    k_max: int
    charge_cutoff: int
    epsilon_sym: float


@dataclass(frozen=True)
class SweepGrid:
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class OutputSpec:
    directory: str = "out"
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    device: DeviceParams | SpectroscopyTarget
    sweep: SweepGrid | None
    n_range: tuple[int, int]
    n_total_range: tuple[int, int]
    transitions: tuple[TransitionFamily, ...]
    tls: TlsSpec | None
    output: OutputSpec

    def build_params(self) -> DeviceParams:
        """Resolved device parameters (runs the spectroscopy inversion if needed)."""
        if isinstance(self.device, DeviceParams):
            return self.device
        d = self.device
        return params_from_spectroscopy(
            d.omega_10,
            d.eta,
            omega_r=d.omega_r,
            g=d.g,
            n_g=d.n_g,
            k_max=d.k_max,
            charge_cutoff=d.charge_cutoff,
            epsilon_sym=d.epsilon_sym,
        )


def _reject_unknown(table: dict, allowed: set[str], path: str) -> None:
    unknown = set(table) - allowed
    if unknown:
        names = ", ".join(f"{path}.{k}" if path else k for k in sorted(unknown))
        raise ConfigError(f"unknown config key(s): {names}")


def _number(table: dict, key: str, path: str, default=None):
    if key not in table:
        if default is None:
            raise ConfigError(f"missing required key {path}.{key}")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key} must be finite")
    return float(value)


def _integer(table: dict, key: str, path: str, default=None):
    if key not in table:
        if default is None:
            raise ConfigError(f"missing required key {path}.{key}")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key} must be an integer, got {value!r}")
    return value


def _int_pair(table: dict, key: str, path: str, default: tuple[int, int]) -> tuple[int, int]:
    if key not in table:
        return default
    value = table[key]
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, int) for v in value)
    ):
        raise ConfigError(f"{path}.{key} must be a pair of integers")
    lo, hi = value
    if hi < lo:
        raise ConfigError(f"{path}.{key} must be ordered (lo <= hi)")
    return (lo, hi)


def _parse_device(table: dict, epsilon_sym: float | None) -> DeviceParams | SpectroscopyTarget:
    allowed = {
        "E_C", "E_J", "omega_10", "eta", "omega_r", "g",
        "n_g", "k_max", "charge_cutoff", "epsilon_sym",
    }
    _reject_unknown(table, allowed, "device")

    if "epsilon_sym" in table:
        if epsilon_sym is not None:
            raise ConfigError(
                "epsilon_sym given both at top level and as device.epsilon_sym"
            )
        epsilon_sym = _number(table, "epsilon_sym", "device")
    elif epsilon_sym is None:
        epsilon_sym = 0.0
    if epsilon_sym < 0:
        raise ConfigError("epsilon_sym must be non-negative")

    direct = {"E_C", "E_J"} & set(table)
    spectro = {"omega_10", "eta"} & set(table)
    if direct and spectro:
        raise ConfigError(
            "conflicting device blocks: give either device.E_C/device.E_J or "
            "device.omega_10/device.eta, not both"
        )
    if not direct and not spectro:
        raise ConfigError(
            "device block must contain either (E_C, E_J) or (omega_10, eta)"
        )

    common = dict(
        omega_r=_number(table, "omega_r", "device"),
        g=_number(table, "g", "device"),
        n_g=_number(table, "n_g", "device", 0.0),
        k_max=_integer(table, "k_max", "device", DEFAULT_K_MAX),
        charge_cutoff=_integer(table, "charge_cutoff", "device", DEFAULT_CHARGE_CUTOFF),
        epsilon_sym=epsilon_sym,
    )
    try:
        if direct:
            if direct != {"E_C", "E_J"}:
                raise ConfigError("device.E_C and device.E_J must be given together")
            return DeviceParams(
                E_C=_number(table, "E_C", "device"),
                E_J=_number(table, "E_J", "device"),
                **common,
            )
        if spectro != {"omega_10", "eta"}:
            raise ConfigError("device.omega_10 and device.eta must be given together")
        target = SpectroscopyTarget(
            omega_10=_number(table, "omega_10", "device"),
            eta=_number(table, "eta", "device"),
            **common,
        )
        if target.omega_10 <= 0:
            raise ConfigError("device.omega_10 must be positive")
        if target.eta >= 0:
            raise ConfigError("device.eta must be negative")
        return target
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"device: {exc}") from exc


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a TOML run configuration."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc

    allowed_top = {"device", "sweep", "ranges", "transitions", "epsilon_sym", "tls", "output"}
    _reject_unknown(doc, allowed_top, "")

    if "device" not in doc or not isinstance(doc["device"], dict):
        raise ConfigError("missing required [device] block")

    eps = _number(doc, "epsilon_sym", "", 0.0) if "epsilon_sym" in doc else None

    device = _parse_device(doc["device"], eps)

    sweep = None
    if "sweep" in doc:
        table = doc["sweep"]
        if not isinstance(table, dict):
            raise ConfigError("[sweep] must be a table")
        _reject_unknown(table, {"start", "stop", "count"}, "sweep")
        sweep = SweepGrid(
            start=_number(table, "start", "sweep"),
            stop=_number(table, "stop", "sweep"),
            count=_integer(table, "count", "sweep"),
        )
        if sweep.count < 1:
            raise ConfigError("sweep.count must be >= 1")
        if sweep.stop < sweep.start:
            raise ConfigError("sweep.stop must be >= sweep.start")

    ranges = doc.get("ranges", {})
    if not isinstance(ranges, dict):
        raise ConfigError("[ranges] must be a table")
    _reject_unknown(ranges, {"n_range", "n_total_range"}, "ranges")
    n_range = _int_pair(ranges, "n_range", "ranges", DEFAULT_N_RANGE)
    n_total_range = _int_pair(ranges, "n_total_range", "ranges", DEFAULT_N_TOTAL_RANGE)
    if n_range[0] < 0 or n_total_range[0] < 0:
        raise ConfigError("ranges must be non-negative")

    tags = doc.get("transitions", list(DEFAULT_TRANSITION_TAGS))
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise ConfigError("transitions must be a list of tag strings")
    if not tags:
        raise ConfigError("transitions must be non-empty")
    try:
        transitions = tuple(parse_transition_tag(t) for t in tags)
    except ValueError as exc:
        raise ConfigError(f"transitions: {exc}") from exc

    tls = None
    if "tls" in doc:
        table = doc["tls"]
        if not isinstance(table, dict):
            raise ConfigError("[tls] must be a table")
        _reject_unknown(table, {"omega_tls", "final_level"}, "tls")
        try:
            tls = TlsSpec(
                omega_tls=_number(table, "omega_tls", "tls"),
                final_level=_integer(table, "final_level", "tls", 2),
            )
        except ValueError as exc:
            raise ConfigError(f"tls: {exc}") from exc

    out_table = doc.get("output", {})
    if not isinstance(out_table, dict):
        raise ConfigError("[output] must be a table")
    _reject_unknown(out_table, {"directory", "format"}, "output")
    fmt = out_table.get("format", "csv")
    if fmt != "csv":
        raise ConfigError(f"output.format must be 'csv', got {fmt!r}")
    directory = out_table.get("directory", "out")
    if not isinstance(directory, str):
        raise ConfigError("output.directory must be a string")
    output = OutputSpec(directory=directory, format=fmt)

    return RunConfig(
        device=device,
        sweep=sweep,
        n_range=n_range,
        n_total_range=n_total_range,
        transitions=transitions,
        tls=tls,
        output=output,
    )

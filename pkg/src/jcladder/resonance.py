"""Resonant photon numbers and qubit-frequency sweeps for inter-strip transitions.

A transition family fixes the initial and final dressed labels and the strip
offset; scanning the photon number of the initial state locates the crossing
of the two dressed energies.  Photon number is physically an integer, so the
scan brackets a sign change of the energy mismatch, reports the linearly
interpolated crossing n_star for smooth curves, and evaluates couplings at the
nearest integer n_res.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .coupling import CouplingResult, TransitionSpec, effective_coupling
from .errors import ConvergenceError, SuspiciousScanWarning
from .ladder import LadderModel, critical_photon_number
from .transmon import (
    DEFAULT_CHARGE_CUTOFF,
    DEFAULT_K_MAX,
    params_from_spectroscopy,
)

MAX_EXPECTED_CROSSINGS = 5

_TAG_PATTERN = re.compile(r"^(nn|nnn)-(\d+)-to-(\d+)$")


@dataclass(frozen=True)
class TransitionFamily:
    """Transition template (k_i -> k_f, strip offset m) at variable photon number."""

    k_f: int
    m: int
    k_i: int = 0

    def __post_init__(self) -> None:
        if self.m not in (1, 2):
            raise ValueError("strip offset m must be 1 or 2")
        if self.k_i < 0 or self.k_f < 0:
            raise ValueError("levels must be non-negative")

    @property
    def tag(self) -> str:
        prefix = "nnn" if self.m == 2 else "nn"
        return f"{prefix}-{self.k_i}-to-{self.k_f}"

    def at_photon_number(self, n: int) -> TransitionSpec:
        """Concrete transition with n initial photons (n_f preserves the offset)."""
        n_f = self.k_i + n + self.m - self.k_f
        return TransitionSpec(k_i=self.k_i, n_i=n, k_f=self.k_f, n_f=n_f)

    @property
    def min_photon_number(self) -> int:
        """Smallest initial photon number with both labels present (n >= k_f)."""
        return max(self.k_f, self.k_i)


def parse_transition_tag(tag: str) -> TransitionFamily:
    """Parse tags like ``nnn-0-to-6`` (next-nearest strips) or ``nn-0-to-3``."""
    match = _TAG_PATTERN.match(tag)
    if match is None:
        raise ValueError(
            f"malformed transition tag {tag!r}; expected e.g. 'nnn-0-to-6' or 'nn-0-to-3'"
        )
    prefix, k_i, k_f = match.groups()
    return TransitionFamily(k_f=int(k_f), m=2 if prefix == "nnn" else 1, k_i=int(k_i))


@dataclass(frozen=True)
class ResonancePoint:
    """One located crossing of initial and final dressed levels."""

    omega_10: float
    delta: float
    n_star: float
    n_res: int
    mismatch_at_n_res: float
    coupling: CouplingResult
    family: TransitionFamily


def energy_mismatch(model: LadderModel, family: TransitionFamily, n: int) -> float:
    """Signed (E_final - E_initial) in GHz for the family at n initial photons."""
    t = family.at_photon_number(n)
    return model.dressed_energy(t.k_f, t.n_f) - model.dressed_energy(t.k_i, t.n_i)


def bracket_sign_changes(ns: list[int], values: list[float]) -> list[tuple[float, int, float]]:
    """Locate sign changes on an integer grid.

    Returns (x_star, x_res, value_at_x_res) per crossing: x_star is the linear
    interpolation of the zero, x_res the bracketing integer with the smaller
    |value|.  Exact zeros count as crossings at the grid point itself.
    """
    crossings: list[tuple[float, int, float]] = []
    for i in range(len(ns) - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            crossings.append((float(ns[i]), ns[i], a))
        elif a * b < 0.0:
            x_star = ns[i] + (ns[i + 1] - ns[i]) * a / (a - b)
            if abs(a) <= abs(b):
                crossings.append((x_star, ns[i], a))
            else:
                crossings.append((x_star, ns[i + 1], b))
    if len(ns) > 1 and values[-1] == 0.0:
        crossings.append((float(ns[-1]), ns[-1], 0.0))
    return crossings


def find_resonances(
    model: LadderModel, family: TransitionFamily, n_range: tuple[int, int]
) -> list[ResonancePoint]:
    """All photon-number crossings of the family in n_range, ordered by n.

    The scan starts no lower than the family's minimum photon number.  An
    empty list means no sign change in range (not an error).  More than
    MAX_EXPECTED_CROSSINGS crossings flags a suspicious configuration.
    """
    lo, hi = n_range
    lo = max(int(lo), family.min_photon_number)
    hi = int(hi)
    if hi < lo:
        return []

    ns = list(range(lo, hi + 1))
    values = [energy_mismatch(model, family, n) for n in ns]
    crossings = bracket_sign_changes(ns, values)
    if len(crossings) > MAX_EXPECTED_CROSSINGS:
        warnings.warn(
            f"{len(crossings)} crossings for {family.tag} in n range {n_range}; "
            f"suspicious configuration",
            SuspiciousScanWarning,
            stacklevel=2,
        )

    omega_10 = model.spectrum.omega_10
    delta = omega_10 - model.params.omega_r
    points = []
    for n_star, n_res, mismatch in crossings:
        points.append(
            ResonancePoint(
                omega_10=omega_10,
                delta=delta,
                n_star=n_star,
                n_res=n_res,
                mismatch_at_n_res=mismatch,
                coupling=effective_coupling(model, family.at_photon_number(n_res)),
                family=family,
            )
        )
    return points


def find_resonant_photon_number(
    model: LadderModel, family: TransitionFamily, n_range: tuple[int, int]
) -> ResonancePoint | None:
    """Primary (lowest-n) resonance of the family in range, or None."""
    points = find_resonances(model, family, n_range)
    return points[0] if points else None


@dataclass(frozen=True)
class SweepResult:
    """Resonances over a qubit-frequency grid, plus grid points that failed
    device inversion (recorded as gaps, not aborts)."""

    points: tuple[ResonancePoint, ...]
    gaps: tuple[tuple[float, str], ...]


def sweep_qubit_frequency(
    omega_10_values,
    families,
    *,
    eta: float,
    omega_r: float,
    g: float,
    n_range: tuple[int, int],
    n_g: float = 0.0,
    k_max: int = DEFAULT_K_MAX,
    charge_cutoff: int = DEFAULT_CHARGE_CUTOFF,
    epsilon_sym: float = 0.0,
) -> SweepResult:
    """Primary resonance of each family at each qubit frequency.

    Each grid point gets its own device via the spectroscopy inversion at
    fixed (eta, omega_r, g); output is ordered by grid index then family
    order, so repeated runs are byte-for-byte reproducible downstream.
    """
    points: list[ResonancePoint] = []
    gaps: list[tuple[float, str]] = []
    for omega_10 in omega_10_values:
        try:
            params = params_from_spectroscopy(
                float(omega_10),
                eta,
                omega_r=omega_r,
                g=g,
                n_g=n_g,
                k_max=k_max,
                charge_cutoff=charge_cutoff,
                epsilon_sym=epsilon_sym,
            )
        except (ValueError, ConvergenceError) as exc:
            gaps.append((float(omega_10), str(exc)))
            continue
        model = LadderModel(params)
        for family in families:
            point = find_resonant_photon_number(model, family, n_range)
            if point is not None:
                points.append(point)
    return SweepResult(points=tuple(points), gaps=tuple(gaps))


def sweep_critical_photon_number(model: LadderModel) -> float:
    """Convenience: n_c for the model's device."""
    return critical_photon_number(model.params, model.spectrum)

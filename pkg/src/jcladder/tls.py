"""Crossings between dressed qubit-resonator levels and a spectator defect mode.

A two-level defect (TLS) of frequency omega_tls enters only as an additive
spectator energy: the composite process |0, n>|0> -> |k_f, n - (k_f+1)>|1>
conserves total excitation number, and its level crossing is located by the
same integer-bracketing scheme used for the inter-strip resonances.  The
closed-form estimate omega_r + 2|Delta| + |eta| ignores level repulsion and
therefore sits below the exact crossing frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ladder import LadderModel, critical_photon_number
from .resonance import bracket_sign_changes


@dataclass(frozen=True)
class TlsSpec:
    """Defect frequency and the composite process it participates in.

    The default process is |0, n>|0>_tls -> |2, n-3>|1>_tls; in general the
    final qubit level k_f fixes the photon drop at k_f + 1 so that total
    excitation number is conserved.
    """

    omega_tls: float
    final_level: int = 2

    def __post_init__(self) -> None:
        if self.omega_tls <= 0:
            raise ValueError("omega_tls must be positive")
        if self.final_level < 1:
            raise ValueError("final_level must be >= 1")

    @property
    def photon_drop(self) -> int:
        return self.final_level + 1


@dataclass(frozen=True)
class TlsCrossing:
    n_star: float
    n_res: int
    n_over_nc: float


@dataclass(frozen=True)
class TlsCrossingDiagram:
    """Composite-level curves E(|0,n>) and E(|k_f, n-drop>) + omega_tls vs n."""

    photon_numbers: np.ndarray
    e_initial: np.ndarray
    e_final: np.ndarray
    crossing: TlsCrossing | None
    condition_estimate: float


def tls_resonance_condition(model: LadderModel) -> float:
    """Estimate of the defect frequency crossing the default process:
    omega_r + 2 |Delta| + |eta|, GHz.

    The exact crossing frequency is a little larger because level repulsion
    raises the initial dressed branch.
    """
    delta = model.spectrum.omega_10 - model.params.omega_r
    return model.params.omega_r + 2.0 * abs(delta) + abs(model.spectrum.eta)


def tls_crossing_diagram(
    model: LadderModel, tls: TlsSpec, n_range: tuple[int, int]
) -> TlsCrossingDiagram:
    """Composite crossing diagram over n_range.

    Curves are always returned; the crossing is absent when the range misses
    it.  The defect contributes only its excitation energy to the final curve.
    """
    lo, hi = n_range
    lo = max(int(lo), tls.photon_drop)
    hi = int(hi)
    if hi < lo:
        raise ValueError(f"empty photon range {n_range} for photon drop {tls.photon_drop}")

    ns = list(range(lo, hi + 1))
    e_init = [model.dressed_energy(0, n) for n in ns]
    e_final = [
        model.dressed_energy(tls.final_level, n - tls.photon_drop) + tls.omega_tls
        for n in ns
    ]
    diff = [f - i for f, i in zip(e_final, e_init)]

    crossings = bracket_sign_changes(ns, diff)
    crossing = None
    if crossings:
        n_star, n_res, _ = crossings[0]
        n_c = critical_photon_number(model.params, model.spectrum)
        crossing = TlsCrossing(n_star=n_star, n_res=n_res, n_over_nc=n_star / n_c)

    return TlsCrossingDiagram(
        photon_numbers=np.array(ns),
        e_initial=np.array(e_init),
        e_final=np.array(e_final),
        crossing=crossing,
        condition_estimate=tls_resonance_condition(model),
    )


def bare_amplitude(model: LadderModel, n: int, l: int) -> float:
    """Amplitude of bare |l, n-l> in the dressed state connected to |0, n>."""
    strip = model.strip(n)
    if not 0 <= l < strip.dim:
        raise IndexError(f"bare label {l} out of range for strip N={n} (dim {strip.dim})")
    return float(strip.coeffs[0, l])

"""Excitation-number strips of the transmon-resonator ladder.

The excitation-conserving part of the charge-charge interaction couples bare
states only within a strip of fixed total excitation N = k + n.  Each strip
Hamiltonian is real symmetric tridiagonal: diagonal E_k + (N - k) omega_r,
off-diagonal g_{k,k+1} sqrt(N - k).  Diagonalizing strip by strip yields the
dressed states, the fan-diagram frequencies and the photon-number-dependent
ac Stark shift of the qubit transition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import linear_sum_assignment

from .errors import ConvergenceError
from .transmon import (
    DeviceParams,
    TransmonSpectrum,
    broken_symmetry_coupling,
    normalized_charge_coupling,
    solve_transmon,
)

# Squared-overlap margin below which a max-overlap relabeling is considered
# ambiguous; together with any disagreement between max-overlap matching and
# the adiabatic labels it marks a strip as strongly mixed.
ASSIGNMENT_AMBIGUITY_TOL = 1e-6


@dataclass(frozen=True)
class StripEigensystem:
    """Dressed eigensystem of one excitation strip.

    ``coeffs[k, l]`` is the amplitude of bare state |l, N-l> in the dressed
    state labeled k (rows are orthonormal); ``energies[k]`` is its energy in
    GHz.  Label k is the eigenstate adiabatically connected to bare |k, N-k>:
    the strip Hamiltonian is irreducible tridiagonal, so its eigenvalues stay
    simple along the coupling ramp and the connection is fixed by matching
    eigenvalue rank to the rank of the bare diagonal.  Sign convention:
    coeffs[k, k] > 0.

    ``assignment_quality[k] = coeffs[k, k]**2`` exposes how bare-like each
    label still is; ``strongly_mixed`` is set when a maximum-|overlap|^2
    matching would disagree with the adiabatic labels (or comes within
    ASSIGNMENT_AMBIGUITY_TOL of doing so), which happens deep in the
    strong-mixing regime where bare labels lose meaning.
    """

    N: int
    dim: int
    energies: np.ndarray
    coeffs: np.ndarray
    assignment_quality: np.ndarray
    strongly_mixed: bool


class LadderModel:
    """Lazily solved map of excitation strips for one device.

    Strip solves are pure functions of (spectrum, params, N) and are memoized;
    instances are cheap to share read-only once built.
    """

    def __init__(self, params: DeviceParams, spectrum: TransmonSpectrum | None = None):
        self.params = params
        self.spectrum = solve_transmon(params) if spectrum is None else spectrum
        k_max = self.spectrum.k_max
        self._g_step = np.array(
            [normalized_charge_coupling(self.spectrum, k, k + 1) for k in range(k_max)]
        )
        self._g_skip3 = np.array(
            [normalized_charge_coupling(self.spectrum, k, k + 3) for k in range(max(k_max - 2, 0))]
        )
        self._strips: dict[int, StripEigensystem] = {}

    @property
    def k_max(self) -> int:
        return self.spectrum.k_max

    def coupling_step(self, l: int) -> float:
        """Numeric g_{l,l+1} in GHz."""
        return float(self._g_step[l])

    def coupling_skip3(self, l: int) -> float:
        """Numeric g_{l,l+3} in GHz."""
        return float(self._g_skip3[l])

    def coupling_broken(self, l: int) -> float:
        """Model g_{l,l+2} in GHz from the device's epsilon_sym."""
        return broken_symmetry_coupling(self.spectrum, l)

    def strip_dim(self, N: int) -> int:
        return min(N, self.k_max) + 1

    def strip_hamiltonian(self, N: int) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and off-diagonal of the strip-N tridiagonal Hamiltonian."""
        if N < 0:
            raise ValueError("total excitation number must be non-negative")
        dim = self.strip_dim(N)
        k = np.arange(dim, dtype=float)
        diag = self.spectrum.levels[:dim] + (N - k) * self.params.omega_r
        off = self._g_step[: dim - 1] * np.sqrt(N - k[: dim - 1])
        return diag, off

    def strip(self, N: int) -> StripEigensystem:
        """Diagonalize strip N (memoized)."""
        cached = self._strips.get(N)
        if cached is not None:
            return cached

        diag, off = self.strip_hamiltonian(N)
        dim = len(diag)
        if dim == 1:
            result = StripEigensystem(
                N=N,
                dim=1,
                energies=diag.copy(),
                coeffs=np.ones((1, 1)),
                assignment_quality=np.ones(1),
                strongly_mixed=False,
            )
            self._strips[N] = result
            return result

        vals, vecs = eigh_tridiagonal(diag, off, check_finite=False)
        if np.min(np.diff(vals)) <= 1e-12:
            raise ConvergenceError(
                f"strip N={N} eigenvalues not simple (min gap "
                f"{np.min(np.diff(vals)):.2e} GHz)"
            )

        # Adiabatic labels: eigenvalue rank (ascending) matches bare-diagonal
        # rank.  With the usual negative detuning the bare diagonal decreases
        # with k, so label 0 is the top of the strip.
        eig_of_label = np.argsort(np.argsort(diag, kind="stable"), kind="stable")

        # Diagnostic: would a max-overlap matching relabel the strip?
        overlap2 = vecs.T**2  # [eigenstate j, bare l]
        eig_idx, labels = linear_sum_assignment(overlap2, maximize=True)
        overlap_eig_of_label = np.empty(dim, dtype=int)
        overlap_eig_of_label[labels] = eig_idx
        strongly_mixed = bool(np.any(overlap_eig_of_label != eig_of_label))
        if not strongly_mixed:
            for row in overlap2:
                top_two = np.partition(row, dim - 2)[-2:]
                if top_two[1] - top_two[0] < ASSIGNMENT_AMBIGUITY_TOL:
                    strongly_mixed = True
                    break

        coeffs = vecs[:, eig_of_label].T.copy()
        for k in range(dim):
            d = coeffs[k, k]
            if d < 0 or (d == 0 and coeffs[k, np.argmax(np.abs(coeffs[k]))] < 0):
                coeffs[k] = -coeffs[k]

        result = StripEigensystem(
            N=N,
            dim=dim,
            energies=vals[eig_of_label].copy(),
            coeffs=coeffs,
            assignment_quality=np.diag(coeffs) ** 2,
            strongly_mixed=strongly_mixed,
        )
        self._strips[N] = result
        return result

    def dressed_energy(self, k: int, n: int) -> float:
        """Energy of the dressed state adiabatically connected to |k, n>, GHz."""
        if n < 0:
            raise ValueError("photon number must be non-negative")
        strip = self.strip(k + n)
        if not 0 <= k < strip.dim:
            raise ValueError(f"label {k} unavailable in strip N={k + n} (dim {strip.dim})")
        return float(strip.energies[k])

    def fan_frequency(self, k: int, n_total: int) -> float:
        """Fan-diagram ordinate: dressed energy of label k in strip n_total,
        minus n_total * omega_r."""
        if not 0 <= k <= min(n_total, self.k_max):
            raise ValueError(f"label {k} exceeds strip N={n_total} content")
        return self.dressed_energy(k, n_total - k) - n_total * self.params.omega_r

    def stark_shift(self, n: int, *, rezero: bool = False) -> float:
        """Photon-number-dependent shift of the 0-1 transition, GHz (signed).

        Defined relative to the bare omega_10, so n = 0 carries the
        Lamb-type offset; ``rezero=True`` subtracts the n = 0 value instead.
        """
        shift = (
            self.dressed_energy(1, n)
            - self.dressed_energy(0, n)
            - self.spectrum.omega_10
        )
        if rezero:
            shift -= (
                self.dressed_energy(1, 0)
                - self.dressed_energy(0, 0)
                - self.spectrum.omega_10
            )
        return shift


def diagonalize_strip(model: LadderModel, N: int) -> StripEigensystem:
    """Functional alias for :meth:`LadderModel.strip`."""
    return model.strip(N)


def dispersive_chi(spec: TransmonSpectrum, params: DeviceParams) -> float:
    """Second-order dispersive shift chi of the 0-1 transition, GHz (signed).

    chi = g_01^2 / Delta - g_12^2 / (2 (Delta + eta)) with the numeric charge
    couplings; the small-n ac Stark slope is 2 chi per photon (the
    conventional linear calibration is delta_omega_10 = -2 |chi| n for
    negative chi).  With harmonic matrix elements (g_12^2 -> 2 g^2) this
    reduces to the textbook g^2 eta / (Delta (Delta + eta)); the transmon
    correction to g_12 matters here because the two terms nearly cancel.
    """
    delta = spec.omega_10 - params.omega_r
    if abs(delta) < 1e-9 or abs(delta + spec.eta) < 1e-9:
        raise ValueError(
            f"dispersive pole: Delta = {delta:.4g} GHz must avoid 0 and "
            f"-eta = {-spec.eta:.4g} GHz"
        )
    if spec.k_max >= 2:
        g01 = normalized_charge_coupling(spec, 0, 1)
        g12 = normalized_charge_coupling(spec, 1, 2)
    else:
        g01 = params.g
        g12 = params.g * np.sqrt(2.0) * (1.0 + 0.5 * spec.eta / spec.omega_10)
    return g01**2 / delta - g12**2 / (2.0 * (delta + spec.eta))


def critical_photon_number(params: DeviceParams, spec: TransmonSpectrum) -> float:
    """n_c = (Delta / 2g)^2, the photon scale where dispersive theory degrades."""
    if params.g <= 0:
        raise ValueError("critical photon number requires g > 0")
    delta = spec.omega_10 - params.omega_r
    return (delta / (2.0 * params.g)) ** 2

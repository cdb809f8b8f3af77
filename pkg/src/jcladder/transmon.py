"""Isolated-transmon spectrum and charge couplings in the truncated charge basis.

The Cooper-pair-box Hamiltonian ``4 E_C (n - n_g)^2 - (E_J/2) (|n><n+1| + h.c.)``
is diagonalized on the charge lattice ``n = -charge_cutoff .. +charge_cutoff``.
All energies are stored as ordinary frequencies (E/h, GHz), so coupling
formulas are plain products of frequencies with no unit constants.

The charge operator is represented by ``n - n_g``; any affine rescaling of it
cancels in the normalized couplings ``g_{k,k'} = g <k|Q|k'> / <0|Q|1>``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import ConvergenceError, ShallowWellWarning

DEFAULT_K_MAX = 9
DEFAULT_CHARGE_CUTOFF = 30

# Eigenvalue drift allowed under doubling of the charge cutoff, measured
# against the local level spacing.
CUTOFF_CONVERGENCE_TOL = 1e-10

MIN_EJ_OVER_EC = 10.0


@dataclass(frozen=True)
class DeviceParams:
    """Parameters of a capacitively coupled transmon-resonator pair.

    ``E_C``, ``E_J``, ``omega_r`` and ``g`` are frequencies in GHz; ``g`` is
    the vacuum coupling of the 0-1 transition.  ``epsilon_sym`` is the
    dimensionless symmetry-breaking ratio g_{0,2}/g used by the
    nearest-strip coupling model (0 restores the parity selection rule).
    """

    E_C: float
    E_J: float
    omega_r: float
    g: float
    n_g: float = 0.0
    k_max: int = DEFAULT_K_MAX
    charge_cutoff: int = DEFAULT_CHARGE_CUTOFF
    epsilon_sym: float = 0.0

    def __post_init__(self) -> None:
        if not (self.E_C > 0 and self.E_J > 0):
            raise ValueError("E_C and E_J must be positive")
        if self.E_J / self.E_C < MIN_EJ_OVER_EC:
            raise ValueError(
                f"transmon regime requires E_J/E_C >= {MIN_EJ_OVER_EC:g}, "
                f"got {self.E_J / self.E_C:.4g}"
            )
        if self.omega_r <= 0:
            raise ValueError("omega_r must be positive")
        # g = 0 is admitted for decoupled-limit checks.
        if self.g < 0:
            raise ValueError("g must be non-negative")
        if self.charge_cutoff < 15:
            raise ValueError("charge_cutoff must be >= 15")
        if not (0 <= self.k_max <= self.charge_cutoff):
            raise ValueError("k_max must satisfy 0 <= k_max <= charge_cutoff")
        if self.epsilon_sym < 0:
            raise ValueError("epsilon_sym must be non-negative")

    @property
    def ej_over_ec(self) -> float:
        return self.E_J / self.E_C


@dataclass(frozen=True)
class TransmonSpectrum:
    """Solved transmon levels and charge-operator matrix elements.

    ``levels[k]`` is E_k in GHz for k = 0..k_max; ``charge_elems[k, l]`` is
    <k|Q|l> with Q = n - n_g (real symmetric, phase convention below);
    ``charge_norm`` is <0|Q|1>, positive by convention.
    """

    levels: np.ndarray
    charge_elems: np.ndarray
    omega_10: float
    eta: float
    charge_norm: float
    params_used: DeviceParams

    @property
    def k_max(self) -> int:
        return len(self.levels) - 1

    def transition_frequency(self, k: int, l: int) -> float:
        """omega_kl = E_k - E_l in GHz."""
        return float(self.levels[k] - self.levels[l])


def _charge_hamiltonian(
    E_C: float, E_J: float, n_g: float, cutoff: int
) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(-cutoff, cutoff + 1, dtype=float)
    diag = 4.0 * E_C * (n - n_g) ** 2
    off = np.full(2 * cutoff, -0.5 * E_J)
    return diag, off


def _lowest_levels(
    E_C: float, E_J: float, n_g: float, cutoff: int, count: int
) -> np.ndarray:
    diag, off = _charge_hamiltonian(E_C, E_J, n_g, cutoff)
    return eigvalsh_tridiagonal(
        diag, off, select="i", select_range=(0, count - 1), check_finite=False
    )


def solve_transmon(params: DeviceParams) -> TransmonSpectrum:
    """Diagonalize the charge-basis transmon and build its charge matrix.

    Eigenvector phases are fixed so that every nearest-neighbor element
    <k|Q|k+1> is positive (which implies <0|Q|1> > 0), starting from a ground
    state whose largest-magnitude charge component is positive.  The spectrum
    is verified to be converged with respect to the charge cutoff: doubling
    the cutoff must move each retained level by less than
    ``CUTOFF_CONVERGENCE_TOL`` of the local level spacing.

    Raises ConvergenceError if the truncation is too tight, and warns with
    ShallowWellWarning when retained levels lie above the Josephson barrier
    top (k_max past the bound-state-like part of the spectrum).
    """
    cutoff = params.charge_cutoff
    n_keep = params.k_max + 1
    # One spare level for the local-spacing denominators, plus levels 0..2
    # for omega_10 and eta even when k_max < 2.
    n_solve = min(max(n_keep + 1, 4), 2 * cutoff + 1)

    diag, off = _charge_hamiltonian(params.E_C, params.E_J, params.n_g, cutoff)
    vals, vecs = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, n_solve - 1), check_finite=False
    )

    if not np.all(np.diff(vals) > 0):
        raise ConvergenceError("charge-basis eigenvalues are not strictly increasing")

    vals_fine = _lowest_levels(params.E_C, params.E_J, params.n_g, 2 * cutoff, n_solve)
    spacing = np.diff(vals)
    drift = np.abs(vals[:n_keep] - vals_fine[:n_keep])
    rel = drift / spacing[np.minimum(np.arange(n_keep), len(spacing) - 1)]
    if np.max(rel) > CUTOFF_CONVERGENCE_TOL:
        raise ConvergenceError(
            f"spectrum not converged at charge_cutoff={cutoff}: "
            f"max drift {np.max(rel):.2e} of level spacing under cutoff doubling"
        )

    if vals[n_keep - 1] >= params.E_J:
        n_bound = int(np.searchsorted(vals, params.E_J))
        warnings.warn(
            f"k_max={params.k_max} exceeds the ~{n_bound} bound-state-like levels "
            f"(E_k below the barrier top E_J); higher levels are kept but are "
            f"free-rotor-like",
            ShallowWellWarning,
            stacklevel=2,
        )

    # Charge operator in the eigenbasis; columns of `vecs` are eigenvectors.
    n_vecs = max(n_keep, 2)
    q = np.arange(-cutoff, cutoff + 1, dtype=float) - params.n_g
    V = vecs[:, :n_vecs].copy()

    v0 = V[:, 0]
    if v0[np.argmax(np.abs(v0))] < 0:
        V[:, 0] = -v0
    for k in range(1, n_vecs):
        overlap = float(V[:, k - 1] @ (q * V[:, k]))
        if overlap < 0:
            V[:, k] = -V[:, k]
        elif overlap == 0.0 and V[np.argmax(np.abs(V[:, k])), k] < 0:
            V[:, k] = -V[:, k]

    elems_full = V.T @ (q[:, None] * V)
    elems_full = 0.5 * (elems_full + elems_full.T)
    charge_norm = float(elems_full[0, 1])

    return TransmonSpectrum(
        levels=vals[:n_keep].copy(),
        charge_elems=elems_full[:n_keep, :n_keep].copy(),
        omega_10=float(vals[1] - vals[0]),
        eta=float(vals[2] - 2.0 * vals[1] + vals[0]),
        charge_norm=charge_norm,
        params_used=params,
    )


def normalized_charge_coupling(spec: TransmonSpectrum, k: int, kp: int) -> float:
    """Signed coupling g_{k,k'} = g <k|Q|k'> / <0|Q|1> in GHz; symmetric in (k, kp)."""
    k_max = spec.k_max
    if not (0 <= k <= k_max and 0 <= kp <= k_max):
        raise IndexError(f"level indices ({k}, {kp}) out of range 0..{k_max}")
    return spec.params_used.g * float(spec.charge_elems[k, kp]) / spec.charge_norm


def asymptotic_coupling(spec: TransmonSpectrum, k: int, offset: int) -> float:
    """Large-E_J/E_C approximation of g_{k,k+offset} for offset 1 or 3.

    offset 1: g sqrt(k+1) (1 + k eta / (2 omega_10));
    offset 3: g sqrt((k+1)(k+2)(k+3)) (-eta) / (4 omega_10).
    """
    if offset not in (1, 3):
        raise ValueError(f"unsupported offset {offset}; expected 1 or 3")
    if not (0 <= k and k + offset <= spec.k_max):
        raise IndexError(f"level pair ({k}, {k + offset}) out of range 0..{spec.k_max}")
    g = spec.params_used.g
    if offset == 1:
        return g * math.sqrt(k + 1) * (1.0 + 0.5 * spec.eta / spec.omega_10 * k)
    return (
        g
        * math.sqrt((k + 1) * (k + 2) * (k + 3))
        * (-spec.eta)
        / (4.0 * spec.omega_10)
    )


def broken_symmetry_coupling(
    spec: TransmonSpectrum, k: int, epsilon_sym: float | None = None
) -> float:
    """Phenomenological selection-rule-violating coupling g_{k,k+2}.

    Modeled as epsilon_sym * g * sqrt((k+1)(k+2)); zero when epsilon_sym = 0.
    ``epsilon_sym`` defaults to the value carried by the device parameters.
    """
    if not (0 <= k and k + 2 <= spec.k_max):
        raise IndexError(f"level pair ({k}, {k + 2}) out of range 0..{spec.k_max}")
    eps = spec.params_used.epsilon_sym if epsilon_sym is None else epsilon_sym
    if eps < 0:
        raise ValueError("epsilon_sym must be non-negative")
    return eps * spec.params_used.g * math.sqrt((k + 1) * (k + 2))


@dataclass(frozen=True)
class SpectroscopyFit:
    """Diagnostics of the (E_C, E_J) inversion.

    ``residuals[i]`` is the max-norm of (omega_10, eta) mismatch in GHz after
    i Newton updates (entry 0 is the seed residual).
    """

    residuals: tuple[float, ...]
    achieved_omega_10: float
    achieved_eta: float


def params_from_spectroscopy(
    omega_10: float,
    eta: float,
    *,
    omega_r: float,
    g: float,
    n_g: float = 0.0,
    k_max: int = DEFAULT_K_MAX,
    charge_cutoff: int = DEFAULT_CHARGE_CUTOFF,
    epsilon_sym: float = 0.0,
    tol: float = 1e-9,
    max_iter: int = 30,
    full_output: bool = False,
) -> DeviceParams | tuple[DeviceParams, SpectroscopyFit]:
    """Invert the spectrum solver: find (E_C, E_J) reproducing omega_10 and eta.

    Seeded by E_C = -eta and omega_10 = sqrt(8 E_C E_J) - E_C, then refined by
    a damped-free Newton iteration in log(E_C, E_J) with a finite-difference
    Jacobian.  The returned device reproduces both targets to well under
    1e-6 GHz.  With ``full_output=True`` also returns the residual history.
    """
    if omega_10 <= 0:
        raise ValueError("omega_10 must be positive")
    if eta >= 0:
        raise ValueError("eta must be negative in the transmon regime")
    if abs(eta) >= omega_10:
        raise ValueError("|eta| must be smaller than omega_10")

    target = np.array([omega_10, eta])

    def mismatch(x: np.ndarray) -> np.ndarray:
        e_c, e_j = np.exp(x)
        v = _lowest_levels(e_c, e_j, n_g, charge_cutoff, 3)
        return np.array([v[1] - v[0], v[2] - 2.0 * v[1] + v[0]]) - target

    e_c0 = -eta
    e_j0 = (omega_10 + e_c0) ** 2 / (8.0 * e_c0)
    x = np.log([e_c0, e_j0])

    f = mismatch(x)
    residuals = [float(np.max(np.abs(f)))]
    h = 1e-7
    for _ in range(max_iter):
        if residuals[-1] < tol:
            break
        jac = np.empty((2, 2))
        for j in range(2):
            xp = x.copy()
            xp[j] += h
            jac[:, j] = (mismatch(xp) - f) / h
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian in spectroscopy inversion") from exc
        x = x + step
        f = mismatch(x)
        residuals.append(float(np.max(np.abs(f))))

    if residuals[-1] >= tol:
        raise ConvergenceError(
            f"spectroscopy inversion did not converge: residual {residuals[-1]:.3e} GHz"
        )

    e_c, e_j = np.exp(x)
    if e_j / e_c < MIN_EJ_OVER_EC:
        raise ValueError(
            f"no transmon-regime solution: targets imply E_J/E_C = {e_j / e_c:.3g} < "
            f"{MIN_EJ_OVER_EC:g} (|eta| too large relative to omega_10)"
        )
    params = DeviceParams(
        E_C=float(e_c),
        E_J=float(e_j),
        omega_r=omega_r,
        g=g,
        n_g=n_g,
        k_max=k_max,
        charge_cutoff=charge_cutoff,
        epsilon_sym=epsilon_sym,
    )
    if not full_output:
        return params
    fit = SpectroscopyFit(
        residuals=tuple(residuals),
        achieved_omega_10=float(f[0] + omega_10),
        achieved_eta=float(f[1] + eta),
    )
    return params, fit

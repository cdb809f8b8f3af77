"""Shared fixtures: the reconstructed experiment-style device and helpers.

The reference configuration is g = 87 MHz, eta = -200 MHz, omega_r = 6.9 GHz,
with the qubit placed so that the critical photon number is exactly 60
(|Delta| = 2 g sqrt(60)).
"""

import math

import pytest

from jcladder import (
    DeviceParams,
    LadderModel,
    params_from_spectroscopy,
    solve_transmon,
)

G = 0.087
OMEGA_R = 6.9
ETA = -0.2
N_C = 60.0
DELTA = -2.0 * G * math.sqrt(N_C)
OMEGA_10 = OMEGA_R + DELTA

# Mid-point of the qubit-frequency window reproducing the coupling curves.
OMEGA_10_WINDOW = 5.25


@pytest.fixture(scope="session")
def paper_params() -> DeviceParams:
    return params_from_spectroscopy(OMEGA_10, ETA, omega_r=OMEGA_R, g=G)


@pytest.fixture(scope="session")
def paper_model(paper_params) -> LadderModel:
    return LadderModel(paper_params)


@pytest.fixture(scope="session")
def window_model() -> LadderModel:
    """Device inside the sweep window, with a 1% selection-rule violation."""
    params = params_from_spectroscopy(
        OMEGA_10_WINDOW, ETA, omega_r=OMEGA_R, g=G, epsilon_sym=0.01
    )
    return LadderModel(params)


@pytest.fixture(scope="session")
def ratio50_spec():
    """Transmon at E_J/E_C = 50 (E_C = 0.2 GHz), the asymptotics test point."""
    params = DeviceParams(E_C=0.2, E_J=10.0, omega_r=6.8, g=G)
    return solve_transmon(params)


@pytest.fixture(scope="session")
def decoupled_model() -> LadderModel:
    """g = 0 limit of the reference device geometry."""
    params = DeviceParams(E_C=0.2, E_J=20.0, omega_r=OMEGA_R, g=0.0)
    return LadderModel(params)

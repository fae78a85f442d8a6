"""Shared helpers for the test suite."""

import numpy as np
import pytest

from pseudoherm import AlgebraKind, GaussState, HamiltonianProfile, k0_closed_form


class Bundle:
    """Minimal trajectory stand-in: .times plus .states."""

    def __init__(self, times, states):
        self.times = np.asarray(times, dtype=float)
        self.states = states


def gauss_flow(g0: GaussState, h: HamiltonianProfile, kind: AlgebraKind):
    """Closed-form Gauss trajectory as a callable of t (seconds)."""

    def at(t: float) -> GaussState:
        return g0 if t == 0.0 else k0_closed_form(g0, h, float(t), kind)

    return at


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


# the gain/loss scenario family shared by many tests
GAMMA = 0.5
GAIN_LOSS = HamiltonianProfile.gain_loss(GAMMA, 0.0)
PRESET_SU11 = GaussState(100.0, 0.0, 0.01, flip=True)
PRESET_SU2 = GaussState(100.0, 0.0, 0.01)
# a moderate first-branch su(1,1) state whose metric exists in Fock space
MODERATE_SU11 = GaussState(0.3, 0.0, 2.5)
MODERATE_SU2 = GaussState(0.5, 0.0, 1.2)

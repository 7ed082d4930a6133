"""Ricean-fading observation synthesis and sample moments.

One Monte-Carlo realization draws a single diffuse vector ``h`` that is held
fixed over the T snapshots of the observation window (the stacked covariance
is fully correlated in time), plus T independent noise vectors. The diffuse
component changes only between realizations.

Complex Gaussian convention: real and imaginary parts are i.i.d.
``N(0, variance/2)`` so the total per-element variance equals the nominal
power. Sampling uses ``numpy.random.default_rng(seed)`` (PCG64) and a fixed
draw order (diffuse vector first, then the M x T noise block), so a given
``(scenario, fe, seed)`` triple always produces the same observations,
independent of thread count or call site.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import FrontEnd, Scenario

__all__ = ["ObservationSet", "SampleMoments", "synthesize", "sample_moments"]


@dataclass(frozen=True)
class ObservationSet:
    """M x T matrix of received snapshots (column t is y_t) plus the scenario
    that produced it."""

    y: np.ndarray
    scenario: Scenario

    def __post_init__(self):
        y = np.asarray(self.y, dtype=complex)
        if y.shape != (self.scenario.m, self.scenario.t):
            raise ValueError(
                f"observations must be {self.scenario.m} x {self.scenario.t}, got {y.shape}"
            )
        object.__setattr__(self, "y", y)

    def stacked(self) -> np.ndarray:
        """Length M*T vector stacking y_1, ..., y_T."""
        return self.y.T.reshape(-1)


@dataclass(frozen=True)
class SampleMoments:
    """First-order sum and raw second-order cross blocks of one window.

    ``cross_blocks[t, tp]`` is the M x M outer product ``y_t y_tp^H`` (raw
    moment, no mean subtraction).
    """

    mean_sum: np.ndarray
    cross_blocks: np.ndarray


def synthesize(scenario: Scenario, fe: FrontEnd, seed: int) -> ObservationSet:
    """Draw one realization of the Ricean model.

    ``y_t = gamma * D a(phi) * p + D h * p + n_t`` with ``h ~ CN(0, sigma2 I)``
    shared across snapshots and ``n_t ~ CN(0, n0 I)`` independent per snapshot.
    """
    if fe.m != scenario.m:
        raise ValueError("front-end size does not match scenario")
    m, t = scenario.m, scenario.t
    rng = np.random.default_rng(seed)
    h = np.sqrt(scenario.sigma2 / 2.0) * (
        rng.standard_normal(m) + 1j * rng.standard_normal(m)
    )
    noise = np.sqrt(scenario.n0 / 2.0) * (
        rng.standard_normal((m, t)) + 1j * rng.standard_normal((m, t))
    )
    los = scenario.gamma * scenario.pilot * fe.response * scenario.steering
    diffuse = scenario.pilot * fe.response * h
    y = (los + diffuse)[:, None] + noise
    return ObservationSet(y=y, scenario=scenario)


def sample_moments(obs: ObservationSet) -> SampleMoments:
    """Compute the snapshot sum and all raw cross blocks ``y_t y_tp^H``."""
    y = obs.y
    mean_sum = y.sum(axis=1)
    # cross_blocks[t, tp, i, j] = y[i, t] * conj(y[j, tp])
    cross = np.einsum("it,js->tsij", y, y.conj())
    return SampleMoments(mean_sum=mean_sum, cross_blocks=cross)

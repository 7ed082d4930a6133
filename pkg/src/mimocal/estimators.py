"""Phase and amplitude estimators for the calibration coefficients.

Three procedures:

* a moment-based phase estimator built from the snapshot sum,
* a numeric maximum-likelihood phase estimator (grid search plus
  golden-section refinement on the whitened likelihood term) that serves as
  the executable equivalence oracle for the moment-based one,
* a moment-based amplitude-subspace estimator built from first and raw
  second-order sample moments.

The log-likelihood of the stacked window is evaluated in whitened form, so
its cost is O(M*T) rather than a dense (M*T)^2 solve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ObservationSet, SampleMoments
from .errors import DegenerateEstimateError, NumericalDomainError
from .model import ParamVector, wrap_phase

__all__ = [
    "PhaseEstimate",
    "AmplitudeEstimate",
    "estimate_phase_moment",
    "estimate_phase_mle_numeric",
    "estimate_amplitude_moment",
    "log_likelihood",
]

_GRID_POINTS = 360
_REFINE_TOL = 1e-9
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PhaseEstimate:
    """Estimated per-chain phase drifts, wrapped to (-pi, pi]."""

    alpha_hat: np.ndarray


@dataclass(frozen=True)
class AmplitudeEstimate:
    """Estimated per-chain amplitude scalings, nonnegative and meaningful
    only up to a common positive scale (a subspace direction)."""

    d_hat: np.ndarray


def estimate_phase_moment(obs: ObservationSet, steering: np.ndarray,
                          pilot: complex) -> PhaseEstimate:
    """Moment-based phase estimate from the snapshot sum.

    ``alpha_hat = wrap(arg(sum_t y_t) - arg(a(phi)) - arg(p))`` elementwise.
    Raises :class:`DegenerateEstimateError` for chains whose snapshot sum is
    exactly zero (the phase is undefined there).
    """
    s = obs.y.sum(axis=1)
    zero = np.flatnonzero(s == 0)
    if zero.size:
        raise DegenerateEstimateError(zero)
    alpha_hat = wrap_phase(np.angle(s) - np.angle(steering) - np.angle(pilot))
    return PhaseEstimate(alpha_hat=alpha_hat)


def estimate_phase_mle_numeric(obs: ObservationSet, steering: np.ndarray,
                               pilot: complex, weights=None) -> PhaseEstimate:
    """Numeric MLE of the phase drifts, chain by chain.

    The alpha_m-dependent likelihood term is
    ``Re[exp(-1j*alpha_m) * conj(a_m) * conj(p) * w_m * g_m]`` where ``g`` is
    the first whitened block of the stacked observations (the snapshot sum
    scaled by 1/sqrt(T)). Any strictly positive weights leave the per-chain
    argmax unchanged, so ones are the default. Maximization runs a 360-point
    grid followed by golden-section refinement to 1e-9 rad; the per-chain
    objective is a pure sinusoid in alpha_m, so the scheme cannot miss the
    global maximum.
    """
    m, t = obs.scenario.m, obs.scenario.t
    if weights is None:
        weights = np.ones(m)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (m,) or not np.all(weights > 0):
        raise ValueError("weights must be a length-M strictly positive vector")
    g = obs.y.sum(axis=1) / np.sqrt(t)
    z = np.conj(steering) * np.conj(pilot) * weights * g
    zero = np.flatnonzero(z == 0)
    if zero.size:
        raise DegenerateEstimateError(zero)

    # Vectorized over chains: f_m(alpha) = Re[exp(-1j*alpha) * z_m].
    grid = np.linspace(-np.pi, np.pi, _GRID_POINTS, endpoint=False)
    values = np.real(np.exp(-1j * grid)[:, None] * z[None, :])
    best = np.argmax(values, axis=0)
    spacing = 2.0 * np.pi / _GRID_POINTS
    lo = grid[best] - spacing
    hi = grid[best] + spacing
    alpha_hat = _golden_section_max(z, lo, hi)
    return PhaseEstimate(alpha_hat=wrap_phase(alpha_hat))


def _golden_section_max(z, lo, hi):
    """Golden-section maximization of Re[exp(-1j*x) * z] on [lo, hi],
    vectorized over chains."""

    def f(x):
        return np.real(np.exp(-1j * x) * z)

    a, b = lo.copy(), hi.copy()
    while np.max(b - a) > _REFINE_TOL:
        x1 = b - _GOLDEN * (b - a)
        x2 = a + _GOLDEN * (b - a)
        keep_right = f(x1) < f(x2)
        a = np.where(keep_right, x1, a)
        b = np.where(keep_right, b, x2)
    return (a + b) / 2.0


def estimate_amplitude_moment(moments: SampleMoments) -> AmplitudeEstimate:
    """Moment-based amplitude-subspace estimate.

    ``d_hat_m = sqrt(max(0, Re[sum_t |y_tm|^2
    + sum_{t != tp} diag(y_t y_tp^H)_m]))``. Negative radicands caused by
    rounding are clamped to zero; with the raw-moment convention the radicand
    is a squared magnitude, so the clamp only absorbs numerical residue.
    """
    cross = moments.cross_blocks
    t = cross.shape[0]
    # diagonal of each (t, tp) block, shape (t, tp, m)
    block_diags = np.einsum("tsii->tsi", cross)
    idx = np.arange(t)
    auto = np.real(block_diags[idx, idx].sum(axis=0))
    off_mask = ~np.eye(t, dtype=bool)
    off = np.real(block_diags[off_mask].sum(axis=0))
    radicand = np.clip(auto + off, 0.0, None)
    return AmplitudeEstimate(d_hat=np.sqrt(radicand))


def log_likelihood(obs: ObservationSet, xi: ParamVector, steering: np.ndarray,
                   pilot: complex) -> float:
    """Stacked complex-Gaussian log-likelihood of one observation window.

    Returns ``-M*T*ln(pi) - ln det C - beta^H C^-1 beta`` with
    ``beta = y_stacked - mu(xi)``, evaluated through the whitened
    factorization: the DFT across snapshots block-diagonalizes C, so the
    quadratic form reduces to per-entry divisions.
    """
    m, t = obs.scenario.m, obs.scenario.t
    n0 = obs.scenario.n0
    lam_first = xi.sigma2 * t * xi.d**2 + n0
    if n0 <= 0 or np.any(lam_first <= 0):
        raise NumericalDomainError("covariance is not positive definite")
    resp = xi.d * np.exp(1j * xi.alpha)
    mean_block = xi.gamma * pilot * resp * steering
    beta = obs.y - mean_block[:, None]
    # Whitened blocks: column k of beta @ Q.T is sum_t Q[k, t] * beta_t.
    k = np.arange(t)
    q = np.exp(-2j * np.pi * np.outer(k, k) / t) / np.sqrt(t)
    whitened = beta @ q.T
    quad = np.sum(np.abs(whitened[:, 0]) ** 2 / lam_first)
    if t > 1:
        quad += np.sum(np.abs(whitened[:, 1:]) ** 2) / n0
    log_det = float(np.sum(np.log(lam_first)) + m * (t - 1) * np.log(n0))
    return float(-m * t * np.log(np.pi) - log_det - quad)

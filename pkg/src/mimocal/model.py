"""Core signal model: front-end coefficients, ULA steering, and the stacked
Gaussian observation model with its DFT-whitening factorization.

Conventions
-----------
* All powers (LOS amplitude ``gamma`` enters squared, diffuse power ``sigma2``,
  noise power ``n0``) are linear, not dB.
* The noise vector is circularly-symmetric complex Gaussian with *total*
  per-element variance ``n0`` (so the covariance contains ``n0 * I``).
* Element spacing is expressed in carrier wavelengths (half-wavelength = 0.5),
  which makes the steering-vector exponent dimensionless.
* Phases are always wrapped to the half-open interval (-pi, pi].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FrontEnd",
    "Scenario",
    "ParamVector",
    "StackedModel",
    "wrap_phase",
    "steering_vector",
    "build_mean",
    "build_covariance",
    "dft_whitening",
    "noise_power_for_snr",
]


def wrap_phase(x):
    """Wrap angle(s) to the half-open interval (-pi, pi].

    Accepts a scalar or an array; returns the same shape. The boundary
    convention maps both +pi and -pi to +pi.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("wrap_phase requires finite input")
    wrapped = -np.mod(np.pi - arr, 2.0 * np.pi) + np.pi
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class FrontEnd:
    """Per-chain front-end coefficients: amplitude scalings ``d`` (positive)
    and phase drifts ``alpha`` in (-pi, pi]. The diagonal of the front-end
    matrix is ``d * exp(1j * alpha)``.
    """

    d: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        d = np.atleast_1d(np.asarray(self.d, dtype=float))
        alpha = np.atleast_1d(np.asarray(self.alpha, dtype=float))
        if d.ndim != 1 or alpha.ndim != 1 or d.size != alpha.size or d.size < 1:
            raise ValueError("d and alpha must be 1-D arrays of equal length >= 1")
        if not np.all(d > 0):
            raise ValueError("every amplitude scaling d[m] must be > 0")
        if not np.all((alpha > -np.pi) & (alpha <= np.pi)):
            raise ValueError("every phase drift alpha[m] must lie in (-pi, pi]")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "alpha", alpha)

    @property
    def m(self) -> int:
        return self.d.size

    @property
    def response(self) -> np.ndarray:
        """Diagonal of the front-end matrix, ``d * exp(1j * alpha)``."""
        return self.d * np.exp(1j * self.alpha)


@dataclass(frozen=True)
class Scenario:
    """Channel and experiment parameters for one observation window."""

    m: int
    t: int
    gamma: float
    sigma2: float
    n0: float
    phi: float
    pilot: complex = 1.0 + 0.0j
    spacing: float = 0.5

    def __post_init__(self):
        if self.m < 1 or self.t < 1:
            raise ValueError("m and t must be >= 1")
        if self.gamma < 0 or self.sigma2 < 0 or self.n0 < 0:
            raise ValueError("gamma, sigma2 and n0 must be nonnegative")
        if self.spacing <= 0:
            raise ValueError("element spacing must be positive")
        if not (-np.pi / 2 <= self.phi <= np.pi / 2):
            raise ValueError("phi must lie in [-pi/2, pi/2]")
        if abs(abs(complex(self.pilot)) - 1.0) > 1e-12:
            raise ValueError("pilot must have unit modulus")

    @property
    def steering(self) -> np.ndarray:
        return steering_vector(self.phi, self.m, self.spacing)


@dataclass(frozen=True)
class ParamVector:
    """The unknown parameter vector in block order [d_1..d_M, sigma2,
    alpha_1..alpha_M, gamma].

    The 0-based index map is: ``0..M-1 -> d``, ``M -> sigma2``,
    ``M+1..2M -> alpha``, ``2M+1 -> gamma``.
    """

    d: np.ndarray
    sigma2: float
    alpha: np.ndarray
    gamma: float

    def __post_init__(self):
        d = np.atleast_1d(np.asarray(self.d, dtype=float))
        alpha = np.atleast_1d(np.asarray(self.alpha, dtype=float))
        if d.size != alpha.size or d.size < 1:
            raise ValueError("d and alpha must have equal length >= 1")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "alpha", alpha)

    @property
    def m(self) -> int:
        return self.d.size

    @property
    def size(self) -> int:
        return 2 * self.m + 2

    @property
    def d_indices(self) -> np.ndarray:
        return np.arange(self.m)

    @property
    def sigma2_index(self) -> int:
        return self.m

    @property
    def alpha_indices(self) -> np.ndarray:
        return np.arange(self.m + 1, 2 * self.m + 1)

    @property
    def gamma_index(self) -> int:
        return 2 * self.m + 1

    def to_array(self) -> np.ndarray:
        out = np.empty(self.size)
        out[: self.m] = self.d
        out[self.m] = self.sigma2
        out[self.m + 1 : 2 * self.m + 1] = self.alpha
        out[2 * self.m + 1] = self.gamma
        return out

    @classmethod
    def from_array(cls, vec, m: int) -> "ParamVector":
        vec = np.asarray(vec, dtype=float)
        if vec.size != 2 * m + 2:
            raise ValueError(f"expected length {2 * m + 2}, got {vec.size}")
        return cls(d=vec[:m], sigma2=float(vec[m]),
                   alpha=vec[m + 1 : 2 * m + 1], gamma=float(vec[2 * m + 1]))

    @classmethod
    def from_parts(cls, fe: FrontEnd, sigma2: float, gamma: float) -> "ParamVector":
        return cls(d=fe.d, sigma2=float(sigma2), alpha=fe.alpha, gamma=float(gamma))

    def front_end(self) -> FrontEnd:
        return FrontEnd(d=self.d, alpha=wrap_phase(self.alpha))


@dataclass(frozen=True)
class StackedModel:
    """Mean vector (length M*T) and covariance (M*T x M*T) of the stacked
    observation window."""

    mean: np.ndarray
    covariance: np.ndarray


def steering_vector(phi: float, m: int, spacing: float = 0.5) -> np.ndarray:
    """ULA steering vector for azimuth ``phi`` (radians).

    Element ``k`` (0-based) is ``exp(-1j * 2*pi * spacing * k * cos(phi))``;
    every element has unit modulus.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    k = np.arange(m)
    return np.exp(-2j * np.pi * spacing * k * np.cos(phi))


def build_mean(scenario: Scenario, fe: FrontEnd) -> np.ndarray:
    """Stacked mean: T vertical copies of ``gamma * pilot * D a(phi)``."""
    if fe.m != scenario.m:
        raise ValueError("front-end size does not match scenario")
    block = scenario.gamma * scenario.pilot * fe.response * scenario.steering
    return np.tile(block, scenario.t)


def build_covariance(scenario: Scenario, fe: FrontEnd) -> np.ndarray:
    """Stacked covariance ``I_T (x) n0 I_M + 1 1^T (x) sigma2 D D^H``.

    Diagonal (t, t) blocks are ``n0 I_M + sigma2 D D^H``; every off-diagonal
    block is ``sigma2 D D^H`` (the diffuse term is fully correlated across
    the T snapshots of one window).
    """
    if fe.m != scenario.m:
        raise ValueError("front-end size does not match scenario")
    m, t = scenario.m, scenario.t
    dd_h = np.diag(scenario.sigma2 * fe.d**2).astype(complex)
    cov = np.kron(np.ones((t, t)), dd_h)
    cov += scenario.n0 * np.eye(m * t)
    return cov


def dft_whitening(scenario: Scenario, fe: FrontEnd):
    """Unitary DFT-based factorization ``C = Q_tilde^H Lambda Q_tilde``.

    Returns ``(q_tilde, lam)`` where ``q_tilde = Q (x) I_M`` with ``Q`` the
    T x T normalized forward DFT matrix ``Q[k, t] = exp(-2j*pi*k*t/T)/sqrt(T)``,
    and ``lam`` is the real diagonal matrix whose first M entries are
    ``sigma2*T*d_m^2 + n0`` and whose remaining entries are ``n0``.
    """
    if fe.m != scenario.m:
        raise ValueError("front-end size does not match scenario")
    m, t = scenario.m, scenario.t
    q = _dft_matrix(t)
    q_tilde = np.kron(q, np.eye(m))
    diag = np.full(m * t, float(scenario.n0))
    diag[:m] += scenario.sigma2 * t * fe.d**2
    return q_tilde, np.diag(diag)


def whitened_eigenvalues(scenario: Scenario, fe: FrontEnd) -> np.ndarray:
    """Diagonal of Lambda as a length M*T vector (cheap form used by the
    likelihood evaluation)."""
    diag = np.full(scenario.m * scenario.t, float(scenario.n0))
    diag[: scenario.m] += scenario.sigma2 * scenario.t * fe.d**2
    return diag


def _dft_matrix(t: int) -> np.ndarray:
    k = np.arange(t)
    return np.exp(-2j * np.pi * np.outer(k, k) / t) / np.sqrt(t)


def noise_power_for_snr(snr: float, fe: FrontEnd, sigma2: float, gamma: float) -> float:
    """Per-element noise power that realizes a target linear SNR.

    The array-level SNR is ``sum_m d_m^2 (sigma2 + gamma^2) / (M * n0)``;
    solving for ``n0`` gives the returned value, so plugging it back
    reproduces ``snr`` exactly.
    """
    if snr <= 0:
        raise ValueError("snr must be positive")
    return float(np.sum(fe.d**2) * (sigma2 + gamma**2) / (fe.m * snr))

"""Walk through the signal model: steering vectors, the stacked mean and
covariance of one observation window, and the DFT whitening factorization.

Run with: python3 demos/01_signal_model.py
"""

import numpy as np

from mimocal import (FrontEnd, Scenario, build_covariance, build_mean,
                     dft_whitening, noise_power_for_snr, steering_vector)

np.set_printoptions(precision=3, suppress=True, linewidth=100)

# ---------------------------------------------------------------------------
# A small array so every matrix fits on screen: M = 3 chains, T = 2 snapshots.
# Each RF chain applies one complex coefficient d * exp(j*alpha) that we want
# to calibrate away.
# ---------------------------------------------------------------------------
fe = FrontEnd(d=[1.0, 1.4, 0.8], alpha=[0.3, -1.2, 2.0])
print("front-end responses d*exp(j*alpha):")
print(fe.response, "\n")

# The UE sits at azimuth phi; a half-wavelength ULA sees the plane wave as a
# unit-modulus steering vector.
phi = np.pi / 3
print(f"steering vector at phi = 60 deg: {steering_vector(phi, 3)}\n")

# Target an array SNR of 10 dB; the noise floor follows from the powers.
sigma2, gamma = 1.0, 1.5
n0 = noise_power_for_snr(10.0, fe, sigma2, gamma)
scenario = Scenario(m=3, t=2, gamma=gamma, sigma2=sigma2, n0=n0, phi=phi)
print(f"noise power for SNR 10 dB: n0 = {n0:.4f}\n")

# ---------------------------------------------------------------------------
# Stacked statistics. The diffuse channel is drawn once per window, so the
# covariance couples *all* snapshot pairs: diagonal blocks n0*I + sigma2*DD^H,
# off-diagonal blocks sigma2*DD^H.
# ---------------------------------------------------------------------------
mu = build_mean(scenario, fe)
cov = build_covariance(scenario, fe)
print("stacked mean (T copies of gamma * p * D a):")
print(mu, "\n")
print("stacked covariance (real part; note the repeated diffuse blocks):")
print(cov.real, "\n")

# ---------------------------------------------------------------------------
# Whitening: a DFT across snapshots block-diagonalizes the covariance. The
# first M eigenvalues absorb the diffuse power, the rest are pure noise.
# ---------------------------------------------------------------------------
q_tilde, lam = dft_whitening(scenario, fe)
rebuilt = q_tilde.conj().T @ lam @ q_tilde
print("whitened eigenvalues:", np.diag(lam))
print("factorization error |Q~^H Lam Q~ - C|_max =",
      f"{np.max(np.abs(rebuilt - cov)):.2e}")

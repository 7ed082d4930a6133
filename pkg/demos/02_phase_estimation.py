"""Phase calibration in action: the moment-based estimator, its equivalence
with the numeric MLE, and how the error tracks the CRLB as the LOS grows.

Run with: python3 demos/02_phase_estimation.py
"""

import numpy as np

from mimocal import (FrontEnd, Scenario, estimate_phase_mle_numeric,
                     estimate_phase_moment, noise_power_for_snr, synthesize,
                     wrap_phase)

rng = np.random.default_rng(2024)
m, t = 16, 3

# ---------------------------------------------------------------------------
# One noisy window: estimate the per-chain phase drifts two ways.
# ---------------------------------------------------------------------------
alpha_truth = wrap_phase(rng.uniform(-np.pi, np.pi, m))
fe = FrontEnd(d=np.ones(m), alpha=alpha_truth)
n0 = noise_power_for_snr(10.0, fe, 1.0, 2.0)
scenario = Scenario(m=m, t=t, gamma=2.0, sigma2=1.0, n0=n0, phi=0.4)
obs = synthesize(scenario, fe, seed=7)

moment = estimate_phase_moment(obs, scenario.steering, scenario.pilot)
mle = estimate_phase_mle_numeric(obs, scenario.steering, scenario.pilot)

print("chain |   truth | moment est |  MLE est")
for i in range(6):
    print(f"  {i}   | {alpha_truth[i]:+.4f} |  {moment.alpha_hat[i]:+.4f}  |"
          f" {mle.alpha_hat[i]:+.4f}")
gap = np.max(np.abs(wrap_phase(mle.alpha_hat - moment.alpha_hat)))
print(f"\nmax |MLE - moment| over all {m} chains: {gap:.2e} rad")
print("(the two estimators are the same function of the data; the numeric")
print(" MLE only differs by its refinement tolerance)\n")

# ---------------------------------------------------------------------------
# Error vs CRLB across LOS strength. The CRLB for each drift is
# (n0 + sigma2*T*d^2) / (2*T*d^2*gamma^2); stronger LOS pins the phase down.
# ---------------------------------------------------------------------------
print("gamma | empirical MSE | CRLB    | ratio")
for gamma in (0.5, 1.0, 2.0, 4.0, 8.0):
    n0 = noise_power_for_snr(10.0, fe, 1.0, gamma)
    scenario = Scenario(m=m, t=t, gamma=gamma, sigma2=1.0, n0=n0, phi=0.4)
    errs = []
    for trial in range(400):
        obs = synthesize(scenario, fe, seed=1000 + trial)
        est = estimate_phase_moment(obs, scenario.steering, scenario.pilot)
        errs.append(wrap_phase(est.alpha_hat - alpha_truth))
    mse = float(np.mean(np.square(errs)))
    crlb = (n0 + 3.0) / (2 * t * gamma**2)
    print(f" {gamma:4.1f} |    {mse:.5f}    | {crlb:.5f} | {mse / crlb:.3f}")
print("\nthe ratio approaches 1 from above as the LOS strengthens: the")
print("estimator is asymptotically efficient but not efficient at finite SNR")
print("(at weak LOS the ratio can even dip below 1 -- wrapping caps the")
print(" error at pi while the CRLB keeps growing, so the bound no longer")
print(" applies to the wrapped error there)")

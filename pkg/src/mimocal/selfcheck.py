"""Built-in oracle suites, runnable without pytest via ``mimocal selfcheck``.

Four cross-checks, each pitting an implementation against an independent
route to the same quantity: the whitening factorization against the dense
covariance, the closed-form FIM against finite differences, the Schur-ratio
CRLB diagonals against full inversion, and the numeric MLE against the
moment-based phase estimator.
"""

from __future__ import annotations

import numpy as np

from . import fisher
from .channel import synthesize
from .estimators import estimate_phase_mle_numeric, estimate_phase_moment
from .model import (FrontEnd, ParamVector, Scenario, build_covariance,
                    dft_whitening, wrap_phase)


def _random_setup(rng, m, t):
    fe = FrontEnd(d=rng.uniform(0.5, 2.0, m),
                  alpha=wrap_phase(rng.uniform(-np.pi, np.pi, m)))
    scenario = Scenario(m=m, t=t, gamma=rng.uniform(0.2, 2.0),
                        sigma2=rng.uniform(0.2, 2.0), n0=rng.uniform(0.2, 2.0),
                        phi=rng.uniform(-np.pi / 2, np.pi / 2))
    return scenario, fe


def check_whitening(n_instances=50, seed=1234):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        scenario, fe = _random_setup(rng, int(rng.integers(1, 9)),
                                     int(rng.integers(1, 6)))
        cov = build_covariance(scenario, fe)
        q_tilde, lam = dft_whitening(scenario, fe)
        rebuilt = q_tilde.conj().T @ lam @ q_tilde
        rel = np.max(np.abs(rebuilt - cov)) / np.max(np.abs(cov))
        worst = max(worst, rel)
    return worst <= 1e-10, f"max relative error {worst:.3e} (limit 1e-10)"


def check_fim_cross_oracle(n_instances=5, seed=1234):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        scenario, fe = _random_setup(rng, 4, 3)
        xi = ParamVector.from_parts(fe, scenario.sigma2, scenario.gamma)
        closed = fisher.fim_closed_form(xi, scenario.t, scenario.n0).matrix
        numeric = fisher.fim_numeric(xi, scenario.t, scenario.steering,
                                     scenario.pilot, scenario.n0).matrix
        nz = np.abs(closed) > 0
        rel = np.max(np.abs(closed[nz] - numeric[nz]) / np.abs(closed[nz]))
        abs_err = np.max(np.abs(numeric[~nz])) if np.any(~nz) else 0.0
        worst = max(worst, rel, abs_err * 1e2)  # zero entries held to 1e-6
        if rel > 1e-4 or abs_err > 1e-6:
            return False, f"relative error {rel:.3e} / zero-entry error {abs_err:.3e}"
    return True, "closed form matches finite differences (1e-4 relative)"


def check_schur_consistency(n_instances=5, seed=1234):
    """Alpha diagonals from the Schur ratios must match the numeric
    (pseudo-)inverse; the unconstrained d diagonal is the documented
    +inf sentinel (intrinsic amplitude-scale ambiguity)."""
    rng = np.random.default_rng(seed)
    for _ in range(n_instances):
        scenario, fe = _random_setup(rng, 6, 3)
        xi = ParamVector.from_parts(fe, scenario.sigma2, scenario.gamma)
        exact = fisher.crlb_diagonal_exact(
            fisher.fim_closed_form(xi, scenario.t, scenario.n0))
        schur = fisher.crlb_diagonal_schur(xi, scenario.t, scenario.n0)
        rel_a = np.max(np.abs(schur.crlb_alpha - exact.crlb_alpha) / exact.crlb_alpha)
        if rel_a > 1e-8:
            return False, f"alpha relative error {rel_a:.3e} (limit 1e-8)"
        if not np.all(np.isinf(schur.crlb_d)):
            return False, "expected +inf sentinel for unconstrained d entries"
    return True, "alpha diagonals match (1e-8 relative); d entries are the +inf sentinel"


def check_mle_equivalence(n_instances=25, seed=1234):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n_instances):
        scenario, fe = _random_setup(rng, 8, 3)
        obs = synthesize(scenario, fe, seed=int(rng.integers(2**63)))
        mle = estimate_phase_mle_numeric(obs, scenario.steering, scenario.pilot)
        moment = estimate_phase_moment(obs, scenario.steering, scenario.pilot)
        diff = np.max(np.abs(wrap_phase(mle.alpha_hat - moment.alpha_hat)))
        worst = max(worst, diff)
    return worst <= 1e-6, f"max wrapped difference {worst:.3e} rad (limit 1e-6)"


def run_all():
    checks = [
        ("whitening-identity", check_whitening),
        ("fim-cross-oracle", check_fim_cross_oracle),
        ("schur-consistency", check_schur_consistency),
        ("mle-moment-equivalence", check_mle_equivalence),
    ]
    return [(name, *fn()) for name, fn in checks]

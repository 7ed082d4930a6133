"""Configuration-driven Monte-Carlo sweep runner.

A sweep walks the Cartesian product of (SNR, LOS amplitude, AOA) points,
runs ``n_mc`` realizations per point, and writes long-format CSV rows (one
metric per row) joined with the CRLB predictions. Per-point noise power is
derived from the target SNR, so sweeping the LOS amplitude at fixed SNR also
changes the noise floor.

Reproducibility: every realization gets its own seed derived from a stable
64-bit BLAKE2 hash of (master seed, point coordinates, realization index),
so results are byte-identical regardless of grid iteration order or worker
count.

Config files are flat YAML mappings; see the README for the schema.
"""

from __future__ import annotations

import csv
import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional, Sequence

import numpy as np
import yaml

from . import fisher
from .channel import sample_moments, synthesize
from .errors import SingularFimError
from .estimators import (estimate_amplitude_moment, estimate_phase_mle_numeric,
                         estimate_phase_moment)
from .model import (FrontEnd, ParamVector, Scenario, noise_power_for_snr,
                    wrap_phase)

__all__ = [
    "ExperimentConfig",
    "MetricRow",
    "SweepPoint",
    "METRIC_NAMES",
    "cosine_similarity",
    "phase_error_variance",
    "derive_seed",
    "run_realization",
    "run_sweep",
    "read_metric_rows",
    "write_metric_rows",
]

METRIC_NAMES = (
    "phase_err_var",
    "phase_err_mse",
    "crlb_alpha_mean",
    "cos_sim_mean",
    "cos_sim_std",
    "crlb_alpha_high_snr",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """All knobs of one sweep. Defaults reproduce the published setup:
    a 100-element array, T = 3 snapshots, unit diffuse power, unit amplitude
    ground truth, and truth phases redrawn uniformly per realization."""

    m: int = 100
    t: int = 3
    n_mc: int = 10
    master_seed: int = 0
    snr_db: Sequence[float] = (0.0,)
    gamma: Sequence[float] = (1.0,)
    phi_deg: Sequence[float] = (0.0,)
    sigma2: float = 1.0
    spacing: float = 0.5
    amplitude: Optional[Sequence[float]] = None
    metrics: Sequence[str] = METRIC_NAMES
    workers: int = 1
    output: Optional[str] = None

    def __post_init__(self):
        if self.n_mc < 1:
            raise ValueError("n_mc must be >= 1")
        if self.m < 2:
            raise ValueError("m must be >= 2 (across-chain variance needs it)")
        for name in ("snr_db", "gamma", "phi_deg"):
            vals = getattr(self, name)
            if len(vals) == 0:
                raise ValueError(f"{name} must be a nonempty list")
            if not all(np.isfinite(v) for v in vals):
                raise ValueError(f"{name} contains non-finite values")
        unknown = set(self.metrics) - set(METRIC_NAMES)
        if unknown:
            raise ValueError(f"unknown metric(s): {sorted(unknown)}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.amplitude is not None and len(self.amplitude) != self.m:
            raise ValueError("amplitude must have length m")

    @property
    def amplitude_truth(self) -> np.ndarray:
        if self.amplitude is None:
            return np.ones(self.m)
        return np.asarray(self.amplitude, dtype=float)

    @classmethod
    def from_yaml(cls, path: str) -> "ExperimentConfig":
        with open(path) as fh:
            raw = yaml.safe_load(fh)
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ValueError("config file must contain a flat key-value mapping")
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config key(s): {sorted(unknown)}")
        for key in ("snr_db", "gamma", "phi_deg", "metrics"):
            if key in raw and not isinstance(raw[key], (list, tuple)):
                raw[key] = [raw[key]]
        return cls(**raw)


@dataclass(frozen=True)
class MetricRow:
    """One long-format record of a sweep: the point settings plus a single
    named metric value."""

    experiment_id: str
    snr_db: float
    gamma: float
    sigma2: float
    n0: float
    phi_deg: float
    m: int
    t: int
    n_mc: int
    seed: int
    metric_name: str
    value: float


@dataclass(frozen=True)
class SweepPoint:
    snr_db: float
    gamma: float
    phi_deg: float


def derive_seed(master_seed: int, point: SweepPoint, realization_index: int) -> int:
    """Stable 64-bit child seed for one realization of one grid point."""
    key = f"{master_seed}|{point.snr_db!r}|{point.gamma!r}|{point.phi_deg!r}|{realization_index}"
    digest = hashlib.blake2b(key.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def cosine_similarity(d_hat, d_truth) -> float:
    """Angular distance ``arccos(|d_hat^H d| / (||d_hat|| ||d||))`` in
    radians; 0 means perfectly aligned, pi/2 perpendicular."""
    d_hat = np.asarray(d_hat, dtype=float)
    d_truth = np.asarray(d_truth, dtype=float)
    nh, nt = np.linalg.norm(d_hat), np.linalg.norm(d_truth)
    if nh == 0 or nt == 0:
        raise ValueError("cosine similarity is undefined for zero-norm vectors")
    cos = np.clip(abs(np.dot(d_hat, d_truth)) / (nh * nt), 0.0, 1.0)
    return float(np.arccos(cos))


def phase_error_variance(alpha_hat, alpha_truth) -> float:
    """Sample variance (ddof = 1) of the wrapped per-chain phase errors."""
    alpha_hat = np.asarray(alpha_hat, dtype=float)
    alpha_truth = np.asarray(alpha_truth, dtype=float)
    if alpha_hat.shape != alpha_truth.shape or alpha_hat.size < 2:
        raise ValueError("need two equal-length arrays with at least 2 chains")
    err = wrap_phase(alpha_hat - alpha_truth)
    return float(np.var(err, ddof=1))


@dataclass(frozen=True)
class RealizationResult:
    phase_errors: np.ndarray       # wrapped, from the numeric MLE
    phase_errors_moment: np.ndarray
    cos_sim: float
    degenerate: bool = False


def run_realization(config: ExperimentConfig, point: SweepPoint,
                    realization_index: int) -> RealizationResult:
    """One Monte-Carlo realization of one grid point.

    Derives the noise power from the point's SNR, draws fresh truth phases,
    synthesizes a window, runs both phase estimators and the amplitude
    estimator, and returns wrapped per-chain phase errors plus the cosine
    similarity of the amplitude direction.
    """
    d_truth = config.amplitude_truth
    seed = derive_seed(config.master_seed, point, realization_index)
    rng = np.random.default_rng(seed)
    alpha_truth = wrap_phase(rng.uniform(-np.pi, np.pi, size=config.m))
    fe = FrontEnd(d=d_truth, alpha=alpha_truth)
    n0 = noise_power_for_snr(10.0 ** (point.snr_db / 10.0), fe, config.sigma2,
                             point.gamma)
    scenario = Scenario(m=config.m, t=config.t, gamma=point.gamma,
                        sigma2=config.sigma2, n0=n0,
                        phi=np.deg2rad(point.phi_deg), spacing=config.spacing)
    obs = synthesize(scenario, fe, seed=int(rng.integers(2**63)))
    steering = scenario.steering
    try:
        mle = estimate_phase_mle_numeric(obs, steering, scenario.pilot)
        moment = estimate_phase_moment(obs, steering, scenario.pilot)
    except Exception:
        nan = np.full(config.m, np.nan)
        return RealizationResult(nan, nan, np.nan, degenerate=True)
    d_hat = estimate_amplitude_moment(sample_moments(obs)).d_hat
    return RealizationResult(
        phase_errors=wrap_phase(mle.alpha_hat - alpha_truth),
        phase_errors_moment=wrap_phase(moment.alpha_hat - alpha_truth),
        cos_sim=cosine_similarity(d_hat, d_truth),
    )


def crlb_rows_for_point(config: ExperimentConfig, point: SweepPoint):
    """CRLB-derived metric values for one grid point: the mean phase-drift
    bound across chains (infinity when gamma = 0) and its high-SNR form."""
    d_truth = config.amplitude_truth
    fe = FrontEnd(d=d_truth, alpha=np.zeros(config.m))
    n0 = noise_power_for_snr(10.0 ** (point.snr_db / 10.0), fe, config.sigma2,
                             point.gamma)
    xi = ParamVector(d=d_truth, sigma2=config.sigma2,
                     alpha=np.zeros(config.m), gamma=point.gamma)
    try:
        report = fisher.crlb_diagonal_exact(fisher.fim_closed_form(xi, config.t, n0))
        crlb_alpha_mean = float(np.mean(report.crlb_alpha))
    except SingularFimError:
        crlb_alpha_mean = np.inf
    high = fisher.crlb_high_snr(xi, config.t)
    return n0, crlb_alpha_mean, float(np.mean(high.high_snr_alpha))


def run_sweep(config: ExperimentConfig, out_path: Optional[str] = None):
    """Run the full sweep and return the metric rows; also writes them as CSV
    when a path is given (argument or config.output).

    The output file is opened before any computation so an unwritable path
    fails fast. Realizations of a point may run on multiple workers; the
    reduction is in realization-index order, so results do not depend on the
    parallel split.
    """
    path = out_path if out_path is not None else config.output
    handle = open(path, "w", newline="") if path is not None else None
    try:
        rows = []
        for snr_db in config.snr_db:
            for gamma in config.gamma:
                for phi_deg in config.phi_deg:
                    point = SweepPoint(snr_db=float(snr_db), gamma=float(gamma),
                                       phi_deg=float(phi_deg))
                    rows.extend(_point_rows(config, point))
        if handle is not None:
            _write_rows(handle, rows)
        return rows
    finally:
        if handle is not None:
            handle.close()


def _point_rows(config: ExperimentConfig, point: SweepPoint):
    indices = range(config.n_mc)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(
                lambda r: run_realization(config, point, r), indices))
    else:
        results = [run_realization(config, point, r) for r in indices]

    ok = [r for r in results if not r.degenerate]
    n0, crlb_alpha_mean, crlb_alpha_high = crlb_rows_for_point(config, point)

    values = {}
    if ok:
        errs = np.stack([r.phase_errors for r in ok])
        values["phase_err_var"] = float(np.mean(
            [np.var(e, ddof=1) for e in errs]))
        values["phase_err_mse"] = float(np.mean(errs**2))
        sims = np.array([r.cos_sim for r in ok])
        values["cos_sim_mean"] = float(np.mean(sims))
        values["cos_sim_std"] = float(np.std(sims, ddof=1)) if sims.size > 1 else 0.0
    else:
        for name in ("phase_err_var", "phase_err_mse", "cos_sim_mean", "cos_sim_std"):
            values[name] = np.nan
    values["crlb_alpha_mean"] = crlb_alpha_mean
    values["crlb_alpha_high_snr"] = crlb_alpha_high

    experiment_id = f"snr{point.snr_db:g}_gam{point.gamma:g}_phi{point.phi_deg:g}"
    rows = []
    for name in config.metrics:
        rows.append(MetricRow(
            experiment_id=experiment_id, snr_db=point.snr_db, gamma=point.gamma,
            sigma2=config.sigma2, n0=n0, phi_deg=point.phi_deg, m=config.m,
            t=config.t, n_mc=config.n_mc, seed=config.master_seed,
            metric_name=name, value=values[name]))
    return rows


_CSV_FIELDS = [f.name for f in fields(MetricRow)]


def _write_rows(handle, rows):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for row in rows:
        writer.writerow([
            row.experiment_id, repr(row.snr_db), repr(row.gamma),
            repr(row.sigma2), repr(row.n0), repr(row.phi_deg),
            row.m, row.t, row.n_mc, row.seed, row.metric_name, repr(row.value),
        ])


def write_metric_rows(path: str, rows) -> None:
    with open(path, "w", newline="") as handle:
        _write_rows(handle, rows)


def read_metric_rows(path: str):
    """Parse a sweep CSV back into MetricRow objects (exact round-trip:
    floats are written with shortest-repr formatting)."""
    rows = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        for rec in reader:
            rows.append(MetricRow(
                experiment_id=rec["experiment_id"],
                snr_db=float(rec["snr_db"]), gamma=float(rec["gamma"]),
                sigma2=float(rec["sigma2"]), n0=float(rec["n0"]),
                phi_deg=float(rec["phi_deg"]), m=int(rec["m"]), t=int(rec["t"]),
                n_mc=int(rec["n_mc"]), seed=int(rec["seed"]),
                metric_name=rec["metric_name"], value=float(rec["value"])))
    return rows

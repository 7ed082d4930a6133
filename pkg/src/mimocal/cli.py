"""Command-line entry points.

Subcommands:

* ``sweep``     run a Monte-Carlo sweep from a config file and write CSV
* ``crlb``      write the CRLB metric rows only (no simulation)
* ``simulate``  dump one seeded realization (observations and estimates)
* ``selfcheck`` run the built-in oracle suites

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace

import numpy as np

from . import selfcheck as selfcheck_mod
from .channel import sample_moments, synthesize
from .errors import MimocalError, NumericalDomainError
from .estimators import estimate_amplitude_moment, estimate_phase_moment
from .harness import ExperimentConfig, SweepPoint, run_sweep
from .model import FrontEnd, Scenario, noise_power_for_snr, wrap_phase

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimocal",
        description="Massive MIMO front-end calibration: estimators, CRLBs "
                    "and Monte-Carlo sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a Monte-Carlo sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--mc", type=int, help="override n_mc")
    p_sweep.add_argument("--seed", type=int, help="override master seed")
    p_sweep.add_argument("--workers", type=int, help="override worker count")

    p_crlb = sub.add_parser("crlb", help="CRLB rows only, no simulation")
    p_crlb.add_argument("--config", required=True)
    p_crlb.add_argument("--out", required=True)

    p_sim = sub.add_parser("simulate", help="dump one seeded realization")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--out", required=True)

    sub.add_parser("selfcheck", help="run the built-in oracle suites")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "crlb":
            return _cmd_crlb(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_selfcheck()
    except (ValueError,) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MimocalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


def _load_config(path, args=None) -> ExperimentConfig:
    try:
        config = ExperimentConfig.from_yaml(path)
    except FileNotFoundError as exc:
        raise ValueError(f"config file not found: {exc}") from exc
    overrides = {}
    if args is not None:
        if getattr(args, "mc", None) is not None:
            overrides["n_mc"] = args.mc
        if getattr(args, "seed", None) is not None:
            overrides["master_seed"] = args.seed
        if getattr(args, "workers", None) is not None:
            overrides["workers"] = args.workers
    return replace(config, **overrides) if overrides else config


def _cmd_sweep(args) -> int:
    config = _load_config(args.config, args)
    rows = run_sweep(config, out_path=args.out)
    print(f"wrote {len(rows)} metric rows to {args.out}")
    return EXIT_OK


def _cmd_crlb(args) -> int:
    config = _load_config(args.config)
    config = replace(config, n_mc=1,
                     metrics=("crlb_alpha_mean", "crlb_alpha_high_snr"))
    rows = run_sweep(config, out_path=args.out)
    print(f"wrote {len(rows)} CRLB rows to {args.out}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = _load_config(args.config)
    point = SweepPoint(snr_db=float(config.snr_db[0]),
                       gamma=float(config.gamma[0]),
                       phi_deg=float(config.phi_deg[0]))
    rng = np.random.default_rng(args.seed)
    alpha_truth = wrap_phase(rng.uniform(-np.pi, np.pi, size=config.m))
    fe = FrontEnd(d=config.amplitude_truth, alpha=alpha_truth)
    n0 = noise_power_for_snr(10.0 ** (point.snr_db / 10.0), fe,
                             config.sigma2, point.gamma)
    scenario = Scenario(m=config.m, t=config.t, gamma=point.gamma,
                        sigma2=config.sigma2, n0=n0,
                        phi=np.deg2rad(point.phi_deg), spacing=config.spacing)
    obs = synthesize(scenario, fe, seed=args.seed)
    alpha_hat = estimate_phase_moment(obs, scenario.steering, scenario.pilot).alpha_hat
    d_hat = estimate_amplitude_moment(sample_moments(obs)).d_hat

    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["quantity", "chain", "snapshot", "value"])
        for t in range(config.t):
            for m in range(config.m):
                writer.writerow(["y_re", m, t, repr(obs.y[m, t].real)])
                writer.writerow(["y_im", m, t, repr(obs.y[m, t].imag)])
        for m in range(config.m):
            writer.writerow(["alpha_true", m, "", repr(float(alpha_truth[m]))])
            writer.writerow(["alpha_hat", m, "", repr(float(alpha_hat[m]))])
            writer.writerow(["d_true", m, "", repr(float(fe.d[m]))])
            writer.writerow(["d_hat", m, "", repr(float(d_hat[m]))])
    print(f"wrote realization dump to {args.out}")
    return EXIT_OK


def _cmd_selfcheck() -> int:
    results = selfcheck_mod.run_all()
    failed = [name for name, ok, detail in results if not ok]
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}: {detail}")
    if failed:
        raise NumericalDomainError(f"selfcheck failed: {', '.join(failed)}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())

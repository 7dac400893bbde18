"""Command-line entry points: simulate, realdata, theory-check, plot.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 solver
non-convergence (partial outputs are preserved).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import ConfigError, DataError, NonConvergedError, RankLassoError
from .oracle import (PopulationModel, cif_empirical, cif_lower_bound_equicorr,
                     grad_decomposition_check, theory_report, ustat_A)
from .runner import (ExperimentConfig, RealDataConfig, emit_plots,
                     experiment_config_from_dict, realdata_config_from_dict,
                     run_realdata, run_simulation)
from .simdata import substream

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NONCONVERGED = 4


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc


def _cmd_simulate(args) -> int:
    raw = _load_json(args.config)
    for key, flag in (("output_dir", args.output_dir),
                      ("replicates", args.replicates),
                      ("master_seed", args.master_seed),
                      ("parallelism", args.parallelism)):
        if flag is not None:
            raw[key] = flag
    config = experiment_config_from_dict(raw)
    report = run_simulation(config)
    print(f"wrote {len(report.rows)} replicate rows to {report.output_dir}")
    return EXIT_OK


def _cmd_realdata(args) -> int:
    if args.config:
        raw = _load_json(args.config)
    else:
        if not args.csv or not args.target:
            raise ConfigError("realdata needs --config or both --csv and --target")
        raw = {"schema_version": 1}
    overrides = {"csv_path": args.csv, "target_column": args.target,
                 "n_screen": args.n_screen, "splits": args.splits,
                 "train_size": args.train_size, "seed": args.seed,
                 "output_dir": args.output_dir,
                 "parallelism": args.parallelism}
    for key, flag in overrides.items():
        if flag is not None:
            raw[key] = flag
    if args.spearman:
        raw["screen_method"] = "spearman"
    config = realdata_config_from_dict(raw)
    report = run_realdata(config)
    print(f"dropped {report.dropped_rows} incomplete row(s); "
          f"screened to {len(report.screened_columns)} column(s)")
    for row in report.summary:
        print(f"{row['method']}: mean selected {row['mean_selected']:.6g}, "
              f"mean OPQ {row['mean_opq']:.6g}")
    return EXIT_OK


def _cmd_theory_check(args) -> int:
    rng = substream(args.seed, 0x7c)
    failures = 0

    def check(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        failures += 0 if ok else 1

    # exact algebraic identities on random instances
    worst_rank_sum = 0.0
    worst_grad = 0.0
    for _ in range(args.instances):
        n = int(rng.integers(2, 25))
        p = int(rng.integers(1, 6))
        X = rng.standard_normal((n, p))
        y = rng.standard_normal(n)
        theta = rng.standard_normal(p)
        from .ranks import ranks as _ranks
        r = _ranks(y).astype(np.float64)
        lhs = X.T @ r
        rhs = n * (n - 1.0) * ustat_A(X, y) + X.sum(axis=0)
        worst_rank_sum = max(worst_rank_sum, float(np.max(np.abs(lhs - rhs))))
        worst_grad = max(worst_grad, grad_decomposition_check(X, y, theta))
    check("rank-sum identity", worst_rank_sum <= 1e-12,
          f"max gap {worst_rank_sum:.3e} over {args.instances} instances")
    check("gradient decomposition", worst_grad <= 1e-12,
          f"max gap {worst_grad:.3e} over {args.instances} instances")

    # equicorrelated CIF bound vs randomized search
    bound = cif_lower_bound_equicorr(4, 0.3, xi=3.0, q=2.0)
    H = np.full((8, 8), 0.3)
    np.fill_diagonal(H, 1.0)
    emp = cif_empirical(H, range(4), xi=3.0, q=2.0, n_samples=4000,
                        seed=args.seed)
    check("CIF bound", emp >= bound,
          f"empirical {emp:.4f} >= analytic lower bound {bound:.4f}")

    # Monte-Carlo sign recovery on a small Gaussian model
    beta = np.array([2.0, -1.5, 1.0, 0.0, 0.0, 0.0])
    model = PopulationModel(H=np.eye(6), beta=beta)
    report = theory_report(
        model, link=lambda z, e: z + e,
        noise=lambda g, m: np.tan(np.pi * (g.random(m) - 0.5)),
        n_mc=args.n_mc, n=200, seed=args.seed)
    cos = float(report.theta0_hat @ beta
                / (np.linalg.norm(report.theta0_hat) * np.linalg.norm(beta)))
    check("theta0 proportionality", cos >= 0.98 and report.sign_agreement == 1.0,
          f"cosine {cos:.4f}, sign agreement {report.sign_agreement:.2f}")
    check("gamma_beta positivity", report.gamma_beta_hat > 0,
          f"gamma_beta {report.gamma_beta_hat:.5f}")

    print(f"{'all checks passed' if failures == 0 else f'{failures} check(s) failed'}")
    return EXIT_OK if failures == 0 else EXIT_DATA


def _cmd_plot(args) -> int:
    written = emit_plots(args.input_dir)
    print(f"wrote {len(written)} SVG file(s)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranklasso",
        description="Rank-based robust variable selection experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a simulation experiment config")
    sim.add_argument("--config", required=True, help="JSON experiment config")
    sim.add_argument("--output-dir")
    sim.add_argument("--replicates", type=int)
    sim.add_argument("--master-seed", type=int)
    sim.add_argument("--parallelism", type=int)
    sim.set_defaults(func=_cmd_simulate)

    real = sub.add_parser("realdata", help="screen/split/fit a CSV data set")
    real.add_argument("--config", help="JSON real-data config")
    real.add_argument("--csv", help="input CSV path")
    real.add_argument("--target", help="target column name")
    real.add_argument("--n-screen", type=int)
    real.add_argument("--splits", type=int)
    real.add_argument("--train-size", type=int)
    real.add_argument("--seed", type=int)
    real.add_argument("--output-dir")
    real.add_argument("--parallelism", type=int)
    real.add_argument("--spearman", action="store_true",
                      help="screen by Spearman instead of Pearson correlation")
    real.set_defaults(func=_cmd_realdata)

    theory = sub.add_parser("theory-check",
                            help="run the theory-oracle sanity checks")
    theory.add_argument("--seed", type=int, default=0)
    theory.add_argument("--n-mc", type=int, default=200_000)
    theory.add_argument("--instances", type=int, default=200)
    theory.set_defaults(func=_cmd_theory_check)

    plot = sub.add_parser("plot", help="re-render SVGs from report CSVs")
    plot.add_argument("--input-dir", required=True)
    plot.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NonConvergedError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except RankLassoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

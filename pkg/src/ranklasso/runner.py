"""Config-driven experiment orchestration and report emission.

`run_simulation` executes a grid of (scenario, method, replicate) tasks and
writes per-replicate and aggregate CSVs plus SVG charts.  `run_realdata`
screens a CSV by correlation with the target, repeatedly splits into
train/test, fits every method and scores ordering prediction quality.

Determinism contract: with a fixed config every output byte is reproducible,
including under any `parallelism`, except the timing files (timing.csv,
timing_ratio.csv) which record wall-clock measurements.  Work is distributed
over a thread pool (the solver kernels release the GIL) and results are
re-ordered deterministically before writing.

CSV conventions: comma separator, header row, LF line endings, floats with
6 significant digits.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import os
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cd import standardize
from .errors import (ConfigError, DataError, DegenerateColumnError,
                     NonConvergedError)
from .metrics import eval_selection, fd_tp_curve, opq
from .select import METHODS, SelectionResult, SelectorSpec, fit_selector
from .simdata import ScenarioConfig, simulate, substream
from .svgplot import line_chart, write_svg

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "RANKLASSO_OUTDIR"
_SPLIT_STREAM = 0x511
_MISSING = {"", "na", "nan", "null"}

REPLICATES_CSV = "replicates.csv"
TIMING_CSV = "timing.csv"
AGGREGATE_CSV = "aggregate.csv"
TIMING_RATIO_CSV = "timing_ratio.csv"
FDTP_CSV = "fdtp.csv"
MANIFEST_JSON = "manifest.json"
REALDATA_SPLITS_CSV = "realdata_splits.csv"
REALDATA_SUMMARY_CSV = "realdata_summary.csv"

# files excluded from the byte-determinism contract
NONDETERMINISTIC_FILES = (TIMING_CSV, TIMING_RATIO_CSV)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".6g")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _derive_seed(*path: int) -> int:
    return int(np.random.SeedSequence(tuple(int(v) for v in path))
               .generate_state(1, np.uint64)[0])


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, "ranklasso_out")


@dataclass(frozen=True)
class ExperimentConfig:
    """A full simulation experiment: scenario cells x methods x replicates."""

    scenarios: tuple[ScenarioConfig, ...]
    methods: tuple[SelectorSpec, ...]
    replicates: int
    master_seed: int
    output_dir: str = field(default_factory=default_output_dir)
    parallelism: int = 1
    fdtp_replicate: int = 0

    def __post_init__(self):
        if not self.scenarios:
            raise ConfigError("config field 'scenarios' must be non-empty")
        if not self.methods:
            raise ConfigError("config field 'methods' must be non-empty")
        if self.replicates < 1:
            raise ConfigError("config field 'replicates' must be >= 1")
        if self.parallelism < 1:
            raise ConfigError("config field 'parallelism' must be >= 1")
        if not 0 <= self.fdtp_replicate < self.replicates:
            raise ConfigError("config field 'fdtp_replicate' out of range")


@dataclass(frozen=True)
class RealDataConfig:
    """Screening + repeated-split evaluation on a CSV data set."""

    csv_path: str
    target_column: str
    n_screen: int = 300
    splits: int = 200
    train_size: int = 180
    methods: tuple[SelectorSpec, ...] = tuple(
        SelectorSpec(method=m) for m in ("rL", "arL", "thrL", "LAD", "cv"))
    seed: int = 0
    output_dir: str = field(default_factory=default_output_dir)
    parallelism: int = 1
    screen_method: str = "pearson"
    max_below_quantile: float | None = None
    min_range: float | None = None

    def __post_init__(self):
        if self.n_screen < 1:
            raise ConfigError("config field 'n_screen' must be >= 1")
        if self.splits < 1:
            raise ConfigError("config field 'splits' must be >= 1")
        if self.train_size < 2:
            raise ConfigError("config field 'train_size' must be >= 2")
        if self.parallelism < 1:
            raise ConfigError("config field 'parallelism' must be >= 1")
        if self.screen_method not in ("pearson", "spearman"):
            raise ConfigError("config field 'screen_method' must be "
                              "'pearson' or 'spearman'")


@dataclass
class SimulationReport:
    rows: list[dict]
    aggregate: list[dict]
    output_dir: Path
    non_converged: int = 0


@dataclass
class RealDataReport:
    rows: list[dict]
    summary: list[dict]
    dropped_rows: int
    screened_columns: list[str]
    output_dir: Path


# ---------------------------------------------------------------------------
# config (de)serialization


def _spec_from_dict(d: dict, where: str) -> SelectorSpec:
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: method entry must be an object")
    unknown = set(d) - {"method", "lambda_rule", "lambda_fixed", "cv_folds", "seed"}
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "method" not in d:
        raise ConfigError(f"{where}: missing field 'method'")
    if d["method"] not in METHODS:
        raise ConfigError(f"{where}: unknown method {d['method']!r}")
    try:
        return SelectorSpec(**d)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _scenario_from_dict(d: dict, where: str) -> ScenarioConfig:
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: scenario entry must be an object")
    allowed = {"scenario", "n", "p", "p0", "beta_value", "corr_b", "seed"}
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {sorted(unknown)}")
    for req in ("scenario", "n", "p", "p0"):
        if req not in d:
            raise ConfigError(f"{where}: missing field {req!r}")
    try:
        return ScenarioConfig(**d)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def experiment_config_from_dict(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"config field 'schema_version' must be {SCHEMA_VERSION}")
    for req in ("scenarios", "methods", "replicates", "master_seed"):
        if req not in raw:
            raise ConfigError(f"missing config field {req!r}")
    scenarios = tuple(_scenario_from_dict(s, f"scenarios[{i}]")
                      for i, s in enumerate(raw["scenarios"]))
    methods = tuple(_spec_from_dict(m, f"methods[{i}]")
                    for i, m in enumerate(raw["methods"]))
    try:
        return ExperimentConfig(
            scenarios=scenarios, methods=methods,
            replicates=int(raw["replicates"]),
            master_seed=int(raw["master_seed"]),
            output_dir=str(raw.get("output_dir", default_output_dir())),
            parallelism=int(raw.get("parallelism", 1)),
            fdtp_replicate=int(raw.get("fdtp_replicate", 0)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def realdata_config_from_dict(raw: dict) -> RealDataConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"config field 'schema_version' must be {SCHEMA_VERSION}")
    for req in ("csv_path", "target_column"):
        if req not in raw:
            raise ConfigError(f"missing config field {req!r}")
    methods = raw.get("methods")
    kwargs = dict(csv_path=str(raw["csv_path"]),
                  target_column=str(raw["target_column"]))
    if methods is not None:
        kwargs["methods"] = tuple(_spec_from_dict(m, f"methods[{i}]")
                                  for i, m in enumerate(methods))
    for key in ("n_screen", "splits", "train_size", "seed", "parallelism"):
        if key in raw:
            kwargs[key] = int(raw[key])
    if "output_dir" in raw:
        kwargs["output_dir"] = str(raw["output_dir"])
    if "screen_method" in raw:
        kwargs["screen_method"] = str(raw["screen_method"])
    for key in ("max_below_quantile", "min_range"):
        if raw.get(key) is not None:
            kwargs[key] = float(raw[key])
    try:
        return RealDataConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _config_to_canonical(config) -> dict:
    def convert(obj):
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return {k: convert(v) for k, v in dataclasses.asdict(obj).items()}
        if isinstance(obj, (tuple, list)):
            return [convert(v) for v in obj]
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        return obj

    canonical = convert(config)
    # execution parameters, not experiment identity: the same experiment
    # written elsewhere or on more workers must hash identically
    canonical.pop("output_dir", None)
    canonical.pop("parallelism", None)
    return canonical


def write_manifest(output_dir: Path, config, kind: str) -> None:
    canonical = {"schema_version": SCHEMA_VERSION, "kind": kind,
                 "config": _config_to_canonical(config)}
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(blob.encode()).hexdigest()
    import numba

    manifest = dict(canonical)
    manifest["config_sha256"] = digest
    manifest["versions"] = {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "numba": numba.__version__,
        "ranklasso": "0.1.0",
    }
    with open(output_dir / MANIFEST_JSON, "w", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# simulation harness


def _run_cell(config: ExperimentConfig, s_idx: int, m_idx: int,
              replicate: int) -> dict:
    scenario = config.scenarios[s_idx]
    spec = config.methods[m_idx]
    cell_seed = _derive_seed(config.master_seed, s_idx)
    dataset = simulate(dataclasses.replace(scenario, seed=cell_seed), replicate)
    design = standardize(dataset.X)
    run_spec = dataclasses.replace(
        spec, seed=_derive_seed(config.master_seed, s_idx, m_idx, replicate))
    start = time.perf_counter()
    try:
        result: SelectionResult | None = fit_selector(run_spec, design, dataset.y)
        error = None
    except NonConvergedError as exc:
        result, error = None, exc
    wall = time.perf_counter() - start
    row = {"s_idx": s_idx, "m_idx": m_idx, "scenario": scenario.scenario,
           "n": scenario.n, "p": scenario.p, "p0": scenario.p0,
           "method": spec.method, "replicate": replicate, "wall_time_s": wall,
           "error": error}
    if result is not None:
        ev = eval_selection(result.support, dataset.support, scenario.p0)
        row.update({"R": ev.R, "V": ev.V, "S": ev.S, "FDP": ev.fdp,
                    "TPP": ev.tpp, "NMP": ev.nmp})
        if replicate == config.fdtp_replicate:
            curve = fd_tp_curve(result.coefficients, dataset.support)
            row["fdtp"] = curve
    return row


def run_simulation(config: ExperimentConfig) -> SimulationReport:
    """Execute the configured experiment and write every report file.

    Returns the in-memory report; raises NonConvergedError after writing
    partial outputs if any replicate failed to converge.
    """
    out = Path(config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output_dir {config.output_dir!r} is not writable: "
                          f"{exc}") from exc

    tasks = [(s, m, r)
             for s in range(len(config.scenarios))
             for m in range(len(config.methods))
             for r in range(config.replicates)]
    if config.parallelism == 1:
        rows = [_run_cell(config, *t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            rows = list(pool.map(lambda t: _run_cell(config, *t), tasks))
    rows.sort(key=lambda r: (r["s_idx"], r["m_idx"], r["replicate"]))

    ok_rows = [r for r in rows if r["error"] is None]
    failures = [r for r in rows if r["error"] is not None]

    rep_header = ["scenario", "n", "p", "p0", "method", "replicate",
                  "R", "V", "S", "FDP", "TPP", "NMP"]
    _write_csv(out / REPLICATES_CSV, rep_header,
               [[r[k] for k in rep_header] for r in ok_rows])
    _write_csv(out / TIMING_CSV,
               ["scenario", "n", "p", "p0", "method", "replicate", "wall_time_s"],
               [[r["scenario"], r["n"], r["p"], r["p0"], r["method"],
                 r["replicate"], r["wall_time_s"]] for r in rows])

    aggregate: list[dict] = []
    for s_idx in range(len(config.scenarios)):
        for m_idx in range(len(config.methods)):
            cell = [r for r in ok_rows
                    if r["s_idx"] == s_idx and r["m_idx"] == m_idx]
            if not cell:
                continue
            sc = config.scenarios[s_idx]
            aggregate.append({
                "scenario": sc.scenario, "n": sc.n, "p": sc.p, "p0": sc.p0,
                "method": config.methods[m_idx].method,
                "replicates": len(cell),
                "FDR": float(np.mean([r["FDP"] for r in cell])),
                "Power": float(np.mean([r["TPP"] for r in cell])),
                "NMP": float(np.mean([r["NMP"] for r in cell])),
            })
    agg_header = ["scenario", "n", "p", "p0", "method", "replicates",
                  "FDR", "Power", "NMP"]
    _write_csv(out / AGGREGATE_CSV, agg_header,
               [[a[k] for k in agg_header] for a in aggregate])

    # Table-1 analog: mean wall-time ratio LAD / rL per scenario cell
    ratio_rows = []
    for s_idx, sc in enumerate(config.scenarios):
        times: dict[str, list[float]] = {}
        for r in rows:
            if r["s_idx"] == s_idx:
                times.setdefault(r["method"], []).append(r["wall_time_s"])
        if "LAD" in times and "rL" in times:
            t_lad = float(np.mean(times["LAD"]))
            t_rl = float(np.mean(times["rL"]))
            ratio_rows.append([sc.scenario, sc.n, sc.p, t_lad, t_rl,
                               t_lad / t_rl if t_rl > 0 else float("inf")])
    _write_csv(out / TIMING_RATIO_CSV,
               ["scenario", "n", "p", "t_lad_mean_s", "t_rl_mean_s", "ratio"],
               ratio_rows)

    fdtp_rows = []
    for r in ok_rows:
        curve = r.get("fdtp")
        if curve is None:
            continue
        for k in range(curve.tp.size):
            fdtp_rows.append([r["scenario"], r["n"], r["p"], r["p0"],
                              r["method"], r["replicate"], k + 1,
                              int(curve.tp[k]), int(curve.fd[k])])
    _write_csv(out / FDTP_CSV,
               ["scenario", "n", "p", "p0", "method", "replicate", "k",
                "tp", "fd"], fdtp_rows)

    write_manifest(out, config, kind="simulate")
    emit_plots(out)

    report = SimulationReport(rows=ok_rows, aggregate=aggregate,
                              output_dir=out, non_converged=len(failures))
    if failures:
        first = failures[0]
        raise NonConvergedError(
            f"{len(failures)} replicate(s) did not converge; partial outputs "
            f"written to {out} (first failure: scenario {first['scenario']} "
            f"method {first['method']} replicate {first['replicate']})",
            coefficients=first["error"].coefficients,
            violation=first["error"].violation,
            iterations=first["error"].iterations)
    return report


# ---------------------------------------------------------------------------
# plotting from report files


def _read_csv(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def emit_plots(output_dir) -> list[Path]:
    """Render SVG charts from the report CSVs in `output_dir`."""
    out = Path(output_dir)
    agg_path = out / AGGREGATE_CSV
    if not agg_path.exists():
        raise DataError(f"missing report file {agg_path}")
    agg = _read_csv(agg_path)
    required = {"scenario", "n", "p", "p0", "method", "FDR", "Power", "NMP"}
    if agg and not required.issubset(agg[0]):
        missing = sorted(required - set(agg[0]))
        raise DataError(f"aggregate.csv lacks column(s) {missing}")
    written: list[Path] = []
    groups = sorted({(row["scenario"], row["p0"]) for row in agg})
    for metric in ("NMP", "FDR", "Power"):
        for scenario, p0 in groups:
            cell = [r for r in agg
                    if r["scenario"] == scenario and r["p0"] == p0]
            series = {}
            for r in cell:
                series.setdefault(r["method"], []).append(
                    (float(r["p"]), float(r[metric])))
            chart = line_chart(
                f"scenario {scenario} p0={p0}", "p", metric,
                [(name, [x for x, _ in pts], [y for _, y in pts])
                 for name, pts in series.items()])
            path = out / f"{metric.lower()}_s{scenario}_p0{p0}.svg"
            write_svg(path, chart)
            written.append(path)
    if not groups:
        path = out / "nmp_empty.svg"
        write_svg(path, line_chart("no data", "p", "NMP", []))
        written.append(path)

    fdtp_path = out / FDTP_CSV
    if fdtp_path.exists():
        fdtp = _read_csv(fdtp_path)
        fd_groups = sorted({(r["scenario"], r["n"], r["p"], r["p0"])
                            for r in fdtp})
        for scenario, n, p, p0 in fd_groups:
            cell = [r for r in fdtp if (r["scenario"], r["n"], r["p"], r["p0"])
                    == (scenario, n, p, p0)]
            series = {}
            for r in cell:
                series.setdefault(r["method"], []).append(
                    (int(r["tp"]), int(r["fd"])))
            chart = line_chart(
                f"FD vs TP scenario {scenario} n={n} p={p}", "TP", "FD",
                [(name, [x for x, _ in pts], [y for _, y in pts])
                 for name, pts in series.items()])
            path = out / f"fdtp_s{scenario}_n{n}_p{p}.svg"
            write_svg(path, chart)
            written.append(path)
    return written


# ---------------------------------------------------------------------------
# real-data harness


def _load_csv_numeric(path: str, target_column: str
                      ) -> tuple[np.ndarray, np.ndarray, list[str], int]:
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read CSV {path!r}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"CSV {path!r} is empty") from None
        if target_column not in header:
            raise DataError(f"target column {target_column!r} not in CSV header")
        t_idx = header.index(target_column)
        width = len(header)
        kept_rows: list[list[float]] = []
        dropped = 0
        for i, row in enumerate(reader, start=2):
            if len(row) != width:
                raise DataError(f"row {i}: expected {width} fields, got {len(row)}")
            values = []
            missing = False
            for j, cellv in enumerate(row):
                txt = cellv.strip()
                if txt.lower() in _MISSING:
                    missing = True
                    break
                try:
                    values.append(float(txt))
                except ValueError:
                    raise DataError(
                        f"row {i}, column {header[j]!r}: not a number: {txt!r}"
                    ) from None
            if missing:
                dropped += 1
                continue
            kept_rows.append(values)
    if not kept_rows:
        raise DataError(f"CSV {path!r} has no complete data rows")
    data = np.asarray(kept_rows, dtype=np.float64)
    y = data[:, t_idx]
    X = np.delete(data, t_idx, axis=1)
    names = [h for k, h in enumerate(header) if k != t_idx]
    return X, y, names, dropped


def _screen_columns(X: np.ndarray, y: np.ndarray, n_screen: int,
                    method: str) -> np.ndarray:
    from .ranks import ranks

    if method == "spearman":
        Xs = np.apply_along_axis(lambda c: ranks(c).astype(np.float64), 0, X)
        ys = ranks(y).astype(np.float64)
    else:
        Xs, ys = X, y
    yc = ys - ys.mean()
    Xc = Xs - Xs.mean(axis=0)
    denom = np.sqrt((Xc * Xc).sum(axis=0) * float(yc @ yc))
    corr = (Xc.T @ yc) / np.where(denom > 0, denom, 1.0)
    score = np.where(denom > 0, np.abs(corr), -1.0)  # dead columns go last
    order = np.lexsort((np.arange(X.shape[1]), -score))
    return np.sort(order[:min(n_screen, X.shape[1])])


def _run_split(config: RealDataConfig, X: np.ndarray, y: np.ndarray,
               split: int) -> list[dict]:
    n = y.shape[0]
    perm = substream(config.seed, _SPLIT_STREAM, split).permutation(n)
    train, test = perm[:config.train_size], perm[config.train_size:]
    X_tr, y_tr = X[train], y[train]
    X_te, y_te = X[test], y[test]
    # columns constant within this split carry no information; drop them
    scales = X_tr.std(axis=0)
    keep = np.flatnonzero(scales > 0)
    design = standardize(X_tr[:, keep])
    X_te_std = (X_te[:, keep] - design.column_means) / design.column_scales
    out = []
    for m_idx, spec in enumerate(config.methods):
        run_spec = dataclasses.replace(
            spec, seed=_derive_seed(config.seed, split, m_idx))
        start = time.perf_counter()
        result = fit_selector(run_spec, design, y_tr)
        wall = time.perf_counter() - start
        out.append({"split": split, "method": spec.method,
                    "selected": int(result.support.size),
                    "opq": opq(result.coefficients, X_te_std, y_te),
                    "wall_time_s": wall,
                    "dropped_constant_columns": int(X.shape[1] - keep.size)})
    return out


def run_realdata(config: RealDataConfig) -> RealDataReport:
    """Screen, split, fit and score the configured CSV data set."""
    X, y, names, dropped = _load_csv_numeric(config.csv_path,
                                             config.target_column)
    n = y.shape[0]
    if config.train_size >= n:
        raise DataError(f"train_size {config.train_size} needs more than "
                        f"{n} complete rows")
    if n - config.train_size < 2:
        raise DataError("test set needs at least 2 observations")
    if np.all(y == y[0]):
        raise DataError(f"target column {config.target_column!r} is constant; "
                        "the rank transform is degenerate (all ties)")
    # optional expression-array style probe filters
    keep = np.arange(X.shape[1])
    if config.max_below_quantile is not None:
        cut = np.quantile(X, config.max_below_quantile)
        keep = keep[X[:, keep].max(axis=0) >= cut]
    if config.min_range is not None:
        rng_ok = (X[:, keep].max(axis=0) - X[:, keep].min(axis=0)
                  >= config.min_range)
        keep = keep[rng_ok]
    if keep.size == 0:
        raise DataError("probe filters removed every column")
    X = X[:, keep]
    names = [names[j] for j in keep]

    screened = _screen_columns(X, y, config.n_screen, config.screen_method)
    X = X[:, screened]
    screened_names = [names[j] for j in screened]

    out = Path(config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"output_dir {config.output_dir!r} is not writable: "
                          f"{exc}") from exc

    splits = list(range(config.splits))
    if config.parallelism == 1:
        nested = [_run_split(config, X, y, s) for s in splits]
    else:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            nested = list(pool.map(lambda s: _run_split(config, X, y, s),
                                   splits))
    rows = [r for chunk in nested for r in chunk]

    _write_csv(out / REALDATA_SPLITS_CSV,
               ["split", "method", "selected", "opq"],
               [[r["split"], r["method"], r["selected"], r["opq"]]
                for r in rows])
    summary = []
    for spec in config.methods:
        cell = [r for r in rows if r["method"] == spec.method]
        summary.append({"method": spec.method,
                        "mean_selected": float(np.mean([r["selected"] for r in cell])),
                        "mean_opq": float(np.mean([r["opq"] for r in cell]))})
    _write_csv(out / REALDATA_SUMMARY_CSV,
               ["method", "mean_selected", "mean_opq"],
               [[s["method"], s["mean_selected"], s["mean_opq"]]
                for s in summary])
    write_manifest(out, config, kind="realdata")
    return RealDataReport(rows=rows, summary=summary, dropped_rows=dropped,
                          screened_columns=screened_names, output_dir=out)

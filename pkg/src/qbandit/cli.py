"""Command-line front end: train / qpe / baseline / reproduce workflows.

Configuration is a single JSON document with sections (backend, noise,
train, qpe, policy, env, output_dir); command-line flags override
config fields, which override built-in defaults.  Every run writes its
artifacts plus a manifest.json (seed, versions, config hash) that
suffices to re-run bit-identically on the ideal backend.  SVG plots are
rendered from the already-written CSV data, never the other way round.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import platform
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .backends import get_backend
from .bandit import BanditParams, PolicySpec, angle_from_frequency
from .baseline import mc_samples_needed, monte_carlo_estimate, qpe_qsample_count
from .noise import NoiseConfig
from .qpe import QpeConfig, ValueHistogram, error_bound, run_qpe
from .statevector import derive_seed
from .svg import bar_chart, line_chart, panel_grid
from .training import (
    DatasetError,
    TrainConfig,
    TrainingResult,
    load_dataset,
    optimize,
    synthesize_dataset,
    write_dataset,
    write_result_json,
    write_trace_csv,
)


class ConfigError(ValueError):
    """Raised for malformed experiment configuration, naming the field."""


DEFAULT_CONFIG: dict = {
    "backend": "ideal",
    "noise": {"p1": 5e-4, "p2": 5e-3, "readout_flip": 5e-3, "seed": 0},
    "train": {
        "shots_per_eval": 8000,
        "max_iterations": 100,
        "initial_theta": [math.pi / 2, math.pi / 2],
        "rho_start": 0.5,
        "rho_end": 1e-3,
        "seed": 0,
        "optimizer": "cobyla",
    },
    "qpe": {"n": 3, "shots": 300, "seed": 0},
    "policy": {"p_left": 0.5},
    "env": None,
    "output_dir": None,
}

FIGURE_IDS = ("training-curves", "qpe-histograms", "scaling")


def _merge(base: dict, override: dict, path: str = "") -> dict:
    merged = dict(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config field: {where}")
        if isinstance(base[key], dict) and isinstance(value, dict):
            merged[key] = _merge(base[key], value, where)
        else:
            merged[key] = value
    return merged


def load_config(path: str | None) -> dict:
    if path is None:
        return json.loads(json.dumps(DEFAULT_CONFIG))
    file = Path(path)
    if not file.exists():
        raise ConfigError(f"config file not found: {file}")
    try:
        user = json.loads(file.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {file} is not valid JSON: {exc.msg}") from exc
    if not isinstance(user, dict):
        raise ConfigError(f"config {file} must hold a JSON object")
    return _merge(DEFAULT_CONFIG, user)


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ConfigError(f"{field}: {message}")


def _noise_from(cfg: dict) -> NoiseConfig:
    section = cfg["noise"]
    for key in section:
        _require(key in DEFAULT_CONFIG["noise"], f"noise.{key}", "unknown field")
    try:
        return NoiseConfig(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"noise: {exc}") from exc


def _train_config_from(cfg: dict) -> TrainConfig:
    section = dict(cfg["train"])
    for key in section:
        _require(key in DEFAULT_CONFIG["train"], f"train.{key}", "unknown field")
    section["initial_theta"] = tuple(section["initial_theta"])
    try:
        return TrainConfig(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"train: {exc}") from exc


def _resolve_env(cfg: dict) -> BanditParams | str | None:
    env = cfg["env"]
    if env is None:
        return None
    if env == "from-training":
        return "from-training"
    if isinstance(env, dict) and set(env) == {"theta_left", "theta_right"}:
        return BanditParams(float(env["theta_left"]), float(env["theta_right"]))
    raise ConfigError(
        "env: expected {'theta_left': ..., 'theta_right': ...} or 'from-training'"
    )


def _as_list(value) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _config_hash(cfg: dict) -> str:
    return hashlib.sha256(
        json.dumps(cfg, sort_keys=True, default=str).encode()
    ).hexdigest()


def write_manifest(
    out_dir: Path, command: str, cfg: dict, seed: int, outputs: list[str]
) -> Path:
    manifest = {
        "command": command,
        "config": cfg,
        "config_hash": _config_hash(cfg),
        "seed": seed,
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
            "qbandit": __version__,
        },
        "outputs": sorted(outputs),
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return path


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                ["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row]
            )


# ---------------------------------------------------------------------------
# train


def _training_plots(result: TrainingResult, out_dir: Path) -> list[str]:
    iters = [(e.iteration, e.loss) for e in result.trace]
    curve = line_chart(
        [("loss", iters)],
        title="Training loss per evaluation",
        xlabel="evaluation",
        ylabel="MSE loss",
        log_y=True,
    )
    (out_dir / "learning_curve.svg").write_text(curve)
    params = line_chart(
        [
            ("theta_left", [(e.iteration, e.theta_left) for e in result.trace]),
            ("theta_right", [(e.iteration, e.theta_right) for e in result.trace]),
        ],
        title="Parameter evolution",
        xlabel="evaluation",
        ylabel="angle (rad)",
    )
    (out_dir / "parameters.svg").write_text(params)
    return ["learning_curve.svg", "parameters.svg"]


def cmd_train(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.backend:
        cfg["backend"] = args.backend
    if args.shots is not None:
        cfg["train"]["shots_per_eval"] = args.shots
    if args.seed is not None:
        cfg["train"]["seed"] = args.seed

    train_cfg = _train_config_from(cfg)
    backend = get_backend(cfg["backend"], _noise_from(cfg))
    dataset = load_dataset(args.data)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = optimize(dataset, train_cfg, backend)

    write_trace_csv(result, out_dir / "trace.csv")
    write_result_json(result, out_dir / "result.json")
    outputs = ["trace.csv", "result.json"] + _training_plots(result, out_dir)
    write_manifest(out_dir, "train", cfg, train_cfg.seed, outputs)
    print(
        f"train: final theta = ({result.final_theta[0]:.4f}, {result.final_theta[1]:.4f}), "
        f"loss = {result.final_loss:.3e}, evaluations = {result.iterations}"
    )
    return 0


# ---------------------------------------------------------------------------
# qpe


def _histogram_rows(hist: ValueHistogram) -> list[list]:
    rows = []
    for y, v_tilde, count, exact in hist.rows():
        rows.append([y, v_tilde, count, exact])
    return rows


def _histogram_panel(
    runs: list[tuple[str, ValueHistogram]], title: str, shots: int
) -> str:
    series = []
    overlay: list[tuple[float, float]] = []
    for label, hist in runs:
        series.append((label, [(v, c) for _, v, c, _ in hist.rows()]))
        if hist.exact is not None:
            overlay.extend(
                (hist.value(y), p * shots) for y, p in sorted(hist.exact.items())
            )
    return bar_chart(
        series,
        title=title,
        xlabel="estimated value",
        ylabel=f"counts ({shots} shots)",
        x_range=(0.0, 1.0),
        overlay=overlay or None,
        overlay_label="exact" if overlay else "",
    )


def _resolve_qpe_env(args: argparse.Namespace, cfg: dict) -> BanditParams:
    flags = args.theta_left is not None or args.theta_right is not None
    if flags and args.from_dir:
        raise ConfigError("env: give either --theta-left/--theta-right or --from, not both")
    if flags:
        _require(
            args.theta_left is not None and args.theta_right is not None,
            "env",
            "--theta-left and --theta-right must be given together",
        )
        return BanditParams(args.theta_left, args.theta_right)
    if args.from_dir:
        result_file = Path(args.from_dir) / "result.json"
        if not result_file.exists():
            raise ConfigError(f"env: no training result at {result_file}")
        payload = json.loads(result_file.read_text())
        theta = payload["final_theta"]
        return BanditParams(float(theta[0]), float(theta[1]))
    env = _resolve_env(cfg)
    if isinstance(env, BanditParams):
        return env
    raise ConfigError(
        "env: provide --theta-left/--theta-right, --from, or an env config section"
    )


def cmd_qpe(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.backend:
        cfg["backend"] = args.backend
    if args.n is not None:
        cfg["qpe"]["n"] = args.n
    if args.shots is not None:
        cfg["qpe"]["shots"] = args.shots
    if args.seed is not None:
        cfg["qpe"]["seed"] = args.seed
    if args.policy_left is not None:
        cfg["policy"]["p_left"] = args.policy_left

    params = _resolve_qpe_env(args, cfg)
    noise = _noise_from(cfg)
    base_seed = int(cfg["qpe"]["seed"])
    shots = int(cfg["qpe"]["shots"])
    policies = [float(p) for p in _as_list(cfg["policy"]["p_left"])]
    n_values = [int(n) for n in _as_list(cfg["qpe"]["n"])]
    backends = [str(b) for b in _as_list(cfg["backend"])]

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []
    failures: list[str] = []
    panels: dict[tuple[str, int], list[tuple[str, ValueHistogram]]] = {}

    run_index = 0
    for backend_name in backends:
        for n in n_values:
            for p_left in policies:
                run_id = f"qpe_pleft{p_left:g}_n{n}_{backend_name}"
                try:
                    qpe_cfg = QpeConfig(
                        n=n,
                        shots=shots,
                        backend=backend_name,
                        noise=noise,
                        seed=derive_seed(base_seed, run_index),
                    )
                    backend = get_backend(backend_name, noise)
                    hist = run_qpe(PolicySpec(p_left), params, qpe_cfg, backend)
                except (ValueError, ConfigError) as exc:
                    failures.append(f"{run_id}: {exc}")
                    run_index += 1
                    continue
                csv_path = out_dir / f"{run_id}.csv"
                _write_csv(
                    csv_path,
                    ["y", "v_tilde", "count", "exact_prob"],
                    _histogram_rows(hist),
                )
                outputs.append(csv_path.name)
                panels.setdefault((backend_name, n), []).append(
                    (f"p_left={p_left:g}", hist)
                )
                run_index += 1

    if panels:
        grid = [
            [
                _histogram_panel(
                    panels[(b, n)], title=f"{b}, n={n}", shots=shots
                )
                for n in n_values
                if (b, n) in panels
            ]
            for b in backends
            if any((b, n) in panels for n in n_values)
        ]
        (out_dir / "histograms.svg").write_text(panel_grid(grid))
        outputs.append("histograms.svg")

    write_manifest(out_dir, "qpe", cfg, base_seed, outputs)
    for failure in failures:
        print(f"qpe: sub-run failed: {failure}", file=sys.stderr)
    print(f"qpe: wrote {len(outputs)} artifact(s) to {out_dir}")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# baseline


def _parse_n_range(text: str) -> list[int]:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"n-range: expected 'a..b', got {text!r}") from exc
    _require(1 <= lo_i <= hi_i, "n-range", f"need 1 <= a <= b, got {text!r}")
    return list(range(lo_i, hi_i + 1))


def cmd_baseline(args: argparse.Namespace) -> int:
    v = args.v
    _require(0.0 <= v <= 1.0, "v", f"target value must be in [0, 1], got {v}")
    n_values = _parse_n_range(args.n_range)
    _require(bool(n_values), "n-range", "empty range")
    seed = args.seed if args.seed is not None else 0
    confidence = 8.0 / math.pi**2

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    table_rows = []
    for n in n_values:
        eps = error_bound(n, v)
        table_rows.append(
            [n, eps, qpe_qsample_count(n), mc_samples_needed(eps, 1.0 - confidence)]
        )
    _write_csv(
        out_dir / "scaling.csv",
        ["n", "error_bound", "qpe_qsamples", "mc_samples"],
        table_rows,
    )

    # Monte Carlo error decay on a single-arm bandit realizing value v.
    policy = PolicySpec(1.0)
    params = BanditParams(angle_from_frequency(v), 0.0)
    rmse_rows = []
    for num_samples in (100, 1000, 10000):
        errors = [
            (monte_carlo_estimate(policy, params, num_samples, derive_seed(seed, num_samples, rep)).estimate - v) ** 2
            for rep in range(40)
        ]
        rmse_rows.append([num_samples, math.sqrt(sum(errors) / len(errors))])
    _write_csv(out_dir / "mc_rmse.csv", ["num_samples", "rmse"], rmse_rows)

    scaling_plot = line_chart(
        [
            ("classical samples", [(n, mc) for n, _, _, mc in table_rows]),
            ("qpe qsamples", [(n, q) for n, _, q, _ in table_rows]),
        ],
        title=f"Samples for matched accuracy at v={v:g}",
        xlabel="evaluation qubits n",
        ylabel="samples",
        log_y=True,
    )
    rmse_plot = line_chart(
        [
            ("mc rmse", [(r[0], r[1]) for r in rmse_rows]),
            ("1/sqrt(N)", [(r[0], 1.0 / math.sqrt(r[0])) for r in rmse_rows]),
        ],
        title="Monte Carlo error decay",
        xlabel="samples N",
        ylabel="RMSE",
        log_x=True,
        log_y=True,
    )
    (out_dir / "scaling.svg").write_text(panel_grid([[scaling_plot, rmse_plot]]))

    cfg = {"v": v, "n_values": n_values, "seed": seed, "confidence": confidence}
    write_manifest(
        out_dir, "baseline", cfg, seed, ["scaling.csv", "mc_rmse.csv", "scaling.svg"]
    )
    print(f"baseline: wrote scaling table for n in {n_values[0]}..{n_values[-1]}")
    return 0


# ---------------------------------------------------------------------------
# reproduce


def _reproduce_training(out_dir: Path) -> None:
    runs = [
        ("win70-20", 0.7, 0.2, 101, 11),
        ("win0-50", 0.0, 0.5, 102, 12),
    ]
    summary = []
    for label, f_left, f_right, data_seed, train_seed in runs:
        run_dir = out_dir / label
        run_dir.mkdir(parents=True, exist_ok=True)
        dataset = synthesize_dataset(f_left, f_right, 10000, seed=data_seed)
        write_dataset(dataset, run_dir / "dataset.jsonl")
        cfg = dict(DEFAULT_CONFIG["train"])
        cfg["seed"] = train_seed
        result = optimize(dataset, TrainConfig(**{**cfg, "initial_theta": tuple(cfg["initial_theta"])}), get_backend("ideal"))
        write_trace_csv(result, run_dir / "trace.csv")
        write_result_json(result, run_dir / "result.json")
        _training_plots(result, run_dir)
        summary.append(
            [
                label,
                result.final_theta[0],
                result.final_theta[1],
                angle_from_frequency(f_left),
                angle_from_frequency(f_right),
            ]
        )
    _write_csv(
        out_dir / "angles.csv",
        ["run", "theta_left_final", "theta_right_final", "theta_left_closed_form", "theta_right_closed_form"],
        summary,
    )


def _reproduce_histograms(out_dir: Path, seed: int = 100) -> None:
    params = BanditParams(angle_from_frequency(0.7), angle_from_frequency(0.2))
    noise = NoiseConfig()
    shots = 300
    panels = []
    run_index = 0
    for backend_name in ("ideal", "noisy"):
        row = []
        for n in (3, 4):
            runs = []
            for p_left in (0.5, 0.0):
                qpe_cfg = QpeConfig(
                    n=n,
                    shots=shots,
                    backend=backend_name,
                    noise=noise,
                    seed=derive_seed(seed, run_index),
                )
                hist = run_qpe(
                    PolicySpec(p_left), params, qpe_cfg, get_backend(backend_name, noise)
                )
                run_id = f"qpe_pleft{p_left:g}_n{n}_{backend_name}"
                _write_csv(
                    out_dir / f"{run_id}.csv",
                    ["y", "v_tilde", "count", "exact_prob"],
                    _histogram_rows(hist),
                )
                runs.append((f"p_left={p_left:g}", hist))
                run_index += 1
            row.append(_histogram_panel(runs, f"{backend_name}, n={n}", shots))
        panels.append(row)
    (out_dir / "histograms.svg").write_text(panel_grid(panels))


def cmd_reproduce(args: argparse.Namespace) -> int:
    if args.figure not in FIGURE_IDS:
        print(
            f"reproduce: unknown figure id {args.figure!r}; valid ids: "
            + ", ".join(FIGURE_IDS),
            file=sys.stderr,
        )
        return 1
    out_dir = Path(args.out) / args.figure
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.figure == "training-curves":
        _reproduce_training(out_dir)
        cfg = {"figure": args.figure, "train": DEFAULT_CONFIG["train"]}
        seed = 0
    elif args.figure == "qpe-histograms":
        seed = 100
        _reproduce_histograms(out_dir, seed)
        cfg = {
            "figure": args.figure,
            "policies": [0.5, 0.0],
            "n": [3, 4],
            "backends": ["ideal", "noisy"],
            "shots": 300,
            "env": {"win_left": 0.7, "win_right": 0.2},
        }
    else:  # scaling
        ns = argparse.Namespace(v=0.45, n_range="3..8", seed=7, out=str(out_dir))
        return cmd_baseline(ns)

    outputs = sorted(
        str(p.relative_to(out_dir)) for p in out_dir.rglob("*") if p.is_file()
    )
    write_manifest(out_dir, f"reproduce {args.figure}", cfg, seed, outputs)
    print(f"reproduce: wrote {args.figure} artifacts to {out_dir}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbandit",
        description="Two-armed-bandit environment learning and quantum policy evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="fit environment angles to a dataset")
    train.add_argument("--data", required=True, help="JSONL transition dataset")
    train.add_argument("--config", help="experiment config JSON")
    train.add_argument("--shots", type=int, help="shots per arm per evaluation")
    train.add_argument("--seed", type=int)
    train.add_argument("--backend", choices=["ideal", "noisy", "exact", "exact-oracle"])
    train.add_argument("--out", required=True, help="output directory")
    train.set_defaults(func=cmd_train)

    qpe = sub.add_parser("qpe", help="estimate a policy value by phase estimation")
    qpe.add_argument("--n", type=int, help="evaluation-register width")
    qpe.add_argument("--shots", type=int)
    qpe.add_argument("--policy-left", type=float, dest="policy_left")
    qpe.add_argument("--theta-left", type=float, dest="theta_left")
    qpe.add_argument("--theta-right", type=float, dest="theta_right")
    qpe.add_argument("--from", dest="from_dir", help="training output directory")
    qpe.add_argument("--backend", choices=["ideal", "noisy", "exact", "exact-oracle"])
    qpe.add_argument("--seed", type=int)
    qpe.add_argument("--config", help="experiment config JSON")
    qpe.add_argument("--out", required=True)
    qpe.set_defaults(func=cmd_qpe)

    baseline = sub.add_parser("baseline", help="classical sample-complexity comparison")
    baseline.add_argument("--v", type=float, required=True, help="target policy value")
    baseline.add_argument("--n-range", required=True, dest="n_range", help="a..b")
    baseline.add_argument("--seed", type=int)
    baseline.add_argument("--out", required=True)
    baseline.set_defaults(func=cmd_baseline)

    repro = sub.add_parser("reproduce", help="run a canned end-to-end pipeline")
    repro.add_argument("--figure", required=True, help="|".join(FIGURE_IDS))
    repro.add_argument("--out", required=True)
    repro.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DatasetError, ValueError) as exc:
        print(f"qbandit {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

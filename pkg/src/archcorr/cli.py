"""Command-line experiment runner.

    archcorr corr      --config paper_ula --bend_angle_rad pi/2
    archcorr spectrum  --config paper_ura --bend_angle_rad 0
    archcorr sweep     --config paper_ula --out results/ula
    archcorr validate  --config my.json

Exit codes: 0 success, 1 validation failure, 2 usage/config error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import datetime as dt
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from threadpoolctl import threadpool_limits

from . import __version__
from .artifacts import csv_text, fmt, json_text, matrix_csv, spectrum_csv, write_atomic
from .config import ConfigError, ExperimentConfig, load_config, parse_angle
from .correlation_closed import closed_matrix
from .correlation_oracle import oracle_matrix, validate
from .errors import DomainError, NumericError, ResourceError
from .spectrum import check_psd, dof_report, eigen_spectrum

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_OVERRIDES = {
    "array_type": str,
    "n_elements": int,
    "rows": int,
    "per_arc": int,
    "arc_length_m": float,
    "bend_angle_rad": lambda s: [parse_angle(x) for x in s.split(",")],
    "wavelength_m": float,
    "frequency_hz": float,
    "row_spacing_m": float,
    "oracle_order": int,
    "oracle_tolerance": float,
    "oracle_max_doublings": int,
    "dof_thresholds": lambda s: [float(x) for x in s.split(",")],
    "matrix_source": str,
    "validation_bound": float,
    "validation_samples": int,
    "validation_pairs": str,
    "seed": int,
}


def tau_label(tau: float) -> str:
    """0.01 -> '1e-2'."""
    mantissa, exponent = f"{tau:.12e}".split("e")
    mantissa = mantissa.rstrip("0").rstrip(".")
    return f"{mantissa}e{int(exponent)}"


class Run:
    """Collects artifacts for one invocation and writes the manifest last."""

    def __init__(self, command: str, cfg: ExperimentConfig, out: Path, threads: int):
        self.command = command
        self.cfg = cfg
        self.out = out
        self.threads = threads
        self.files: list[str] = []
        self.started = dt.datetime.now(dt.timezone.utc)

    def write(self, name: str, text: str) -> None:
        write_atomic(self.out / name, text)
        self.files.append(name)

    def finish(self) -> None:
        manifest = {
            "tool": "archcorr",
            "version": __version__,
            "command": self.command,
            "config": self.cfg.to_dict(),
            "artifacts": list(self.files),
            # run-specific fields live here so the rest stays reproducible
            "runtime": {
                "threads": self.threads,
                "started": self.started.isoformat(),
                "finished": dt.datetime.now(dt.timezone.utc).isoformat(),
            },
        }
        write_atomic(self.out / "manifest.json", json_text(manifest))


def _matrix(cfg: ExperimentConfig, beta: float, threads: int):
    g = cfg.geometry(beta)
    if cfg.matrix_source == "oracle":
        return oracle_matrix(g, cfg.oracle(), threads)
    return closed_matrix(g)


def _analyse(cfg: ExperimentConfig, beta: float, threads: int):
    spec = eigen_spectrum(_matrix(cfg, beta, threads))
    check_psd(spec)
    report = dof_report(spec, cfg.dof_thresholds, asymptote=cfg.asymptote(), beta=beta)
    return spec, report


def cmd_corr(run: Run) -> int:
    cfg = run.cfg
    r = _matrix(cfg, cfg.single_beta(), run.threads)
    run.write("corr.csv", matrix_csv(r.values))
    return EXIT_OK


def cmd_spectrum(run: Run) -> int:
    cfg = run.cfg
    spec, report = _analyse(cfg, cfg.single_beta(), run.threads)
    run.write("spectrum.csv", spectrum_csv(spec.values))
    run.write("dof.json", json_text(report.to_dict()))
    return EXIT_OK


def cmd_sweep(run: Run) -> int:
    cfg = run.cfg
    betas = cfg.bend_angle_rad
    for b in betas:
        cfg.geometry(b)  # fail on bad geometry before any heavy work
    with ThreadPoolExecutor(max_workers=run.threads) as pool:
        results = list(pool.map(lambda b: _analyse(cfg, b, 1), betas))

    header = ["beta"] + [f"dof_tau_{tau_label(t)}" for t in cfg.dof_thresholds]
    header += ["effective_rank", "asymptote"]
    rows, spectra = [], []
    for beta, (spec, report) in zip(betas, results):
        counts = [str(report.threshold_counts[t]) for t in cfg.dof_thresholds]
        rows.append([fmt(beta), *counts, fmt(report.effective_rank), fmt(report.asymptote)])
        spectra.extend((fmt(beta), str(k), fmt(v)) for k, v in enumerate(spec.values, 1))
    run.write("sweep.csv", csv_text(header, rows))
    run.write("sweep_spectra.csv", csv_text(["beta", "index", "eigenvalue"], spectra))
    return EXIT_OK


def cmd_validate(run: Run) -> int:
    cfg = run.cfg
    g = cfg.geometry(cfg.single_beta())
    pairs = [(i, i) for i in range(g.size)] if cfg.validation_pairs == "diagonal" else None
    report = validate(g, cfg.validation_samples, cfg.oracle(), cfg.seed, pairs, run.threads)
    body = report.to_dict()
    body["bound"] = cfg.validation_bound
    body["passed"] = report.max_abs_real_error < cfg.validation_bound
    run.write("validation.json", json_text(body))
    return EXIT_OK if body["passed"] else EXIT_VALIDATION


COMMANDS = {
    "corr": cmd_corr,
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="archcorr", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"archcorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True,
                       help="JSON config path or bundled name (paper_ula, paper_ura)")
        p.add_argument("--out", help="output directory (overrides output_dir)")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="worker threads; results do not depend on it")
        for key, conv in _OVERRIDES.items():
            p.add_argument(f"--{key}", dest=key, type=conv, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data = load_config(args.config)
        for key in _OVERRIDES:
            value = getattr(args, key)
            if value is not None:
                data[key] = value
        # a wavelength flag replaces a configured frequency and vice versa
        if args.wavelength_m is not None and args.frequency_hz is None:
            data.pop("frequency_hz", None)
        if args.frequency_hz is not None and args.wavelength_m is None:
            data.pop("wavelength_m", None)
        cfg = ExperimentConfig.from_dict(data)
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        out = Path(args.out if args.out else cfg.output_dir)
        run = Run(args.command, cfg, out, args.threads)
        # BLAS stays single-threaded so results never depend on --threads
        with threadpool_limits(limits=1):
            code = COMMANDS[args.command](run)
        run.finish()
        return code
    except (ConfigError, DomainError, ResourceError) as exc:
        print(f"archcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"archcorr: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Command-line experiment runner.

Subcommands: ``density2d``, ``denoise``, ``deconvolve``, ``diagnose``,
``verify``.  Options resolve as defaults < config file < flags; config
files are key = value sections (or a manifest JSON, whose stored config is
reused verbatim for byte-identical re-runs).  The output directory defaults
to the ``BKMCMC_OUTPUT_DIR`` environment variable, then ``./artifacts``.
Exit codes: 0 success, 2 configuration error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import analytic_posterior_2d, diagnose, hist, summarize
from .experiments import (DeconvRun, denoise_beta_sweep, deconv_data,
                          deconv_sweep, run_deconvolve, run_denoise,
                          run_density2d)
from .forward import denoising_truth
from .io import (read_chain_csv, write_chain_csv, write_chain_sidecar,
                 write_columns_csv, write_grid_csv, write_json, write_manifest,
                 write_synthetic_data)
from .mh import ChainRecord
from .priors import BasisDescriptor, deconv_gamma_sequence, synthesize
from .rng import ParameterDomainError
from .verify import run_all

ENV_OUTPUT_DIR = "BKMCMC_OUTPUT_DIR"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


_DEFAULTS = {
    "density2d": {"algorithm": "rcar", "p": 1.0, "beta": 0.3, "n_steps": 8 * 10**5,
                  "burnin": 10**4, "thin": 1, "seed": 0},
    "denoise": {"algorithm": "rcar", "n": 10, "p": 1.0, "beta": None,
                "n_steps": 9 * 10**4, "burnin": 5 * 10**4, "thin": 1, "seed": 0,
                "restarts": 5, "sweep": False},
    "deconvolve": {"algorithm": "rcar", "n": 32, "p": 2.0 / 3.0, "beta": 0.97,
                   "lam": 1.0, "eps": 1.0 / 16.0, "n_steps": 25 * 10**4,
                   "burnin": 5 * 10**4, "thin": 1, "seed": 0, "restarts": 5,
                   "sweep": None},
}

_FLOATS = {"p", "beta", "lam", "eps"}
_INTS = {"n", "n_steps", "burnin", "thin", "seed", "restarts"}
_BOOLS = {"sweep"}


def _coerce(key: str, raw):
    if raw is None or isinstance(raw, (int, float, bool)):
        return raw
    s = str(raw).strip()
    if key in _FLOATS:
        return float(s)
    if key in _INTS:
        return int(s)
    if key in _BOOLS:
        return s.lower() in ("1", "true", "yes", "on")
    return s


def _load_config_file(path: str, experiment: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {path}")
    if p.suffix == ".json":
        payload = json.loads(p.read_text())
        cfg = payload.get("config", payload)
        return {k: v for k, v in cfg.items() if k != "experiment"}
    cp = configparser.ConfigParser()
    cp.read(p)
    merged = {}
    for section in ("run", experiment):
        if cp.has_section(section):
            merged.update(dict(cp.items(section)))
    return merged


def resolve_config(experiment: str, args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags, with type checks."""
    cfg = dict(_DEFAULTS[experiment])
    if getattr(args, "config", None):
        for k, v in _load_config_file(args.config, experiment).items():
            if k not in cfg:
                raise ConfigError(f"unknown config key {k!r} for {experiment}")
            cfg[k] = _coerce(k, v)
    for k in cfg:
        flag = getattr(args, k, None)
        if flag is not None:
            cfg[k] = _coerce(k, flag)
    _validate(experiment, cfg)
    cfg["experiment"] = experiment
    return cfg


def _validate(experiment: str, cfg: dict):
    if cfg["algorithm"] not in ("rcar", "sarsd"):
        raise ConfigError(f"algorithm: must be 'rcar' or 'sarsd', got {cfg['algorithm']!r}")
    if cfg["p"] <= 0:
        raise ConfigError(f"p: must be positive, got {cfg['p']}")
    if cfg["algorithm"] == "sarsd" and cfg["p"] != int(cfg["p"]):
        raise ConfigError(f"p: sarsd requires an integer shape, got {cfg['p']}")
    beta = cfg.get("beta")
    if beta is not None and not 0.0 < beta < 1.0:
        raise ConfigError(f"beta: must lie in (0,1), got {beta}")
    if cfg["n_steps"] < 1 or cfg["burnin"] < 0 or cfg["burnin"] > cfg["n_steps"]:
        raise ConfigError("n_steps/burnin: need 0 <= burnin <= n_steps, n_steps >= 1")
    if cfg["thin"] < 1:
        raise ConfigError(f"thin: must be >= 1, got {cfg['thin']}")
    if "n" in cfg and cfg["n"] < 1:
        raise ConfigError(f"n: must be >= 1, got {cfg['n']}")
    if "eps" in cfg and not 0.0 < cfg["eps"] <= 0.25:
        raise ConfigError(f"eps: must lie in (0, 1/4], got {cfg['eps']}")
    if "lam" in cfg and cfg["lam"] <= 0:
        raise ConfigError(f"lam: must be positive, got {cfg['lam']}")
    sweep = cfg.get("sweep")
    if experiment == "deconvolve" and sweep not in (None, "n_modes", "p", "lam", "eps"):
        raise ConfigError(f"sweep: must be one of n_modes/p/lam/eps, got {sweep!r}")


def _out_dir(args) -> Path:
    base = args.output_dir or os.environ.get(ENV_OUTPUT_DIR) or "artifacts"
    d = Path(base) / args.experiment
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write_chain(rec: ChainRecord, out: Path, stem: str = "chain"):
    write_chain_csv(rec, out / f"{stem}.csv")
    write_chain_sidecar(rec, out / f"{stem}.json")


def _cmd_density2d(cfg: dict, out: Path) -> int:
    rec = run_density2d(cfg["algorithm"], p=cfg["p"], beta=cfg["beta"],
                        n_steps=cfg["n_steps"], burnin=cfg["burnin"],
                        thin=cfg["thin"], seed=cfg["seed"])
    _write_chain(rec, out)
    write_json(diagnose(rec).to_dict(), out / "diagnostics.json")
    counts, (xe, ye), overflow = hist(rec.samples, 60, ((-2.0, 4.0), (-2.0, 4.0)))
    xc, yc = 0.5 * (xe[:-1] + xe[1:]), 0.5 * (ye[:-1] + ye[1:])
    xg, yg = np.meshgrid(xc, yc, indexing="ij")
    write_columns_csv({"x": xg.ravel(), "y": yg.ravel(), "count": counts.ravel()},
                      out / "hist2d.csv")
    post = analytic_posterior_2d(cfg["p"])
    ax, ay = np.meshgrid(post.x, post.y, indexing="ij")
    write_columns_csv({"x": ax.ravel(), "y": ay.ravel(), "density": post.density.ravel()},
                      out / "analytic_grid.csv")
    print(f"density2d: acceptance {rec.acceptance_rate:.4f}, "
          f"{rec.samples.shape[0]} samples, overflow {overflow}")
    return EXIT_OK


def _cmd_denoise(cfg: dict, out: Path) -> int:
    if cfg["sweep"]:
        curves = denoise_beta_sweep(cfg["algorithm"], restarts=cfg["restarts"],
                                    p=cfg["p"], seed=cfg["seed"])
        ns = sorted({k[0] for k in curves})
        betas = sorted({k[1] for k in curves})
        cols = {"beta": betas}
        for n in ns:
            cols[f"accept_n{n}"] = [curves[(n, b)] for b in betas]
        write_columns_csv(cols, out / "accept_vs_beta.csv")
        print(f"denoise sweep: {len(curves)} (N, beta) pairs written")
        return EXIT_OK
    rec, y = run_denoise(cfg["algorithm"], n=cfg["n"], beta=cfg["beta"], p=cfg["p"],
                         n_steps=cfg["n_steps"], burnin=cfg["burnin"],
                         thin=cfg["thin"], seed=cfg["seed"])
    _write_chain(rec, out)
    write_json(diagnose(rec).to_dict(), out / "diagnostics.json")
    s = summarize(rec)
    write_columns_csv({"index": np.arange(cfg["n"], dtype=float),
                       "truth": denoising_truth(cfg["n"]), "data": y,
                       "mean": s["mean"], "median": s["median"], "std": s["std"]},
                      out / "mean_vs_truth.csv")
    print(f"denoise: acceptance {rec.acceptance_rate:.4f}")
    return EXIT_OK


def _cmd_deconvolve(cfg: dict, out: Path) -> int:
    base = DeconvRun(n_modes=cfg["n"], p=cfg["p"], lam=cfg["lam"], beta=cfg["beta"],
                     eps=cfg["eps"], n_steps=cfg["n_steps"], burnin=cfg["burnin"],
                     thin=cfg["thin"], seed=cfg["seed"], algorithm=cfg["algorithm"])
    if cfg["sweep"]:
        values = {"n_modes": [8, 16, 32, 64, 128],
                  "p": [0.2, 0.4, 0.6, 0.8, 1.0],
                  "lam": [0.25, 0.5, 1.0, 2.0, 4.0],
                  "eps": [1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0]}[cfg["sweep"]]
        res = deconv_sweep(cfg["sweep"], values, base=base, restarts=cfg["restarts"])
        write_columns_csv({cfg["sweep"]: list(res), "acceptance": list(res.values())},
                          out / f"accept_vs_{cfg['sweep']}.csv")
        print(f"deconvolve sweep over {cfg['sweep']}: {res}")
        return EXIT_OK
    rec, data, truth = run_deconvolve(base)
    setup, _, _ = deconv_data(base)
    write_synthetic_data(data, truth | {"u0": truth["u0"].tolist()},
                         setup.obs_points, out / "data.csv")
    _write_chain(rec, out)
    write_json(diagnose(rec).to_dict(), out / "diagnostics.json")
    s = summarize(rec)
    gammas = deconv_gamma_sequence(cfg["n"])
    write_columns_csv({"mode": np.arange(cfg["n"], dtype=float), "gamma": gammas,
                       "mean": s["mean"], "std": s["std"]},
                      out / "wavelet_modes.csv")
    basis = BasisDescriptor("haar", setup.grid_solver)
    mean_grid = synthesize(s["mean"], basis, setup.grid_solver, raw=False)
    write_grid_csv(mean_grid, out / "posterior_mean.csv")
    sub = rec.samples[:: max(1, rec.samples.shape[0] // 2000)]
    grids = np.stack([synthesize(c, basis, setup.grid_solver, raw=False) for c in sub])
    write_grid_csv(grids.std(axis=0), out / "posterior_std.csv")
    print(f"deconvolve: acceptance {rec.acceptance_rate:.4f}")
    return EXIT_OK


def _cmd_diagnose(args) -> int:
    rec = read_chain_csv(args.chain)
    rep = diagnose(rec, max_lag=args.max_lag)
    out = Path(args.chain).parent
    write_json(rep.to_dict(), out / "diagnostics.json")
    lags = np.arange(rep.acf_curves.shape[1], dtype=float)
    cols = {"lag": lags}
    for j in range(rep.acf_curves.shape[0]):
        cols[f"acf_u_{j}"] = rep.acf_curves[j]
    write_columns_csv(cols, out / "acf.csv")
    print(f"diagnose: max IACF {rep.max_iacf:.2f}, min ESS/10k {rep.min_ess:.1f}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_all(seed=args.seed or 0, inject_fault=args.inject_fault)
    n_fail = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        n_fail += not r.passed
        print(f"[{status}] {r.name}: {r.detail}")
    print(f"verify: {len(results) - n_fail}/{len(results)} checks passed")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bkmcmc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="experiment", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value config file or manifest JSON")
        sp.add_argument("--output-dir", help=f"artifact root (default ${ENV_OUTPUT_DIR} or ./artifacts)")
        sp.add_argument("--algorithm", choices=("rcar", "sarsd"))
        sp.add_argument("--p", type=float)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--n-steps", dest="n_steps", type=int)
        sp.add_argument("--burnin", type=int)
        sp.add_argument("--thin", type=int)
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("density2d", help="2D linear posterior study")
    common(sp)

    sp = sub.add_parser("denoise", help="sparse denoising with a gamma prior")
    common(sp)
    sp.add_argument("--n", type=int, help="signal dimension")
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--sweep", action="store_const", const=True, default=None,
                    help="acceptance-vs-beta sweep instead of one chain")

    sp = sub.add_parser("deconvolve", help="circle deconvolution with a Bessel-K prior")
    common(sp)
    sp.add_argument("--n", type=int, help="number of wavelet modes")
    sp.add_argument("--lam", type=float)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--sweep", choices=("n_modes", "p", "lam", "eps"))

    sp = sub.add_parser("diagnose", help="diagnostics for a stored chain CSV")
    sp.add_argument("chain", help="path to a chain CSV")
    sp.add_argument("--max-lag", dest="max_lag", type=int, default=200)

    sp = sub.add_parser("verify", help="run the distributional property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--inject-fault", action="store_true",
                    help="corrupt one kernel to prove the balance test fails")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.experiment == "verify":
        return _cmd_verify(args)
    if args.experiment == "diagnose":
        try:
            return _cmd_diagnose(args)
        except (ValueError, OSError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        cfg = resolve_config(args.experiment, args)
    except (ConfigError, ParameterDomainError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = _out_dir(args)
    t0 = time.perf_counter()
    code = {"density2d": _cmd_density2d, "denoise": _cmd_denoise,
            "deconvolve": _cmd_deconvolve}[args.experiment](cfg, out)
    write_manifest(out, cfg, time.perf_counter() - t0, __version__)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

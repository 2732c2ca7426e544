"""Command-line experiment runner.

Subcommands: run, sweep, verify-bounds, lemma-check, presets.  Exit codes:
0 success, 2 configuration error, 3 solver abort, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import ode_lemmas
from .config import ConfigError, ExperimentConfig, apply_entries, load_config
from .io import atomic_write_text, write_records_csv
from .model import NonPositiveHeight
from .presets import PRESETS, get_preset
from .report import format_verify, report_to_json, verify_run
from .runner import RunResult, run_simulation
from .stepper import NonFinite

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4

DEFAULT_THRESHOLD = 1e-3


def _default_jobs() -> int:
    env = os.environ.get("THINFILM_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return max(1, os.cpu_count() or 1)


def _add_config_args(p: argparse.ArgumentParser):
    p.add_argument("--preset", help="start from a named preset (see `presets`)")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config entry (repeatable), e.g. --set model.alpha=0.5",
    )
    p.add_argument("--out-dir", default="out", help="artifact directory (default ./out)")


def _build_config(args) -> ExperimentConfig:
    if args.preset:
        cfg = get_preset(args.preset)
    else:
        cfg = ExperimentConfig()
    if args.config:
        cfg = load_config(args.config, base=cfg)
    entries = {}
    for item in args.overrides:
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(key, "override must look like key=value")
        entries[key.strip()] = val.strip()
    cfg = apply_entries(cfg, entries)
    cfg.validate()
    return cfg


def _dump_last_good(state, grid, out_dir: Path, name: str):
    lines = ["x,u"]
    lines += [f"{repr(float(x))},{repr(float(v))}" for x, v in zip(grid.x, state.u)]
    atomic_write_text(out_dir / f"{name}_lastgood.csv", "\n".join(lines) + "\n")


def _write_run_artifacts(result: RunResult, out_dir: Path) -> dict:
    from .plots import error_decay_svg, film_snapshots_svg

    cfg = result.config
    name = cfg.name
    csv_path = Path(cfg.csv_path) if cfg.csv_path else out_dir / f"{name}.csv"
    svg_base = Path(cfg.svg_path) if cfg.svg_path else out_dir / f"{name}.svg"
    report_base = Path(cfg.report_path) if cfg.report_path else out_dir / f"{name}_verify.txt"

    write_records_csv(result.records, csv_path)
    film_path = svg_base.with_name(svg_base.stem + "_film.svg")
    err_path = svg_base.with_name(svg_base.stem + "_error.svg")
    film_snapshots_svg(result, film_path)
    error_decay_svg(result, err_path)

    report = verify_run(result)
    atomic_write_text(report_base, format_verify(report))
    atomic_write_text(report_base.with_suffix(".json"), report_to_json(report))
    return report


def cmd_run(args) -> int:
    cfg = _build_config(args)
    out_dir = Path(args.out_dir)
    try:
        result = run_simulation(cfg)
    except (NonPositiveHeight, NonFinite) as e:
        print(f"solver abort: {e}", file=sys.stderr)
        state = getattr(e, "last_state", None)
        if state is not None:
            _dump_last_good(state, cfg.build_grid(), out_dir, cfg.name)
            print(f"last good state dumped to {out_dir / (cfg.name + '_lastgood.csv')}",
                  file=sys.stderr)
        return EXIT_SOLVER
    report = _write_run_artifacts(result, out_dir)
    print(format_verify(report), end="")
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    cfg = _build_config(args)
    out_dir = Path(args.out_dir)
    try:
        result = run_simulation(cfg)
    except (NonPositiveHeight, NonFinite) as e:
        print(f"solver abort: {e}", file=sys.stderr)
        return EXIT_SOLVER
    report = _write_run_artifacts(result, out_dir)
    print(format_verify(report), end="")
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def cmd_sweep(args) -> int:
    base = _build_config(args)
    alphas = [float(v) for v in args.alphas.split(",") if v.strip()]
    if not alphas:
        raise ConfigError("--alphas", "need at least one value")
    t_ends = None
    if args.t_ends:
        t_ends = [float(v) for v in args.t_ends.split(",") if v.strip()]
        if len(t_ends) != len(alphas):
            raise ConfigError("--t-ends", "must match --alphas in length")

    cases = []
    for i, alpha in enumerate(alphas):
        updates = {"alpha": alpha, "name": f"{base.name}-alpha-{alpha:g}"}
        if t_ends:
            updates["t_end"] = t_ends[i]
        cases.append(base.with_updates(**updates).validate())

    jobs = args.jobs or _default_jobs()
    with ThreadPoolExecutor(max_workers=min(jobs, len(cases))) as pool:
        results = list(pool.map(run_simulation, cases))

    out_dir = Path(args.out_dir)
    threshold = args.threshold
    rows = ["alpha,t_end,status,t_star,time_to_threshold,h1_final"]
    print(f"{'alpha':>7} {'t_end':>9} {'status':>10} {'t*':>10} {'t(h1<=%g)' % threshold:>14}")
    for res in results:
        write_records_csv(res.records, out_dir / f"{res.config.name}.csv")
        ttt = res.time_to_threshold(threshold)
        t_star = res.t_star
        rows.append(
            f"{res.config.alpha:g},{res.config.t_end:g},{res.status},"
            f"{'' if t_star is None else repr(t_star)},"
            f"{'inf' if math.isinf(ttt) else repr(ttt)},{repr(res.records[-1].h1_error)}"
        )
        print(
            f"{res.config.alpha:>7g} {res.config.t_end:>9g} {res.status:>10} "
            f"{'-' if t_star is None else format(t_star, 'g'):>10} "
            f"{'never' if math.isinf(ttt) else format(ttt, 'g'):>14}"
        )
    atomic_write_text(out_dir / f"{base.name}_sweep.csv", "\n".join(rows) + "\n")

    from .plots import sweep_overlay_svg

    sweep_overlay_svg(results, out_dir / f"{base.name}_sweep.svg")
    return EXIT_OK


def cmd_lemma_check(args) -> int:
    lemmas = ode_lemmas.ALL_LEMMAS if args.lemma == "all" else (args.lemma,)
    failures = 0
    print(f"{'lemma':>9} {'instances':>10} {'violations':>11} {'worst margin':>14}")
    reports = {}
    for lemma in lemmas:
        rep = ode_lemmas.dominance_suite(
            lemma, count=args.count, seed=args.seed, t_end=args.t_end
        )
        status = "pass" if rep.passed else "FAIL"
        print(f"{lemma:>9} {rep.instances:>10} {rep.violations:>11} {rep.worst_margin:>14.3e} {status}")
        reports[lemma] = {
            "instances": rep.instances,
            "violations": rep.violations,
            "worst_margin": rep.worst_margin,
        }
        failures += rep.violations
    if args.out_dir:
        atomic_write_text(
            Path(args.out_dir) / "lemma_check.json",
            json.dumps({"seed": args.seed, "count": args.count, "lemmas": reports}, indent=2)
            + "\n",
        )
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def cmd_presets(args) -> int:
    for name, cfg in PRESETS.items():
        force = cfg.force_kind
        if force == "constant":
            force = f"f0={cfg.force_f0:g}"
        print(
            f"{name:>16}: {cfg.model_kind} alpha={cfg.alpha:g} L={cfg.L:g} N={cfg.cells()} "
            f"force={force} T={cfg.t_end:g}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="thinfilm",
        description="Forced fourth-order thin-film simulator with decay-envelope checks",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="run one experiment and write CSV/SVG/report")
    _add_config_args(pr)
    pr.set_defaults(fn=cmd_run)

    ps = sub.add_parser("sweep", help="run a flow-index sweep and tabulate threshold times")
    _add_config_args(ps)
    ps.add_argument("--alphas", required=True, help="comma list, e.g. 0.5,1.0,1.5")
    ps.add_argument("--t-ends", help="optional comma list of per-case horizons")
    ps.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    ps.add_argument("--jobs", type=int, default=0, help="parallel cases (env THINFILM_JOBS)")
    ps.set_defaults(fn=cmd_sweep)

    pv = sub.add_parser("verify-bounds", help="run and check envelope dominance and mass")
    _add_config_args(pv)
    pv.set_defaults(fn=cmd_verify_bounds)

    pl = sub.add_parser("lemma-check", help="randomized dominance suites for the ODE bounds")
    pl.add_argument("--seed", type=int, default=1)
    pl.add_argument("--count", type=int, default=200)
    pl.add_argument("--lemma", choices=("all",) + ode_lemmas.ALL_LEMMAS, default="all")
    pl.add_argument("--t-end", type=float, default=20.0)
    pl.add_argument("--out-dir", default="", help="optionally write lemma_check.json here")
    pl.set_defaults(fn=cmd_lemma_check)

    pp = sub.add_parser("presets", help="list the shipped experiment presets")
    pp.set_defaults(fn=cmd_presets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, KeyError, FileNotFoundError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Verification reports: envelope dominance, mass identity, window estimate."""

from __future__ import annotations

import json
import math

import numpy as np

from .bounds import dissipation_window_bound
from .diagnostics import dissipation_window
from .forcing import ConstantForce
from .model import Ellis
from .runner import RunResult

ENVELOPE_SLACK = 0.05  # discretization allowance on envelope dominance
MASS_TOL = 1e-8


def _envelope_family(result: RunResult) -> str:
    if isinstance(result.model, Ellis):
        return f"ellis-{result.force.kind}"
    if isinstance(result.force, ConstantForce):
        return "constant-force"
    if result.force.kind == "static":
        return "steady-force"
    return "decaying-force"


def verify_run(result: RunResult) -> dict:
    """Machine-readable verification summary of one run."""
    params = result.params
    verdicts = params.verdicts
    records = result.records
    ts = result.times()

    max_ratio = result.max_envelope_ratio()
    dominated = bool(max_ratio <= 1.0 + ENVELOPE_SLACK) if math.isfinite(max_ratio) else None

    envs = np.array([r.envelope for r in records])
    env_monotone = (
        bool(np.all(np.diff(envs) <= 1e-12 * (1.0 + np.abs(envs[:-1]))))
        if result.envelope_applicable
        else None
    )

    window_checked = 0
    window_violations = 0
    for t in ts:
        if t < 1.0:
            continue
        measured = dissipation_window(records, t)
        bound = dissipation_window_bound(params, records, result.force, t)
        window_checked += 1
        if measured > bound * (1.0 + ENVELOPE_SLACK) + 1e-15:
            window_violations += 1

    mass_defect = result.max_mass_defect()

    report = {
        "name": result.config.name,
        "model": {
            "kind": result.config.model_kind,
            "alpha": result.config.alpha,
            "eps_reg": result.config.eps_reg,
        },
        "force_kind": result.force.kind,
        "grid": {"L": result.config.L, "N": result.grid.N},
        "status": result.status,
        "t_star": result.t_star,
        "hypotheses": {
            "initial_slope": verdicts.initial_slope,
            "force_gradient": verdicts.force_gradient,
            "u0_amplitude_ok": verdicts.u0_amplitude_ok,
            "force_amplitude_ok": verdicts.force_amplitude_ok,
            "all_ok": verdicts.all_ok,
        },
        "constants": {
            "m": params.m,
            "m1": params.m1,
            "m2": params.m2,
            "c6": params.c6,
            "h": params.h,
            "m0": params.m0,
            "u0_grad_l2": params.u0_grad,
        },
        "envelope": {
            "family": _envelope_family(result),
            "applicable": result.envelope_applicable,
            "slack": ENVELOPE_SLACK,
            "max_h1_over_envelope": max_ratio,
            "dominated": dominated,
            "non_increasing": env_monotone,
        },
        "dissipation_window": {
            "soft": True,
            "cutoff_constant": 8.0,
            "checked_times": window_checked,
            "violations": window_violations,
        },
        "mass": {"max_relative_defect": mass_defect, "ok": bool(mass_defect <= MASS_TOL)},
    }
    report["passed"] = bool(report["mass"]["ok"] and (dominated is None or dominated))
    return report


def format_verify(report: dict) -> str:
    """Human-readable rendering of a verify_run report."""
    lines = []
    name = report["name"]
    model = report["model"]
    lines.append(f"verification report: {name}")
    lines.append(
        f"  model {model['kind']} alpha={model['alpha']:g} eps_reg={model['eps_reg']:g}; "
        f"force {report['force_kind']}; grid L={report['grid']['L']:g} N={report['grid']['N']}"
    )
    status = report["status"]
    if report["t_star"] is not None:
        status += f" (coincidence at t* = {report['t_star']:g})"
    lines.append(f"  status: {status}")
    hyp = report["hypotheses"]
    lines.append(
        "  hypotheses: initial-slope {} | force-gradient {} | amplitude(u0) {} | amplitude(f) {}".format(
            *(("ok" if hyp[k] else "VIOLATED") for k in (
                "initial_slope",
                "force_gradient",
                "u0_amplitude_ok",
                "force_amplitude_ok",
            ))
        )
    )
    cst = report["constants"]
    lines.append(
        "  constants: m={m:.6g} m1={m1:.6g} m2={m2:.6g} h={h:.6g} M0={m0:.6g}".format(**cst)
    )
    env = report["envelope"]
    if env["applicable"]:
        lines.append(
            f"  envelope [{env['family']}]: max h1/envelope = {env['max_h1_over_envelope']:.4g} "
            f"-> {'dominated' if env['dominated'] else 'VIOLATED'} (slack {env['slack']:.0%})"
        )
    else:
        lines.append(f"  envelope [{env['family']}]: not applicable (hypotheses unmet)")
    win = report["dissipation_window"]
    lines.append(
        f"  dissipation window (soft, C={win['cutoff_constant']:g}): "
        f"{win['violations']} violation(s) over {win['checked_times']} time(s)"
    )
    mass = report["mass"]
    lines.append(
        f"  mass identity: max defect {mass['max_relative_defect']:.3e} "
        f"-> {'ok' if mass['ok'] else 'VIOLATED'}"
    )
    lines.append(f"  overall: {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def report_to_json(report: dict) -> str:
    def clean(obj):
        if isinstance(obj, float) and not math.isfinite(obj):
            return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return obj

    return json.dumps(clean(report), indent=2, sort_keys=True) + "\n"

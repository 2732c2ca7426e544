"""SVG emission for runs and sweeps (self-contained, deterministic output)."""

from __future__ import annotations

import io as _io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import atomic_write_bytes
from .runner import RunResult

# fixed hash salt and no date metadata keep the SVG byte-stable across reruns
matplotlib.rcParams["svg.hashsalt"] = "thinfilm"
_SVG_KW = {"format": "svg", "metadata": {"Date": None}}


def _save(fig, path: str | Path) -> Path:
    buf = _io.BytesIO()
    fig.savefig(buf, **_SVG_KW)
    plt.close(fig)
    return atomic_write_bytes(path, buf.getvalue())


def film_snapshots_svg(result: RunResult, path: str | Path) -> Path:
    """Film height profiles at a handful of spread-out times."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for state in result.snapshots:
        ax.plot(result.grid.x, state.u, lw=1.2, label=f"t = {state.t:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("film height u")
    ax.set_title(f"{result.config.name}: film thickness evolution")
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    return _save(fig, path)


def error_decay_svg(result: RunResult, path: str | Path) -> Path:
    """H1 error against the moving reference, with the envelope overlay.

    Log ordinate always; log abscissa for shear-thinning power-law runs,
    whose envelopes decay polynomially.
    """
    ts = result.times()
    h1 = result.h1_errors()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    pos = h1 > 0
    ax.plot(ts[pos], h1[pos], lw=1.4, label="H1 error")
    if result.envelope_applicable:
        envs = np.array([r.envelope for r in result.records])
        keep = np.isfinite(envs) & (envs > 0)
        ax.plot(ts[keep], envs[keep], lw=1.1, ls="--", label="envelope")
    ax.set_yscale("log")
    if result.config.model_kind == "power-law" and result.config.alpha > 1:
        ax.set_xscale("symlog", linthresh=max(result.config.record_every, 1e-6))
    ax.set_xlabel("t")
    ax.set_ylabel("H1 distance to reference")
    ax.set_title(f"{result.config.name}: error decay")
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    return _save(fig, path)


def sweep_overlay_svg(results: list[RunResult], path: str | Path) -> Path:
    """Overlayed H1 error decay for a flow-index sweep."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for res in results:
        ts = res.times()
        h1 = res.h1_errors()
        pos = h1 > 0
        ax.plot(ts[pos], h1[pos], lw=1.3, label=f"alpha = {res.config.alpha:g}")
    ax.set_yscale("log")
    ax.set_xscale("symlog", linthresh=1.0)
    ax.set_xlabel("t")
    ax.set_ylabel("H1 distance to reference")
    ax.set_title("flow-index sweep: error decay")
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    return _save(fig, path)

"""The ODE comparison toolbox behind the film envelopes, on its own.

The decay envelopes all reduce to scalar differential inequalities.  This
demo integrates the matching equality ODEs with the RK4 oracle and overlays
the closed-form bounds: the upper bound with its forcing window, the
unforced lower solution, and the relaxation bound toward a positive
equilibrium.  A small randomized dominance suite closes the loop.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from thinfilm import DecayForcing, OdeInstance, dominance_suite, ode_oracle
from thinfilm.ode_lemmas import bound_inequ, bound_y1, lower_bound_lem01

OUT = Path(__file__).resolve().parent / "output"


def main():
    ts = np.linspace(0.0, 12.0, 401)

    decay = OdeInstance(beta=1.0, lambda_exp=0.6, k0=2.0,
                        forcing=DecayForcing(0.8, "exp", 1.0))
    path = ode_oracle(decay, "y1", ts)
    upper = np.array([bound_y1(decay, t) for t in ts])
    lower = np.array([lower_bound_lem01(decay, 0.0, decay.k0, t) for t in ts])

    relax = OdeInstance(beta=-1.0, lambda_exp=0.0, p_exp=2.0, alpha_coef=1.0, k0=3.0)
    relax_path = ode_oracle(relax, "inequ", ts)
    relax_bound = np.array([bound_inequ(relax, t) for t in ts])

    print("sandwich for the forced decay inequality k' + k^0.6 <= 0.8 e^{-t}:")
    print(f"  lower <= oracle <= upper everywhere: "
          f"{bool(np.all(lower <= path * (1 + 1e-9)) and np.all(path <= upper * (1 + 1e-9)))}")
    print("relaxation toward the equilibrium (alpha/-beta)^(1/(p-lambda)) = 1:")
    print(f"  oracle(12) = {relax_path[-1]:.6f}, bound(12) = {relax_bound[-1]:.6f}")

    fig, axes = plt.subplots(1, 2, figsize=(9.5, 3.8))
    axes[0].plot(ts, path, label="oracle (equality ODE)")
    axes[0].plot(ts, upper, "--", label="upper bound")
    axes[0].plot(ts, lower, ":", label="unforced lower solution")
    axes[0].set_title("forced decay, sandwich")
    axes[0].set_xlabel("t")
    axes[0].legend(fontsize=8)
    axes[1].plot(ts, relax_path, label="oracle")
    axes[1].plot(ts, relax_bound, "--", label="relaxation bound")
    axes[1].axhline(1.0, color="gray", lw=0.8)
    axes[1].set_title("relaxation to equilibrium")
    axes[1].set_xlabel("t")
    axes[1].legend(fontsize=8)
    fig.tight_layout()
    OUT.mkdir(exist_ok=True)
    out = OUT / "05_ode_bounds.svg"
    fig.savefig(out)
    print(f"  wrote {out}")

    print("randomized dominance suites (40 instances each):")
    for lemma in ("y1", "lem01", "inequ", "inequ11"):
        rep = dominance_suite(lemma, count=40, seed=11)
        print(f"  {lemma:>8}: violations = {rep.violations}, worst margin = {rep.worst_margin:.2e}")


if __name__ == "__main__":
    main()

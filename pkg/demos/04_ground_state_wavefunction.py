#!/usr/bin/env python3
"""Closed-form ground-state wavefunction against the numeric eigenvector.

The analytic ground state e^(-(A+B)x) * (1 - q e^(-alpha x))^(-A/alpha)
must vanish both toward the pole (because A < 0) and at infinity (because
A + B > 0), and after normalization it should lie on top of the
inverse-iteration eigenvector of the discretized problem.
"""

import math

import numpy as np

import huabound as hb


def main():
    p = hb.HuaParameters(V0=15.0, b_h=1.61890, r_e=1.0, q=0.5)
    pek = hb.pekeris_coefficients(p)
    eff = hb.effective_coefficients(p, 0, pek)
    state = hb.superpotential_params(eff)
    print(f"superpotential amplitude A = {state.A:.6f} (< 0: vanishes at the pole)")
    print(f"offset                   B = {state.B:.6f}")
    print(f"A + B = {state.A + state.B:.6f} (> 0: decays at infinity)")

    numeric = hb.solve_bound_states(
        p, 0, "pekeris", hb.GridConfig(n_points=8000), want_vectors=True
    )
    r = numeric.r
    x = (r - p.r_e) / p.r_e
    closed = hb.ground_state_wavefunction(x, state, p.q)
    closed /= math.sqrt(np.trapezoid(closed**2, r))
    vec = numeric.vectors[:, 0]
    print(f"max |closed - numeric| after normalization: "
          f"{np.max(np.abs(closed - vec)):.2e}")
    print(f"ground energy: closed {hb.energy_level(hb.QuantumNumbers(0, 0), p, pek).energy:.10f}"
          f" vs numeric {numeric.energies[0]:.10f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping the figure")
        return

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(r, closed, lw=2.5, alpha=0.6, label="closed form")
    ax.plot(r, vec, "k--", lw=1.0, label="inverse iteration")
    ax.set_xlim(r[0], 8.0)
    ax.set_xlabel("r")
    ax.set_ylabel("R(r), normalized")
    ax.set_title("Ground-state wavefunction, both routes")
    ax.legend()
    fig.tight_layout()
    import os

    os.makedirs("demos/output", exist_ok=True)
    out = "demos/output/ground_state.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

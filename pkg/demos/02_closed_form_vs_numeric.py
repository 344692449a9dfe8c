#!/usr/bin/env python3
"""Closed-form spectrum against the independent finite-difference solver.

Every bound level of the reference setup (V0 = 15, b_h = 1.61890, r_e = 1,
q = 0.5) is computed three ways: the algebraic closed form, the eigensolver
on the same replaced-centrifugal equation (these two must agree to ~1e-7),
and the eigensolver on the exact 1/r^2 equation, whose offset from the
second column is the physical cost of the centrifugal replacement.
"""

import huabound as hb

CONFIG = hb.GridConfig(n_points=16000, tail_scale=120.0, wall_factor=1e8)


def main():
    p = hb.HuaParameters(V0=15.0, b_h=1.61890, r_e=1.0, q=0.5, D=3)
    pek = hb.pekeris_coefficients(p)

    print(f"{'l':>2} {'n_r':>3} {'E closed':>18} {'E numeric (repl.)':>18} "
          f"{'rel diff':>10} {'E numeric (exact)':>18} {'repl. error':>12}")
    for l in range(3):
        replaced = hb.solve_bound_states(p, l, "pekeris", CONFIG)
        exact = hb.solve_bound_states(p, l, "exact", CONFIG)
        for n_r in range(hb.count_bound_states(l, p, pek)):
            e_closed = hb.energy_level(hb.QuantumNumbers(n_r, l), p, pek).energy
            e_repl = replaced.energies[n_r]
            rel = abs(e_closed - e_repl) / abs(e_repl)
            if n_r < len(exact.energies):
                e_exact = exact.energies[n_r]
                tail = f"{e_exact:>18.12f} {e_exact - e_repl:>12.3e}"
            else:
                tail = f"{'(above threshold)':>18} {'':>12}"
            print(f"{l:>2} {n_r:>3} {e_closed:>18.12f} {e_repl:>18.12f} "
                  f"{rel:>10.2e} {tail}")

    print()
    print("replaced-centrifugal continuum thresholds (V0 plus the constant")
    print("the replacement leaves behind at infinity):")
    for l in range(3):
        print(f"  l = {l}: {hb.continuum_threshold(p, l, 'pekeris'):.6f}"
              f"  (exact mode: {hb.continuum_threshold(p, l, 'exact'):.6f})")
    print()
    print("for l = 0 the two modes coincide (no centrifugal term in 3D);")
    print("for l > 0 the replacement error is ~1e-2 here, orders of magnitude")
    print("above the 1e-7 closed-form vs solver agreement, so the solver")
    print("cleanly separates the two effects.")


if __name__ == "__main__":
    main()

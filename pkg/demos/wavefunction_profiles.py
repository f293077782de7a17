"""
Bound-state and zero-energy wavefunctions
=========================================
"""

import math

import numpy as np

from invsq import (
    Cutoff,
    Extension,
    Scheme,
    bound_state_wave,
    coupling_from_nu,
    eval_wave,
    interior_mass_fraction,
    normalize,
    sample_wave,
    solve_bound_state_exact,
    zero_energy_wave,
)


def main():
    ext = Extension(c=0.7)
    coupling = coupling_from_nu(0.4)
    cut = Cutoff.from_radius(0.2, ext)

    # solve, build the piecewise wave, unit-normalize it
    state = solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut)
    wave = normalize(bound_state_wave(Scheme.DELTA_SHELL, coupling, ext, cut, state.k))
    print(f"nu=0.4, c=0.7, R/r0=0.2: k = {state.k:.12f}, E = {state.E:.12f}")

    rs = np.array([0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0])
    us = sample_wave(wave, rs)
    print(f"{'r':>6}  {'u(r)':>14}")
    for r, u in zip(rs, us):
        tag = "  <- shell radius" if r == cut.R else ""
        print(f"{r:>6.2f}  {u:>14.9f}{tag}")

    # the interior and exterior branches meet at the shell; only the
    # slope jumps (by -lam/R times the value, the delta-shell rule)
    inside = eval_wave(wave, cut.R * (1 - 1e-10))
    outside = eval_wave(wave, cut.R * (1 + 1e-10))
    print(f"\nvalue across the shell: {inside:.12f} vs {outside:.12f}")

    # probability trapped inside the regulator dies as R^(2 - 2 nu)
    print("\ninterior mass fraction, nu=0.4 (rate 2 - 2 nu = 1.2):")
    prev = None
    for ratio in (1e-1, 1e-2, 1e-3, 1e-4):
        cut_i = Cutoff.from_radius(ratio, ext)
        st = solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut_i)
        w = bound_state_wave(Scheme.DELTA_SHELL, coupling, ext, cut_i, st.k)
        frac = interior_mass_fraction(w)
        slope = "" if prev is None else f"  slope {math.log10(prev / frac):.3f}"
        print(f"  R/r0={ratio:.0e}: {frac:.6e}{slope}")
        prev = frac

    # zero-energy exterior solution t^(1/2+nu) - c t^(1/2-nu): one node
    # at t = c^(1/(2 nu)), the radius that encodes the extension choice
    zw = zero_energy_wave(coupling, ext)
    t_node = ext.c ** (1.0 / (2.0 * coupling.nu))
    print(f"\nzero-energy node predicted at r/r0 = {t_node:.9f}")
    for t in (0.9 * t_node, t_node, 1.1 * t_node):
        print(f"  u({t:.6f} r0) = {eval_wave(zw, t * ext.r0):+.9f}")


if __name__ == "__main__":
    main()

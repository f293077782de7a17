"""
Scheme independence of the shallow state
========================================

Two unrelated regulators, tuned through the same extension point
(c, r0), must agree on the physical momentum once the cutoff is gone.
This script watches the square-well and delta-shell roots collapse onto
each other, then visits the nu = 0 log regime where both settle on
2 e^(-gamma) e^(1/c) / r0, a constant 12.29% away from the bare
e^(1/c) / r0 estimate.
"""

import math

from invsq import (
    Cutoff,
    Extension,
    Scheme,
    closed_form_k,
    coupling_from_nu,
    solve_bound_state_exact,
)

EULER_GAMMA = 0.5772156649015329


def main():
    ext = Extension(c=1.0)
    coupling = coupling_from_nu(0.4)
    k0 = closed_form_k(coupling, ext).k
    print(f"nu=0.4, c=1: closed-form k = {k0:.12f}")
    print(f"{'R/r0':>10}  {'k square-well':>16}  {'k delta-shell':>16}  {'|sw-ds|/k':>10}")
    for ratio in (1e-2, 1e-3, 1e-4, 1e-5):
        cut = Cutoff.from_radius(ratio, ext)
        k_sw = solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut).k
        k_ds = solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut).k
        print(
            f"{ratio:>10.0e}  {k_sw:>16.12f}  {k_ds:>16.12f}"
            f"  {abs(k_sw - k_ds) / k0:>10.2e}"
        )

    # nu = 0: the fixed ratio k / (e^(1/c)/r0) converges to 2 e^(-gamma)
    # = 1.1229..., not to 1; the log regime keeps a finite constant that
    # the power-law closed form cannot see
    print("\nnu=0, c=1: k r0 in units of e^(1/c)")
    naive = math.exp(1.0)
    true_const = 2.0 * math.exp(-EULER_GAMMA)
    coupling = coupling_from_nu(0.0)
    for ratio in (1e-4, 1e-6, 1e-8):
        cut = Cutoff.from_radius(ratio, ext)
        k_sw = solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut).k
        k_ds = solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut).k
        print(
            f"  R/r0={ratio:.0e}: sw {k_sw / naive:.9f}  ds {k_ds / naive:.9f}"
            f"  (limit 2e^-gamma = {true_const:.9f})"
        )


if __name__ == "__main__":
    main()

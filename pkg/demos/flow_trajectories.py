"""
Running coupling trajectories
=============================

Follow the regulator strength lambda(R) for both schemes as the cutoff
radius moves, and visit the delta-shell pole where the matching
denominator vanishes.
"""

import numpy as np

from invsq import (
    Cutoff,
    Extension,
    FlowPole,
    Scheme,
    coupling_from_nu,
    critical_ratio,
    flow_trajectory,
)


def show(scheme, coupling, ext, ratios):
    cutoffs = [Cutoff.from_radius(r, ext) for r in ratios]
    print(f"\n{scheme.value}, nu={coupling.nu}, c={ext.c}")
    print(f"{'R/r0':>12}  {'lambda':>20}  branch")
    for point in flow_trajectory(scheme, coupling, ext, cutoffs):
        if isinstance(point, FlowPole):
            print(f"{point.cutoff.ratio:>12.4e}  {'POLE':>20}  {point.message}")
            continue
        branch = "" if point.branch_index is None else str(point.branch_index)
        print(f"{point.cutoff.ratio:>12.4e}  {point.lam:>20.12f}  {branch}")


def main():
    ext = Extension(c=1.0)
    half = coupling_from_nu(0.5)

    # toward removal: the square well climbs to (pi/2)^2, the shell to
    # nu + 1/2 (trajectories want increasing R, so read bottom-up)
    ratios = list(np.logspace(-6, -1, 6))
    show(Scheme.SQUARE_WELL, half, ext, ratios)
    show(Scheme.DELTA_SHELL, half, ext, ratios)

    # away from removal the delta-shell strength blows up at
    # (R/r0)^(2 nu) = c; the trajectory reports the pole in-band and
    # keeps going on the far side
    r_star = critical_ratio(half, ext)
    print(f"\ndelta-shell pole predicted at R/r0 = {r_star}")
    show(Scheme.DELTA_SHELL, half, ext, [0.5, r_star, 2.0])

    # log-regime endpoint nu = 0: no pole for c > 0, lambda creeps up
    # like 1/ln
    show(Scheme.DELTA_SHELL, coupling_from_nu(0.0), ext, ratios)


if __name__ == "__main__":
    main()

"""Counterterm trajectories lambda(R) for both regulator schemes.

The square-well strength solves the transcendental condition

    sqrt(lam) cot sqrt(lam) = [(1/2 + nu) x - c (1/2 - nu)] / (x - c),
    x = (R/r0)^(2 nu),

(for nu = 0 the right side is 1/2 + c/(1 + c ln(R/r0))), while the
delta-shell strength is that same algebra solved explicitly,

    lam(R) = [(1/2 - nu) x - c (1/2 + nu)] / (x - c),

(nu = 0: 1/2 - c/(1 + c ln(R/r0))). Both right sides share one
denominator, whose zero is the cutoff at which the zero-energy exterior
solution has a node exactly at R; that cutoff is reported as a
structured FlowPoleError rather than skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import FlowPoleError
from .model import Coupling, Cutoff, Extension, Scheme

# treat the flow denominator as singular below this magnitude
_POLE_EPS = 1e-300

# solver budget per the module contract: 1e-13 on lambda, 200 iterations
_BRENT_MAXITER = 200


@dataclass(frozen=True)
class FlowPoint:
    """One (cutoff, lambda) sample of a trajectory.

    branch_index is populated for the square well only: 0 means the
    principal branch lam in (0, pi^2), 1 the next branch (pi^2, 4 pi^2).
    The delta-shell strength is closed-form and carries None.
    """

    cutoff: Cutoff
    lam: float
    branch_index: int | None = None


@dataclass(frozen=True)
class FlowPole:
    """In-band record for a trajectory point that sits on the flow pole."""

    cutoff: Cutoff
    critical_ratio: float | None
    message: str


def critical_ratio(coupling: Coupling, ext: Extension) -> float | None:
    """R/r0 at which the flow denominator vanishes, or None if it never
    does for these parameters.

    May overflow to inf when the formal pole lies outside the double
    range (tiny nu with c > 1, or nu = 0 with tiny negative c).
    """
    if coupling.nu > 0.0:
        if ext.c <= 0.0:
            return None
        try:
            return math.exp(math.log(ext.c) / (2.0 * coupling.nu))
        except OverflowError:
            return math.inf
    if ext.c == 0.0:
        return None
    try:
        return math.exp(-1.0 / ext.c)
    except OverflowError:
        return math.inf


def _rhs(coupling: Coupling, ext: Extension, cutoff: Cutoff) -> float:
    nu, c = coupling.nu, ext.c
    if nu == 0.0:
        den = 1.0 + c * math.log(cutoff.ratio)
        if abs(den) <= _POLE_EPS:
            raise FlowPoleError(
                f"flow pole at R/r0 = {cutoff.ratio} (1 + c ln(R/r0) = 0)",
                critical_ratio(coupling, ext),
            )
        return 0.5 + c / den
    x = cutoff.ratio ** (2.0 * nu)
    den = x - c
    if abs(den) <= _POLE_EPS:
        raise FlowPoleError(
            f"flow pole at R/r0 = {cutoff.ratio} ((R/r0)^(2nu) = c)",
            critical_ratio(coupling, ext),
        )
    return ((0.5 + nu) * x - c * (0.5 - nu)) / den


def flow_rhs_square_well(coupling: Coupling, ext: Extension, cutoff: Cutoff) -> float:
    """Right-hand side that sqrt(lam) cot sqrt(lam) must equal.

    This is also the zero-energy exterior log-derivative r u0'/u0 at
    R+, which is why the delta-shell closed form below reproduces it as
    1 - lam exactly.

    Raises
    ------
    FlowPoleError
        If the denominator vanishes (to within 1e-300).
    """
    return _rhs(coupling, ext, cutoff)


def _sc(s: float) -> float:
    # s cot s without the removable 0/0 at s -> 0
    return s * math.cos(s) / math.sin(s)


def _sc_deriv(s: float) -> float:
    sin = math.sin(s)
    return math.cos(s) / sin - s / (sin * sin)


def flow_square_well(coupling: Coupling, ext: Extension, cutoff: Cutoff) -> FlowPoint:
    """Smallest lam > 0 with sqrt(lam) cot sqrt(lam) = RHS.

    s cot s maps (0, pi) onto (-inf, 1), so RHS < 1 lands on the
    principal branch (index 0) and RHS >= 1 on s in (pi, 2 pi)
    (index 1). Bracketed Brent refinement, then a guarded Newton polish
    to push the residual to the floating-point floor.
    """
    rhs = _rhs(coupling, ext, cutoff)
    if rhs < 1.0:
        # f(0+) = 1 - RHS > 0 and f(pi-) -> -inf
        lo = 1e-9
        hi = math.pi - min(0.1, math.pi / (2.0 * (abs(rhs) + 2.0)))
        branch = 0
    else:
        # f(pi+) -> +inf and f(2 pi-) -> -inf
        lo = math.pi + min(0.1, math.pi / (2.0 * (rhs + 2.0)))
        hi = 2.0 * math.pi - min(0.1, math.pi / (rhs + 2.0))
        branch = 1
    f = lambda s: _sc(s) - rhs
    s = brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=_BRENT_MAXITER)
    for _ in range(2):
        step = f(s) / _sc_deriv(s)
        if not math.isfinite(step) or not (lo <= s - step <= hi):
            break
        s -= step
    return FlowPoint(cutoff=cutoff, lam=s * s, branch_index=branch)


def flow_delta_shell(coupling: Coupling, ext: Extension, cutoff: Cutoff) -> FlowPoint:
    """Closed-form delta-shell strength lam(R); no root finding.

    Negative values are legal output (repulsive shell) and returned
    as-is; the CLI labels the sign rather than clamping.
    """
    nu, c = coupling.nu, ext.c
    if nu == 0.0:
        den = 1.0 + c * math.log(cutoff.ratio)
        if abs(den) <= _POLE_EPS:
            raise FlowPoleError(
                f"flow pole at R/r0 = {cutoff.ratio} (1 + c ln(R/r0) = 0)",
                critical_ratio(coupling, ext),
            )
        lam = 0.5 - c / den
    else:
        x = cutoff.ratio ** (2.0 * nu)
        den = x - c
        if abs(den) <= _POLE_EPS:
            raise FlowPoleError(
                f"flow pole at R/r0 = {cutoff.ratio} ((R/r0)^(2nu) = c)",
                critical_ratio(coupling, ext),
            )
        lam = ((0.5 - nu) * x - c * (0.5 + nu)) / den
    return FlowPoint(cutoff=cutoff, lam=lam, branch_index=None)


def flow_at(scheme: Scheme, coupling: Coupling, ext: Extension, cutoff: Cutoff) -> FlowPoint:
    """Scheme-dispatched single flow evaluation."""
    if scheme is Scheme.SQUARE_WELL:
        return flow_square_well(coupling, ext, cutoff)
    return flow_delta_shell(coupling, ext, cutoff)


def flow_trajectory(
    scheme: Scheme,
    coupling: Coupling,
    ext: Extension,
    cutoffs: list[Cutoff],
) -> list[FlowPoint | FlowPole]:
    """Map the flow over a strictly increasing cutoff grid.

    Pole hits are reported in-band as FlowPole records in their grid
    position; they never abort the remaining points.
    """
    if not cutoffs:
        raise ValueError("cutoff grid must be nonempty")
    radii = [cut.R for cut in cutoffs]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("cutoff grid must be strictly increasing in R")
    out: list[FlowPoint | FlowPole] = []
    for cut in cutoffs:
        try:
            out.append(flow_at(scheme, coupling, ext, cut))
        except FlowPoleError as err:
            out.append(FlowPole(cutoff=cut, critical_ratio=err.critical_ratio, message=str(err)))
    return out

"""Independent check of the matching solvers by direct ODE integration.

The radial problem spans many decades in r once the cutoff is small
(R/r0 down to 1e-6 with structure out to r ~ 25/k), so a uniform mesh
in r is hopeless. Instead the equation is integrated on a uniform mesh
in x = ln r. Substituting u(r) = e^{x/2} w(x) removes the first
derivative and leaves Numerov form,

    w'' = F(x) w,    F(x) = 1/4 + e^{2x} (V(e^x) - E),

so the exterior has F = 1/4 + g - E e^{2x} and each interior region is
F = 1/4 + q e^{2x} with constant q. The mesh places r = R exactly on a
node; the delta-shell derivative jump u'(R+) = u'(R-) - (lam/R) u(R)
becomes exactly w_x(X+) = w_x(X-) - lam w(X) at X = ln R.

Order bookkeeping: Numerov is O(h^4) per region; the junction uses a
five-point one-sided derivative and a fourth-order Taylor restart so
the crossing does not degrade the global order.

Everything here deliberately avoids the Bessel/matching machinery: the
only ingredient shared with the exact solvers is lam(R) itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy.optimize import brentq

from .errors import IntegrationError, RootMultiplicityError
from .flow import flow_at
from .model import Coupling, Cutoff, Extension, Scheme
from .spectrum import BoundState, Method, closed_form_k

DEFAULT_N_STEPS = 20_000
_MIN_N_STEPS = 10_000
_RMIN_FRACTION = 1e-3
_RMAX_TIMES_INVK = 25.0
_TRUSTED_EFOLDS = 12.5
_N_SUBDIVISIONS = 64
_MAX_DOUBLINGS = 2
_RESCALE_LIMIT = 1e250
_NODE_FLOOR = 1e-6

# shooting window when no closed-form momentum exists (c <= 0 probes)
_SHALLOW_KMIN_OVER_R0 = 1e-4
_SHALLOW_KMAX_TIMES_R = 0.1


@dataclass(frozen=True)
class GridSpec:
    """Two uniform log-mesh regions meeting exactly at r = R."""

    r_min: float
    r_max: float
    R: float
    n_in: int
    n_out: int

    def __post_init__(self):
        if not 0.0 < self.r_min < self.R < self.r_max:
            raise ValueError("grid needs 0 < r_min < R < r_max")
        if self.n_in < 8 or self.n_out < 8:
            raise ValueError("each mesh region needs at least 8 steps")

    @property
    def h_in(self) -> float:
        return math.log(self.R / self.r_min) / self.n_in

    @property
    def h_out(self) -> float:
        return math.log(self.r_max / self.R) / self.n_out

    def x_in(self) -> np.ndarray:
        return np.linspace(math.log(self.r_min), math.log(self.R), self.n_in + 1)

    def x_out(self) -> np.ndarray:
        return np.linspace(math.log(self.R), math.log(self.r_max), self.n_out + 1)

    def doubled(self) -> "GridSpec":
        """Same resolution class with twice the outer radius."""
        return GridSpec(self.r_min, 2.0 * self.r_max, self.R, self.n_in, 2 * self.n_out)


def default_grid(cutoff: Cutoff, k_estimate: float, n_steps: int = DEFAULT_N_STEPS) -> GridSpec:
    """Mesh reaching from R/1000 to max(25/k, 4R), split in proportion
    to the log extent of each region."""
    if not (math.isfinite(k_estimate) and k_estimate > 0.0):
        raise ValueError("k_estimate must be positive")
    if n_steps < _MIN_N_STEPS:
        raise ValueError(f"n_steps={n_steps} below the floor {_MIN_N_STEPS}")
    r_min = cutoff.R * _RMIN_FRACTION
    r_max = max(_RMAX_TIMES_INVK / k_estimate, 4.0 * cutoff.R)
    L_in = math.log(cutoff.R / r_min)
    L_out = math.log(r_max / cutoff.R)
    n_in = int(round(n_steps * L_in / (L_in + L_out)))
    n_in = min(max(n_in, 1000), n_steps - 1000)
    return GridSpec(r_min, r_max, cutoff.R, n_in, n_steps - n_in)


@dataclass(frozen=True)
class RadialSolution:
    """Integrated reduced wavefunction u on the concatenated mesh.

    The overall scale is the series normalization u ~ r near the
    origin, up to harmless power-of-1e250 rescales on blowing-up
    off-eigenvalue shots. boundary_index points at r = R.
    """

    r: np.ndarray
    u: np.ndarray
    E: float
    node_count: int
    boundary_index: int


@numba.njit(cache=True)
def _numerov_region(e2x, A, B, w0, w1, h):
    """March w'' = (A + B e^{2x}) w across one uniform region.

    Returns (w, rescales, ok); every rescale multiplied the whole
    history by 1e-250 to dodge overflow on far-off-eigenvalue shots.
    """
    n = e2x.shape[0]
    w = np.empty(n)
    w[0] = w0
    w[1] = w1
    c = h * h / 12.0
    rescales = 0
    Fm = A + B * e2x[0]
    F0 = A + B * e2x[1]
    for i in range(1, n - 1):
        Fp = A + B * e2x[i + 1]
        num = (2.0 + 10.0 * c * F0) * w[i] - (1.0 - c * Fm) * w[i - 1]
        den = 1.0 - c * Fp
        wn = num / den
        if not math.isfinite(wn):
            return w, rescales, False
        if abs(wn) > _RESCALE_LIMIT:
            for j in range(i + 1):
                w[j] *= 1e-250
            wn *= 1e-250
            rescales += 1
        w[i + 1] = wn
        Fm = F0
        F0 = Fp
    return w, rescales, True


def _series_u(r: float, q: float) -> tuple[float, float]:
    """Small-r series of u'' = q u with u ~ r: (u, u')."""
    qr2 = q * r * r
    u = r * (1.0 + qr2 * (1.0 / 6.0 + qr2 * (1.0 / 120.0 + qr2 / 5040.0)))
    du = 1.0 + qr2 * (0.5 + qr2 * (1.0 / 24.0 + qr2 / 720.0))
    return u, du


def _end_derivative(w: np.ndarray, h: float) -> float:
    """Five-point one-sided O(h^4) derivative at the last node."""
    return (25.0 * w[-1] - 48.0 * w[-2] + 36.0 * w[-3] - 16.0 * w[-4] + 3.0 * w[-5]) / (12.0 * h)


def _count_nodes(w: np.ndarray) -> int:
    """Sign changes of w, ignoring samples below 1e-6 of the peak.

    The floor drops grid-point near-zeros and the shooting endpoint
    itself (driven to ~0 at a converged eigenvalue); genuine crossings
    have neighbors at ~stepsize * peak, far above it."""
    peak = float(np.max(np.abs(w)))
    if peak == 0.0:
        return 0
    kept = w[np.abs(w) > _NODE_FLOOR * peak]
    if kept.size < 2:
        return 0
    s = np.sign(kept)
    return int(np.count_nonzero(s[:-1] * s[1:] < 0.0))


def integrate_radial(
    scheme: Scheme,
    coupling: Coupling,
    lam: float,
    cutoff: Cutoff,
    E: float,
    grid: GridSpec,
) -> RadialSolution:
    """Outward integration at fixed E < 0 with the regulated potential.

    Starts from the power series at r_min, crosses r = R with the
    scheme's junction rule, and marches to r_max. At the true
    eigenvalue the endpoint is exponentially small; elsewhere it blows
    up with a sign telling which side of the eigenvalue E sits on.
    """
    if not (math.isfinite(E) and E < 0.0):
        raise ValueError("oracle integration needs E < 0")
    if not math.isclose(grid.R, cutoff.R, rel_tol=1e-12):
        raise ValueError("grid was built for a different cutoff radius")
    if scheme is Scheme.SQUARE_WELL:
        q_in = -lam / (cutoff.R * cutoff.R) - E
    else:
        q_in = -E
    x_in = grid.x_in()
    x_out = grid.x_out()
    r_in = np.exp(x_in)
    r_out = np.exp(x_out)

    u0, _ = _series_u(float(r_in[0]), q_in)
    u1, _ = _series_u(float(r_in[1]), q_in)
    w_in, res_in, ok = _numerov_region(
        np.exp(2.0 * x_in), 0.25, q_in, u0 / math.sqrt(r_in[0]), u1 / math.sqrt(r_in[1]), grid.h_in
    )
    if not ok:
        raise IntegrationError("interior integration produced non-finite values")

    wX = float(w_in[-1])
    wx = _end_derivative(w_in, grid.h_in)
    if scheme is Scheme.DELTA_SHELL:
        wx -= lam * wX

    # fourth-order Taylor restart with the exterior F on the first
    # outward step (F, and hence w'', is discontinuous at X)
    A = 0.25 + coupling.g
    B = -E
    e2X = float(r_out[0]) ** 2
    F0 = A + B * e2X
    F1 = 2.0 * B * e2X
    F2 = 4.0 * B * e2X
    h = grid.h_out
    w1 = (
        wX
        + h * wx
        + (h * h / 2.0) * F0 * wX
        + (h ** 3 / 6.0) * (F1 * wX + F0 * wx)
        + (h ** 4 / 24.0) * (F2 * wX + 2.0 * F1 * wx + F0 * F0 * wX)
    )
    w_out, res_out, ok = _numerov_region(np.exp(2.0 * x_out), A, B, wX, w1, h)
    if not ok:
        raise IntegrationError("exterior integration produced non-finite values")
    if res_out:
        w_in = w_in * (1e-250 ** res_out)

    r = np.concatenate([r_in, r_out[1:]])
    w = np.concatenate([w_in, w_out[1:]])
    u = w * np.sqrt(r)
    return RadialSolution(
        r=r, u=u, E=E, node_count=_count_nodes(w), boundary_index=grid.n_in
    )


@dataclass(frozen=True)
class ShootResult:
    """Converged shooting solve: eigenvalue plus its wavefunction."""

    state: BoundState
    solution: RadialSolution
    grid: GridSpec
    r_max_doublings: int = 0


def _window_grid(grid: GridSpec, k: float) -> GridSpec:
    """Trim the exterior mesh to end near 12.5/k, node-aligned.

    One-sided outward integration cannot hold the decaying solution
    forever: the growing-mode component seeded by roundoff and by the
    finite refinement tolerance overtakes the e^{-kr} signal at roughly
    15 to 18 e-folds. Stopping at 12.5 keeps every sample signal
    dominated while the endpoint still discriminates sign sharply.
    Integrating further would also be actively harmful for probes far
    above the window's geometric mean: each rescale event crushes the
    early history toward zero.
    """
    r_target = _TRUSTED_EFOLDS / k
    if r_target >= grid.r_max:
        return grid
    m = int(math.ceil(math.log(r_target / grid.R) / grid.h_out))
    m = min(max(m, 8), grid.n_out)
    if m == grid.n_out:
        return grid
    return GridSpec(grid.r_min, grid.R * math.exp(grid.h_out * m), grid.R, grid.n_in, m)


def shoot_bound_state(
    scheme: Scheme,
    coupling: Coupling,
    ext: Extension,
    cutoff: Cutoff,
    *,
    n_steps: int = DEFAULT_N_STEPS,
    k_window: tuple[float, float] | None = None,
    n_subdivisions: int = _N_SUBDIVISIONS,
) -> ShootResult | None:
    """Locate the bound state by shooting on the endpoint sign.

    The endpoint u(min(r_max, 12.5/k)) changes sign exactly once across
    the eigenvalue, so the k window is subdivided geometrically, sign
    changes are bracketed, and each bracket is refined to E accuracy
    well beyond 1e-10 relative. No sign change means no bound state in
    the window; the mesh is retried with r_max doubled (twice) first,
    in case the window's shallow edge needs more room to discriminate.

    The returned solution lives on the mesh trimmed to the converged
    momentum's own decay scale, so every sample of it is trustworthy.

    Raises RootMultiplicityError when several brackets appear, which
    would contradict the at-most-one-bound-state property.
    """
    lam = flow_at(scheme, coupling, ext, cutoff).lam
    if k_window is None:
        closed = closed_form_k(coupling, ext)
        if closed is not None:
            k_window = (closed.k / 8.0, closed.k * 8.0)
        else:
            k_window = (_SHALLOW_KMIN_OVER_R0 / ext.r0, _SHALLOW_KMAX_TIMES_R / cutoff.R)
    k_lo, k_hi = k_window
    if not (0.0 < k_lo < k_hi):
        raise ValueError("k_window must satisfy 0 < k_lo < k_hi")
    grid = default_grid(cutoff, math.sqrt(k_lo * k_hi), n_steps)

    for doubling in range(_MAX_DOUBLINGS + 1):
        def endpoint(k: float) -> float:
            sub = _window_grid(grid, k)
            return float(integrate_radial(scheme, coupling, lam, cutoff, -(k * k), sub).u[-1])

        ks = np.geomspace(k_lo, k_hi, n_subdivisions + 1)
        vals = np.array([endpoint(k) for k in ks])
        signs = np.sign(vals)
        roots = [float(k) for k, v in zip(ks, vals) if v == 0.0]
        brackets = [
            (float(ks[i]), float(ks[i + 1]))
            for i in range(len(ks) - 1)
            if signs[i] * signs[i + 1] < 0.0
        ]
        if len(roots) + len(brackets) > 1:
            raise RootMultiplicityError(
                f"shooting found {len(roots) + len(brackets)} endpoint sign changes "
                f"for {scheme.value} at R/r0={cutoff.ratio}",
                roots + [a for a, _ in brackets],
            )
        if roots or brackets:
            # rtol at the brentq floor (~4 ulp): a looser k leaves a larger
            # growing-mode remnant in the converged tail
            k_root = roots[0] if roots else brentq(
                endpoint, *brackets[0], xtol=1e-300, rtol=8.9e-16, maxiter=200
            )
            final_grid = _window_grid(grid, k_root)
            solution = integrate_radial(scheme, coupling, lam, cutoff, -(k_root * k_root), final_grid)
            state = BoundState.from_k(k_root, Method.ODE_ORACLE, scheme, cutoff)
            return ShootResult(state=state, solution=solution, grid=final_grid, r_max_doublings=doubling)
        if doubling < _MAX_DOUBLINGS:
            grid = grid.doubled()
    return None


def exterior_log_derivative(sol: RadialSolution) -> tuple[np.ndarray, np.ndarray]:
    """d ln u / dr on the exterior mesh by a fourth-order stencil.

    Returns (r values, derivative values) for the exterior points that
    have two neighbors on each side. For a converged bound state this
    should match the decaying-tail shape 1/(2r) + k K'_nu(kr)/K_nu(kr).
    """
    b = sol.boundary_index
    r = sol.r[b:]
    u = sol.u[b:]
    if np.any(u == 0.0):
        raise ValueError("exterior log-derivative undefined where u vanishes")
    L = np.log(np.abs(u))
    h = math.log(r[1] / r[0])
    i = np.arange(2, len(r) - 2)
    dLdx = (-L[i + 2] + 8.0 * L[i + 1] - 8.0 * L[i - 1] + L[i - 2]) / (12.0 * h)
    return r[i], dLdx / r[i]

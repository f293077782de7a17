"""Bound-state solvers: exact matching, closed form, low-energy forms.

The exact square-well condition equates interior and exterior
logarithmic derivatives of the reduced wavefunction at r = R,

    KR cot KR = 1/2 + kR K'_nu(kR) / K_nu(kR),   K^2 = k0^2 - k^2,

with k0^2 = lam/R^2 the well scale; the delta-shell condition replaces
the left side by the prescribed derivative jump, giving

    1/2 + kR K'_nu(kR)/K_nu(kR) - kR coth kR + lam = 0.

With lam(R) supplied by the flow module both equations have at most one
root in the medium-weak window; that count is enforced as a checked
postcondition, not assumed. The cutoff-independent closed form

    k = (2/r0) [Gamma(1+nu) / (c Gamma(1-nu))]^(1/(2 nu))

(nu = 0: k = exp(1/c)/r0, leading-log accuracy) is the R -> 0 target
the exact roots converge to.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConditioningWarning, RootMultiplicityError
from .flow import flow_at
from .model import Coupling, Cutoff, Extension, Scheme
from .specfun import bessel_k_logderiv, gamma_ratio

# default scan window: k_min = 1e-8/r0; k_max = 0.999 k0 (square well,
# where the interior stays oscillatory) or 1e3/R (delta shell)
_KMIN_OVER_R0 = 1e-8
_SW_KMAX_FRACTION = 0.999
_DS_KMAX_TIMES_R = 1e3

_N_SCAN_DEFAULT = 400
_ROOT_RTOL = 1e-15
_DEDUPE_RTOL = 1e-9

# below this the generic (kR/2)^(2 nu) algebra loses digits to cancellation
_NU_CONDITIONING = 1e-4


class Method(enum.Enum):
    """Provenance of a bound-state result."""

    EXACT_MATCHING = "exact-matching"
    CLOSED_FORM = "closed-form"
    ODE_ORACLE = "ode-oracle"


@dataclass(frozen=True)
class BoundState:
    """Renormalized bound state: momentum k > 0 and energy E = -k^2.

    ClosedForm results are cutoff-independent and scheme-free, so they
    carry scheme = None and cutoff = None.
    """

    k: float
    E: float
    method: Method
    scheme: Scheme | None = None
    cutoff: Cutoff | None = None

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ValueError("bound-state momentum k must be positive")
        if self.E != -(self.k * self.k):
            raise ValueError("bound-state energy must equal -k^2 exactly")
        if self.method is Method.CLOSED_FORM and not (self.scheme is None and self.cutoff is None):
            raise ValueError("closed-form results are scheme- and cutoff-free")

    @classmethod
    def from_k(
        cls,
        k: float,
        method: Method,
        scheme: Scheme | None = None,
        cutoff: Cutoff | None = None,
    ) -> "BoundState":
        return cls(k=k, E=-(k * k), method=method, scheme=scheme, cutoff=cutoff)


@dataclass(frozen=True)
class SpectralResidual:
    """Left minus right side of a matching equation at momentum k.

    Sign changes over k bracket bound-state roots. At a pole of the
    interior cotangent the value is a signed infinity marker.
    """

    k: float
    value: float


def residual_square_well(coupling: Coupling, lam: float, cutoff: Cutoff, k: float) -> SpectralResidual:
    """Square-well matching residual KR cot KR - 1/2 - kR K'_nu/K_nu.

    Requires 0 < k < k0 = sqrt(lam)/R so the interior wavenumber
    K = sqrt(k0^2 - k^2) is real; beyond k0 the interior ansatz stops
    being oscillatory and a different one would be needed.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError("momentum k must be positive")
    if lam <= 0.0:
        raise ValueError("square-well residual needs lam > 0")
    k0 = math.sqrt(lam) / cutoff.R
    if k >= k0:
        raise ValueError(f"k={k} >= k0={k0}: interior no longer oscillatory")
    KR = math.sqrt((k0 - k) * (k0 + k)) * cutoff.R
    sin = math.sin(KR)
    if sin == 0.0:
        # cot pole marker; sign from the approaching side
        return SpectralResidual(k=k, value=math.copysign(math.inf, math.cos(KR)))
    left = KR * math.cos(KR) / sin
    return SpectralResidual(k=k, value=left - 0.5 - bessel_k_logderiv(coupling.nu, k * cutoff.R))


def residual_delta_shell(coupling: Coupling, lam: float, cutoff: Cutoff, k: float) -> SpectralResidual:
    """Delta-shell spectral residual 1/2 + kR K'_nu/K_nu - kR coth kR + lam.

    Defined for every k > 0; the interior is the free sinh(kr) solution,
    so there is no upper ansatz limit.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError("momentum k must be positive")
    z = k * cutoff.R
    # z/tanh(z) is stable from denormals up to overflow scale
    zcoth = z / math.tanh(z) if z < 350.0 else z
    value = 0.5 + bessel_k_logderiv(coupling.nu, z) - zcoth + lam
    return SpectralResidual(k=k, value=value)


def closed_form_k(coupling: Coupling, ext: Extension) -> BoundState | None:
    """Cutoff-independent bound-state momentum of the renormalized theory.

    Returns None for c <= 0 (no shallow bound state). The nu = 0 branch
    k = exp(1/c)/r0 is the leading-log form; its exact-matching
    counterpart converges to 2 e^(-gamma) exp(1/c)/r0 instead, which is
    what the convergence tests measure.
    """
    if ext.c <= 0.0:
        return None
    if coupling.nu == 0.0:
        k = math.exp(1.0 / ext.c) / ext.r0
    else:
        ratio = gamma_ratio(coupling.nu) / ext.c
        k = (2.0 / ext.r0) * ratio ** (1.0 / (2.0 * coupling.nu))
    return BoundState.from_k(k, Method.CLOSED_FORM)


def lowenergy_lambda(scheme: Scheme, coupling: Coupling, k: float, cutoff: Cutoff) -> float:
    """Low-energy (kR << 1) counterterm forms, for diagnostics.

    For the square well this is the asymptotic right-hand side that
    sqrt(lam) cot sqrt(lam) is equated with; for the delta shell it is
    the asymptotic lam itself. The kR << 1 premise is the caller's
    responsibility.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError("momentum k must be positive")
    nu = coupling.nu
    z = k * cutoff.R
    if nu == 0.0:
        if scheme is Scheme.SQUARE_WELL:
            return 0.5 + 1.0 / math.log(z)
        return 0.5 - 1.0 / math.log(z)
    x = (0.5 * z) ** (2.0 * nu) / gamma_ratio(nu)
    if scheme is Scheme.SQUARE_WELL:
        return ((0.5 - nu) - (0.5 + nu) * x) / (1.0 - x)
    return ((0.5 + nu) - (0.5 - nu) * x) / (1.0 - x)


def _refine_roots(f, ks: np.ndarray, vals: np.ndarray, segments: np.ndarray) -> list[float]:
    """Bracket sign changes of f on the scan grid and refine each.

    Brackets are only formed between neighbors with finite values in
    the same segment (segments separate cotangent branches, whose pole
    jumps would otherwise fake a sign change). Exact zeros at grid
    points count as roots directly.
    """
    roots = [float(k) for k, v in zip(ks, vals) if v == 0.0]
    finite = np.isfinite(vals)
    for i in range(len(ks) - 1):
        if not (finite[i] and finite[i + 1]) or segments[i] != segments[i + 1]:
            continue
        if vals[i] * vals[i + 1] < 0.0:
            roots.append(brentq(f, ks[i], ks[i + 1], rtol=_ROOT_RTOL, maxiter=200))
    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > _DEDUPE_RTOL * r:
            deduped.append(r)
    return deduped


def solve_bound_state_exact(
    scheme: Scheme,
    coupling: Coupling,
    ext: Extension,
    cutoff: Cutoff,
    *,
    k_min: float | None = None,
    k_max: float | None = None,
    n_scan: int = _N_SCAN_DEFAULT,
) -> BoundState | None:
    """Root of the exact matching equation with lam(R) from the flow.

    Scans the residual over a logarithmic k grid, brackets sign
    changes, and refines them by bracketed bisection. Returns the root
    if exactly one exists and None if none does.

    Raises
    ------
    RootMultiplicityError
        If more than one root survives refinement; the single-state
        claim is the thing under test, so this surfaces loudly.
    FlowPoleError
        Propagated from the flow evaluation.
    """
    if 0.0 < coupling.nu < _NU_CONDITIONING:
        warnings.warn(
            f"nu={coupling.nu} is close to 0: generic-path results lose "
            "accuracy to cancellation; prefer the nu=0 branch if exact",
            ConditioningWarning,
            stacklevel=2,
        )
    point = flow_at(scheme, coupling, ext, cutoff)
    lam = point.lam
    lo = _KMIN_OVER_R0 / ext.r0 if k_min is None else k_min
    if scheme is Scheme.SQUARE_WELL:
        k0 = math.sqrt(lam) / cutoff.R
        hi = _SW_KMAX_FRACTION * k0 if k_max is None else min(k_max, _SW_KMAX_FRACTION * k0)
        f = lambda k: residual_square_well(coupling, lam, cutoff, k).value
    else:
        hi = _DS_KMAX_TIMES_R / cutoff.R if k_max is None else k_max
        f = lambda k: residual_delta_shell(coupling, lam, cutoff, k).value
    if not (hi > lo > 0.0):
        return None
    ks = np.geomspace(lo, hi, n_scan)
    vals = np.array([f(k) for k in ks])
    if scheme is Scheme.SQUARE_WELL:
        # segment index = cot branch; K decreases as k grows
        KR = np.sqrt((k0 - ks) * (k0 + ks)) * cutoff.R
        segments = np.floor(KR / math.pi).astype(np.int64)
    else:
        segments = np.zeros(len(ks), dtype=np.int64)
    roots = _refine_roots(f, ks, vals, segments)
    if not roots:
        return None
    if len(roots) > 1:
        raise RootMultiplicityError(
            f"{len(roots)} matching roots found for {scheme.value} at "
            f"R/r0={cutoff.ratio}: {roots} (single-bound-state property violated)",
            roots,
        )
    return BoundState.from_k(roots[0], Method.EXACT_MATCHING, scheme, cutoff)


@dataclass(frozen=True)
class ConvergenceRow:
    """One cutoff of a convergence study; error is set when the exact
    solve failed for this row and the numeric fields are None."""

    cutoff: Cutoff
    k_closed: float
    k_exact: float | None
    deviation: float | None
    error: str | None = None


def convergence_study(
    scheme: Scheme,
    coupling: Coupling,
    ext: Extension,
    cutoffs: list[Cutoff],
) -> list[ConvergenceRow]:
    """Exact roots against the fixed closed form over decreasing cutoffs.

    Requires c > 0 and a strictly decreasing list with max(R)/r0 < 0.1.
    Deviations are expected to shrink monotonically along the list (see
    deviations_monotone; 10% slack covers rounding near machine
    precision). Per-row solver failures are reported in-band.
    """
    if ext.c <= 0.0:
        raise ValueError("convergence study needs c > 0 (a bound state must exist)")
    if not cutoffs:
        raise ValueError("cutoff list must be nonempty")
    radii = [cut.R for cut in cutoffs]
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise ValueError("cutoff list must be strictly decreasing in R")
    if max(cut.ratio for cut in cutoffs) >= 0.1:
        raise ValueError("convergence study needs R/r0 < 0.1 throughout")
    closed = closed_form_k(coupling, ext)
    assert closed is not None  # c > 0 checked above
    rows: list[ConvergenceRow] = []
    for cut in cutoffs:
        try:
            state = solve_bound_state_exact(scheme, coupling, ext, cut)
        except Exception as err:  # noqa: BLE001 - per-row in-band reporting
            rows.append(ConvergenceRow(cut, closed.k, None, None, error=str(err)))
            continue
        if state is None:
            rows.append(ConvergenceRow(cut, closed.k, None, None, error="no bound state in scan window"))
            continue
        dev = abs(state.k - closed.k) / closed.k
        rows.append(ConvergenceRow(cut, closed.k, state.k, dev))
    return rows


def deviations_monotone(rows: list[ConvergenceRow], slack: float = 1.1) -> bool:
    """True if the study's deviations decrease along the list, allowing
    each row up to `slack` times its predecessor."""
    devs = [row.deviation for row in rows if row.deviation is not None]
    return all(b <= slack * a for a, b in zip(devs, devs[1:]))
